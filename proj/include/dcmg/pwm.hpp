/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace dcmg {

/// Trailing-edge PWM: on for the first `duty` fraction of every period.
inline bool pwm_gate(double t, double period, double duty) noexcept
{
    const double cycles = t / period;
    const double frac = cycles - std::floor(cycles);
    return frac < duty;
}

/// Same comparison on the integer step grid, used by the simulation loop
/// where the period is an exact multiple of the step.
inline bool pwm_gate_at_step(std::int64_t step, std::int64_t steps_per_period, double duty) noexcept
{
    const auto phase = step % steps_per_period;
    return static_cast<double>(phase) / static_cast<double>(steps_per_period) < duty;
}

/// Portion of step `step` spent with the gate on, in [0, 1]. Strictly between
/// 0 and 1 only for the step containing the turn-off edge; the loop splits
/// that step at the edge so the realised duty is exact.
inline double pwm_on_fraction(std::int64_t step, std::int64_t steps_per_period, double duty) noexcept
{
    const auto phase = static_cast<double>(step % steps_per_period);
    return std::clamp(duty * static_cast<double>(steps_per_period) - phase, 0.0, 1.0);
}

}  // namespace dcmg
