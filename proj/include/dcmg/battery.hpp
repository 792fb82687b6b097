/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "dcmg/errors.hpp"

namespace dcmg {

/// Shepherd-type Li-ion model constants.
struct BatteryParams {
    double e0;           ///< constant voltage [V]
    double k;            ///< polarization constant [V/Ah] / polarization resistance [Ohm]
    double capacity_ah;  ///< maximum capacity Q [Ah]
    double a_exp;        ///< exponential zone amplitude A [V]
    double b_exp;        ///< exponential zone inverse time constant B [1/Ah]
    double r_int;        ///< internal resistance [Ohm]
    double tau_filter;   ///< low-pass time constant producing i* [s]

    bool operator==(const BatteryParams&) const = default;
};

enum class BatteryMode { discharging = 0, charging = 1 };

struct BatteryState {
    double it_ah = 0.0;   ///< extracted capacity [Ah]
    double i_star = 0.0;  ///< filtered current [A]
    double soc = 1.0;
    BatteryMode sel = BatteryMode::discharging;

    bool operator==(const BatteryState&) const = default;
};

/// Fresh state at a given state of charge.
inline BatteryState battery_state_at_soc(const BatteryParams& p, double soc)
{
    BatteryState s;
    s.it_ah = (1.0 - soc) * p.capacity_ah;
    s.soc = soc;
    return s;
}

inline BatteryMode battery_mode_for_current(double i) noexcept
{
    return i < 0.0 ? BatteryMode::charging : BatteryMode::discharging;
}

inline double battery_emf(const BatteryParams& p, const BatteryState& s, double i_star)
{
    const double q = p.capacity_ah;
    if (s.it_ah >= q) {
        throw SimulationError("battery depleted: extracted capacity " + std::to_string(s.it_ah) +
                              " Ah reached capacity " + std::to_string(q) + " Ah");
    }
    const double pol = p.k * q / (q - s.it_ah);
    const double pol_current = s.sel == BatteryMode::charging ? p.k * q / (s.it_ah + 0.1 * q) : pol;
    return p.e0 - pol_current * i_star - pol * s.it_ah + p.a_exp * std::exp(-p.b_exp * s.it_ah);
}

/// Positive `i` discharges. The mode flag is taken from the sign of `i`.
inline double battery_terminal_voltage(const BatteryParams& p, const BatteryState& s, double i)
{
    BatteryState at = s;
    at.sel = battery_mode_for_current(i);
    return battery_emf(p, at, s.i_star) - p.r_int * i;
}

/// Explicit update of the charge bookkeeping over `dt` at constant current.
inline BatteryState battery_update(const BatteryState& s, double i, double dt, const BatteryParams& p)
{
    if (!(dt > 0.0)) throw ValidationError("dt", "must be > 0");
    BatteryState next;
    next.it_ah = std::clamp(s.it_ah + i * dt / 3600.0, 0.0, p.capacity_ah);
    next.i_star = s.i_star + (dt / p.tau_filter) * (i - s.i_star);
    next.soc = 1.0 - next.it_ah / p.capacity_ah;
    next.sel = battery_mode_for_current(i);
    return next;
}

}  // namespace dcmg
