/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dcmg/errors.hpp"

namespace dcmg {

/// Fixed-step clock. Time is always reconstructed from the integer step index
/// so that long runs do not accumulate rounding drift.
class SimClock {
public:
    SimClock(double t0, double t_end, double dt) : t0_(t0), dt_(dt)
    {
        if (!(dt > 0.0)) throw ValidationError("clock.dt", "must be > 0");
        if (!(t0 >= 0.0)) throw ValidationError("clock.t0", "must be >= 0");
        if (!(t_end >= t0)) throw ValidationError("clock.t_end", "must be >= t0");
        steps_ = static_cast<std::int64_t>(std::llround((t_end - t0) / dt));
    }

    double t0() const noexcept { return t0_; }
    double dt() const noexcept { return dt_; }
    std::int64_t steps() const noexcept { return steps_; }
    double time_at(std::int64_t k) const noexcept { return t0_ + static_cast<double>(k) * dt_; }
    double t_end() const noexcept { return time_at(steps_); }

private:
    double t0_;
    double dt_;
    std::int64_t steps_;
};

/// Scratch buffers for step_rk4; reused across steps to keep the hot loop
/// allocation-free.
struct Rk4Workspace {
    std::vector<double> k1, k2, k3, k4, tmp;

    void resize(std::size_t n)
    {
        k1.resize(n);
        k2.resize(n);
        k3.resize(n);
        k4.resize(n);
        tmp.resize(n);
    }
};

namespace detail {

inline void check_finite(std::span<const double> dx, std::span<const std::string> names, double t)
{
    for (std::size_t i = 0; i < dx.size(); ++i) {
        if (!std::isfinite(dx[i])) {
            std::string name = i < names.size() ? names[i] : "x[" + std::to_string(i) + "]";
            throw SimulationError("non-finite derivative of '" + name + "' at t=" + std::to_string(t));
        }
    }
}

}  // namespace detail

/// One classical RK4 step, in place. `deriv(t, x, dx)` must be free of side
/// effects on anything it reads; discrete controller state is held constant
/// by the caller across the four stages.
template <class Deriv>
void step_rk4(std::span<double> x, double t, double dt, Deriv&& deriv, Rk4Workspace& ws,
              std::span<const std::string> names = {})
{
    const std::size_t n = x.size();
    ws.resize(n);
    const std::span<const double> xc{x.data(), n};

    deriv(t, xc, std::span<double>{ws.k1});
    detail::check_finite(ws.k1, names, t);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = x[i] + 0.5 * dt * ws.k1[i];

    deriv(t + 0.5 * dt, std::span<const double>{ws.tmp}, std::span<double>{ws.k2});
    detail::check_finite(ws.k2, names, t);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = x[i] + 0.5 * dt * ws.k2[i];

    deriv(t + 0.5 * dt, std::span<const double>{ws.tmp}, std::span<double>{ws.k3});
    detail::check_finite(ws.k3, names, t);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = x[i] + dt * ws.k3[i];

    deriv(t + dt, std::span<const double>{ws.tmp}, std::span<double>{ws.k4});
    detail::check_finite(ws.k4, names, t);

    for (std::size_t i = 0; i < n; ++i)
        x[i] += (dt / 6.0) * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
}

/// Value-returning convenience overload.
template <class Deriv>
std::vector<double> step_rk4(std::vector<double> x, double t, double dt, Deriv&& deriv,
                             std::span<const std::string> names = {})
{
    if (!(dt > 0.0)) throw ValidationError("dt", "must be > 0");
    Rk4Workspace ws;
    step_rk4(std::span<double>{x}, t, dt, deriv, ws, names);
    return x;
}

}  // namespace dcmg
