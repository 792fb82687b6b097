/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace dcmg {

struct BusParams {
    double c_bus;   ///< lumped bus capacitance [F]
    double v_init;  ///< [V]
    double v_nom;   ///< [V]
    double v_floor; ///< constant-power load stops rising its current below this [V]

    bool operator==(const BusParams&) const = default;
};

// ---------------------------------------------------------------------------
// Load profiles
// ---------------------------------------------------------------------------

struct ConstantLoad {
    double power;

    bool operator==(const ConstantLoad&) const = default;
};

/// Piecewise-constant levels; level i holds on [times[i], times[i+1]).
/// Demand before times[0] is zero.
struct StepsLoad {
    std::vector<double> times;
    std::vector<double> levels;

    bool operator==(const StepsLoad&) const = default;
};

/// Triangle wave starting at p_min, peaking at p_max at period/2.
struct RampCycleLoad {
    double p_min;
    double p_max;
    double period;

    bool operator==(const RampCycleLoad&) const = default;
};

/// Piecewise-linear (t, P) table; held flat outside its range.
struct DriveCycleLoad {
    std::vector<std::pair<double, double>> table;

    bool operator==(const DriveCycleLoad&) const = default;
};

struct LoadProfile {
    std::variant<ConstantLoad, StepsLoad, RampCycleLoad, DriveCycleLoad> shape;
    double settling_window = 1.0;  ///< time allowed to re-enter the tracking band after a change [s]

    bool operator==(const LoadProfile&) const = default;
};

inline std::string_view load_kind_name(const LoadProfile& p)
{
    constexpr std::string_view names[] = {"constant", "steps", "ramp_cycle", "drive_cycle"};
    return names[p.shape.index()];
}

inline double load_demand(const LoadProfile& profile, double t)
{
    struct Eval {
        double t;
        double operator()(const ConstantLoad& c) const { return c.power; }
        double operator()(const StepsLoad& s) const
        {
            const auto it = std::upper_bound(s.times.begin(), s.times.end(), t);
            if (it == s.times.begin()) return 0.0;
            return s.levels[static_cast<std::size_t>(it - s.times.begin() - 1)];
        }
        double operator()(const RampCycleLoad& r) const
        {
            const double phase = t / r.period - std::floor(t / r.period);
            const double tri = phase < 0.5 ? 2.0 * phase : 2.0 * (1.0 - phase);
            return r.p_min + (r.p_max - r.p_min) * tri;
        }
        double operator()(const DriveCycleLoad& d) const
        {
            const auto& tb = d.table;
            if (tb.empty()) return 0.0;
            if (t <= tb.front().first) return tb.front().second;
            if (t >= tb.back().first) return tb.back().second;
            const auto it = std::upper_bound(tb.begin(), tb.end(), t,
                                             [](double x, const auto& row) { return x < row.first; });
            const auto& [t1, p1] = *it;
            const auto& [t0, p0] = *(it - 1);
            return p0 + (p1 - p0) * (t - t0) / (t1 - t0);
        }
    };
    return std::visit(Eval{t}, profile.shape);
}

/// Times at which the demand changes discontinuously (steps only).
inline std::vector<double> load_change_times(const LoadProfile& profile)
{
    if (const auto* s = std::get_if<StepsLoad>(&profile.shape)) return s->times;
    return {};
}

/// Constant-power load current with a voltage floor.
inline double load_current(double p_demand, double v_bus, double v_floor)
{
    if (p_demand == 0.0) return 0.0;
    return p_demand / std::max(v_bus, v_floor);
}

/// KCL at the bus node.
inline double bus_derivative(double /*v_bus*/, std::span<const double> injected, double i_load, double c_bus)
{
    double sum = 0.0;
    for (double i : injected) sum += i;
    return (sum - i_load) / c_bus;
}

}  // namespace dcmg
