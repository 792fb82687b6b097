/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "dcmg/battery.hpp"
#include "dcmg/bus_load.hpp"
#include "dcmg/converters.hpp"
#include "dcmg/errors.hpp"
#include "dcmg/fuel_cell.hpp"
#include "dcmg/pv.hpp"

namespace dcmg {

enum class Fidelity { switched, averaged };
enum class ControlRole { droop, mppt };

struct ClockSettings {
    double t0;
    double t_end;
    double dt;
    double record_interval;

    bool operator==(const ClockSettings&) const = default;
};

struct BatteryBlock {
    bool enabled;
    BatteryParams params;
    double soc_init;
    ConverterParams converter;

    bool operator==(const BatteryBlock&) const = default;
};

struct PvBlock {
    bool enabled;
    PvArrayParams array;
    double temperature_k;
    /// (t, G) breakpoints; G holds on [t_i, t_{i+1}).
    std::vector<std::pair<double, double>> irradiance;
    double c_in;  ///< PV-side input capacitance [F]
    ConverterParams converter;

    bool operator==(const PvBlock&) const = default;
};

struct FuelCellBlock {
    bool enabled;
    FuelCellParams params;
    ControlRole role;
    ConverterParams converter;

    bool operator==(const FuelCellBlock&) const = default;
};

struct PiGains {
    double kp;
    double ki;
    double lo;
    double hi;

    bool operator==(const PiGains&) const = default;
};

/// Voltages are fractions of the tracked source's open-circuit voltage so one
/// block serves both the PV array and an MPPT-driven fuel cell.
struct MpptSettings {
    double step;
    double sample_period;
    double v_ref_init_frac;
    double v_min_frac;
    double v_max_frac;

    bool operator==(const MpptSettings&) const = default;
};

struct ControlSettings {
    double sample_period;  ///< inner loops [s]
    MpptSettings mppt;
    PiGains mppt_pi;       ///< source voltage error -> duty
    PiGains voltage_pi;    ///< droop voltage error -> bus current; lo/hi in units of rated current
    PiGains current_pi;    ///< inductor current error -> duty
    double delta_v_max_frac;

    bool operator==(const ControlSettings&) const = default;
};

struct LimitSettings {
    double abort_bound;

    bool operator==(const LimitSettings&) const = default;
};

struct OutputSettings {
    std::string csv;       ///< file name for the trace, relative to the output dir
    std::string plot_dir;  ///< sub-directory for plots, relative to the output dir

    bool operator==(const OutputSettings&) const = default;
};

struct Scenario {
    std::string name;
    ClockSettings clock;
    Fidelity fidelity;
    BusParams bus;
    BatteryBlock battery;
    PvBlock pv;
    FuelCellBlock fuel_cell;
    ControlSettings control;
    LoadProfile load;
    LimitSettings limits;
    OutputSettings output;

    bool operator==(const Scenario&) const = default;
};

inline double irradiance_at(const PvBlock& pv, double t)
{
    double g = pv.irradiance.front().second;
    for (const auto& [ti, gi] : pv.irradiance) {
        if (ti > t) break;
        g = gi;
    }
    return g;
}

namespace detail {

inline void require(bool ok, const std::string& key, const std::string& constraint)
{
    if (!ok) throw ValidationError(key, constraint);
}

inline bool is_multiple(double big, double small)
{
    const double r = big / small;
    return std::abs(r - std::round(r)) <= 1e-9 * std::max(1.0, r) && std::round(r) >= 1.0;
}

inline void validate_converter(const ConverterParams& c, const std::string& key, ConverterKind expected)
{
    require(c.kind == expected, key + ".kind", std::string("must be ") + std::string(to_string(expected)));
    require(c.inductance > 0.0, key + ".L", "must be > 0");
    require(c.capacitance > 0.0, key + ".C", "must be > 0");
    require(c.switching_period > 0.0, key + ".T_sw", "must be > 0");
    require(c.i_l_max > 0.0, key + ".i_L_max", "must be > 0");
    require(c.rating > 0.0, key + ".rating", "must be > 0");
}

inline void validate_pi(const PiGains& g, const std::string& key)
{
    require(g.kp >= 0.0, key + ".kp", "must be >= 0");
    require(g.ki >= 0.0, key + ".ki", "must be >= 0");
    require(g.lo < g.hi, key + ".hi", "must be > lo");
}

}  // namespace detail

/// Checks every type invariant and cross-field precondition. Throws
/// ValidationError naming the dotted key of the first violation.
inline void validate_scenario(const Scenario& s)
{
    using detail::require;
    const auto& c = s.clock;
    require(c.dt > 0.0, "clock.dt", "must be > 0");
    require(c.t0 >= 0.0, "clock.t0", "must be >= 0");
    require(c.t_end > c.t0, "clock.t_end", "must be > t0");
    require(detail::is_multiple(c.t_end - c.t0, c.dt), "clock.t_end", "t_end - t0 must be a whole number of dt");
    require(c.record_interval > 0.0 && detail::is_multiple(c.record_interval, c.dt), "clock.record_interval",
            "must be a positive multiple of dt");

    require(s.bus.c_bus > 0.0, "bus.c_bus", "must be > 0");
    require(s.bus.v_init > 0.0, "bus.v_init", "must be > 0");
    require(s.bus.v_nom > 0.0, "bus.v_nom", "must be > 0");
    require(s.bus.v_floor > 0.0, "bus.v_floor", "must be > 0");

    const auto& b = s.battery;
    if (b.enabled) {
        const auto& p = b.params;
        require(p.e0 > 0.0, "battery.E0", "must be > 0");
        require(p.k >= 0.0, "battery.K", "must be >= 0");
        require(p.capacity_ah > 0.0, "battery.Q", "must be > 0");
        require(p.a_exp >= 0.0, "battery.A", "must be >= 0");
        require(p.b_exp > 0.0, "battery.B", "must be > 0");
        require(p.r_int >= 0.0, "battery.R_int", "must be >= 0");
        require(p.tau_filter > 0.0, "battery.tau_filter", "must be > 0");
        require(b.soc_init > 0.0 && b.soc_init <= 1.0, "battery.soc_init", "must be in (0, 1]");
        detail::validate_converter(b.converter, "battery.converter", ConverterKind::buck);
    }

    const auto& pv = s.pv;
    if (pv.enabled) {
        const auto& m = pv.array.module;
        require(m.il_ref >= 0.0, "pv.module.IL_ref", "must be >= 0");
        require(m.i0 > 0.0, "pv.module.I0", "must be > 0");
        require(m.rs >= 0.0, "pv.module.Rs", "must be >= 0");
        require(m.rsh > 0.0 && std::isfinite(m.rsh), "pv.module.Rsh", "must be finite and > 0");
        require(m.nl > 0.0, "pv.module.nl", "must be > 0");
        require(m.n_cell >= 1, "pv.module.Ncell", "must be >= 1");
        require(pv.array.n_series >= 1, "pv.n_series", "must be >= 1");
        require(pv.array.n_parallel >= 1, "pv.n_parallel", "must be >= 1");
        require(pv.temperature_k > 0.0, "pv.temperature", "must be > 0 K");
        require(!pv.irradiance.empty(), "pv.irradiance", "needs at least one (t, G) point");
        for (std::size_t i = 0; i < pv.irradiance.size(); ++i) {
            require(pv.irradiance[i].second >= 0.0, "pv.irradiance", "G must be >= 0");
            if (i > 0)
                require(pv.irradiance[i].first > pv.irradiance[i - 1].first, "pv.irradiance",
                        "times must be strictly increasing");
        }
        require(pv.c_in > 0.0, "pv.c_in", "must be > 0");
        detail::validate_converter(pv.converter, "pv.converter", ConverterKind::boost);
    }

    const auto& fc = s.fuel_cell;
    if (fc.enabled) {
        const auto& p = fc.params;
        require(p.e_oc > 0.0, "fuel_cell.E_oc", "must be > 0");
        require(p.a_act >= 0.0, "fuel_cell.A_act", "must be >= 0");
        require(p.i0 > 0.0, "fuel_cell.i0", "must be > 0");
        require(p.r_ohm >= 0.0, "fuel_cell.R_ohm", "must be >= 0");
        require(p.m_conc >= 0.0, "fuel_cell.m_conc", "must be >= 0");
        require(p.i_max > p.i0, "fuel_cell.i_max", "must be > i0");
        detail::validate_converter(fc.converter, "fuel_cell.converter", ConverterKind::boost);
        require(fc.converter.i_l_max <= p.i_max, "fuel_cell.converter.i_L_max", "must not exceed fuel_cell.i_max");
    }

    const auto& ctl = s.control;
    require(ctl.sample_period > 0.0 && detail::is_multiple(ctl.sample_period, c.dt), "control.sample_period",
            "must be a positive multiple of clock.dt");
    require(ctl.mppt.step > 0.0, "control.mppt.step", "must be > 0");
    require(ctl.mppt.sample_period > 0.0 && detail::is_multiple(ctl.mppt.sample_period, c.dt),
            "control.mppt.sample_period", "must be a positive multiple of clock.dt");
    require(ctl.mppt.v_min_frac >= 0.0 && ctl.mppt.v_min_frac < ctl.mppt.v_max_frac, "control.mppt.v_min_frac",
            "must be in [0, v_max_frac)");
    require(ctl.mppt.v_max_frac <= 1.0, "control.mppt.v_max_frac", "must be <= 1");
    require(ctl.mppt.v_ref_init_frac >= ctl.mppt.v_min_frac && ctl.mppt.v_ref_init_frac <= ctl.mppt.v_max_frac,
            "control.mppt.v_ref_init_frac", "must lie in [v_min_frac, v_max_frac]");
    detail::validate_pi(ctl.mppt_pi, "control.mppt_pi");
    detail::validate_pi(ctl.voltage_pi, "control.voltage_pi");
    detail::validate_pi(ctl.current_pi, "control.current_pi");
    require(ctl.mppt_pi.lo >= 0.0 && ctl.mppt_pi.hi < 1.0, "control.mppt_pi", "duty limits must lie in [0, 1)");
    require(ctl.current_pi.lo >= 0.0 && ctl.current_pi.hi < 1.0, "control.current_pi",
            "duty limits must lie in [0, 1)");
    require(ctl.delta_v_max_frac > 0.0 && ctl.delta_v_max_frac < 1.0, "control.delta_v_max_frac",
            "must be in (0, 1)");

    std::visit(
        [](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, ConstantLoad>) {
                require(shape.power >= 0.0, "load.power", "must be >= 0");
            } else if constexpr (std::is_same_v<T, StepsLoad>) {
                require(!shape.times.empty(), "load.times", "needs at least one step");
                require(shape.times.size() == shape.levels.size(), "load.levels", "must match load.times in length");
                for (std::size_t i = 0; i < shape.times.size(); ++i) {
                    require(shape.levels[i] >= 0.0, "load.levels", "must be >= 0");
                    if (i > 0)
                        require(shape.times[i] > shape.times[i - 1], "load.times", "must be strictly increasing");
                }
            } else if constexpr (std::is_same_v<T, RampCycleLoad>) {
                require(shape.p_min >= 0.0, "load.p_min", "must be >= 0");
                require(shape.p_max >= shape.p_min, "load.p_max", "must be >= p_min");
                require(shape.period > 0.0, "load.period", "must be > 0");
            } else {
                require(!shape.table.empty(), "load.table", "needs at least one (t, P) row");
                for (std::size_t i = 0; i < shape.table.size(); ++i) {
                    require(shape.table[i].second >= 0.0, "load.table", "power must be >= 0");
                    if (i > 0)
                        require(shape.table[i].first > shape.table[i - 1].first, "load.table",
                                "times must be strictly increasing");
                }
            }
        },
        s.load.shape);
    require(s.load.settling_window > 0.0, "load.settling_window", "must be > 0");

    require(s.limits.abort_bound > 0.0, "limits.abort_bound", "must be > 0");

    if (s.fidelity == Fidelity::switched) {
        const auto check = [&](bool enabled, const ConverterParams& cp, const std::string& key) {
            if (enabled)
                require(detail::is_multiple(cp.switching_period, c.dt), key + ".T_sw",
                        "switched fidelity requires clock.dt to divide the switching period");
        };
        check(b.enabled, b.converter, "battery.converter");
        check(pv.enabled, pv.converter, "pv.converter");
        check(fc.enabled, fc.converter, "fuel_cell.converter");
    }
}

}  // namespace dcmg
