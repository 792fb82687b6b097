/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

// Every default parameter value lives here. Model headers carry none.
//
// Operating point of the default microgrid: 200 V bus; 240 V-class battery
// stepped down by a buck; a 2s x 10p PV array (V_mp ~109 V) and a 65 V fuel
// cell stepped up by boosts. The fuel-cell numbers are placeholders chosen so
// the activation, ohmic and concentration regions are all visible on the
// polarization curve; they are not datasheet values.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "dcmg/scenario.hpp"

namespace dcmg::defaults {

inline BatteryParams battery_params()
{
    return {.e0 = 245.0,
            .k = 0.05,
            .capacity_ah = 40.0,
            .a_exp = 10.0,
            .b_exp = 0.5,
            .r_int = 0.06,
            .tau_filter = 30.0};
}

/// SunPower SPR-305E-WHT-D five-parameter fit at 25 C.
inline PvModuleParams pv_module()
{
    return {.il_ref = 5.9657, .i0 = 6.3046e-12, .rs = 0.37152, .rsh = 269.5934, .nl = 0.94504, .n_cell = 96};
}

/// 20 modules, ~6.1 kW: 2 in series (V_mp ~109 V) x 10 parallel strings.
inline PvArrayParams pv_array_6kw() { return {pv_module(), 2, 10}; }

/// 66 strings of 5 series modules (~100 kW, V_mp ~273 V). Ships as a named
/// array only; its string voltage is above the default bus.
inline PvArrayParams pv_array_66x5() { return {pv_module(), 5, 66}; }

inline FuelCellParams fuel_cell_params()
{
    return {.e_oc = 65.0, .a_act = 1.5, .i0 = 1.0, .r_ohm = 0.1, .m_conc = 0.05, .n_conc = 0.053, .i_max = 100.0};
}

inline ConverterParams battery_converter()
{
    return {ConverterKind::buck, 2e-3, 2.2e-3, 5e-5, 60.0, 6000.0};
}

inline ConverterParams pv_converter()
{
    return {ConverterKind::boost, 2e-3, 2.2e-3, 5e-5, 80.0, 6100.0};
}

inline ConverterParams fuel_cell_converter()
{
    return {ConverterKind::boost, 2e-3, 2.2e-3, 5e-5, 90.0, 3000.0};
}

inline constexpr double kAveragedDt = 1e-5;
inline constexpr double kSwitchedStepsPerPeriod = 50.0;
inline constexpr double kRoomTemperatureK = 298.15;

inline BusParams bus_params() { return {.c_bus = 3 * 2.2e-3, .v_init = 200.0, .v_nom = 200.0, .v_floor = 40.0}; }

inline ControlSettings control_settings()
{
    ControlSettings c;
    c.sample_period = 5e-5;
    c.mppt = {.step = 1.0, .sample_period = 0.05, .v_ref_init_frac = 0.8, .v_min_frac = 0.5, .v_max_frac = 0.98};
    c.mppt_pi = {.kp = 0.002, .ki = 0.5, .lo = 0.0, .hi = 0.95};
    c.voltage_pi = {.kp = 1.3, .ki = 60.0, .lo = 0.0, .hi = 1.5};
    c.current_pi = {.kp = 0.016, .ki = 6.0, .lo = 0.0, .hi = 0.95};
    c.delta_v_max_frac = 0.05;
    return c;
}

/// All three sources enabled, constant 9 kW demand, averaged fidelity.
inline Scenario base_scenario()
{
    Scenario s;
    s.name = "custom";
    s.clock = {.t0 = 0.0, .t_end = 10.0, .dt = kAveragedDt, .record_interval = 0.01};
    s.fidelity = Fidelity::averaged;
    s.bus = bus_params();
    s.battery = {true, battery_params(), 1.0, battery_converter()};
    s.pv = {true, pv_array_6kw(), kRoomTemperatureK, {{0.0, 1000.0}}, 1e-3, pv_converter()};
    s.fuel_cell = {true, fuel_cell_params(), ControlRole::droop, fuel_cell_converter()};
    s.control = control_settings();
    s.load = {ConstantLoad{9000.0}, 1.0};
    s.limits = {.abort_bound = 1e9};
    s.output = {.csv = "", .plot_dir = ""};
    return s;
}

/// Default parameter block of each load kind, used when a scenario file
/// switches kind without listing every field.
inline LoadProfile load_of_kind(std::string_view kind)
{
    if (kind == "constant") return {ConstantLoad{9000.0}, 1.0};
    if (kind == "steps") return {StepsLoad{{0.0, 4.0, 8.0, 12.0}, {10000.0, 12000.0, 8000.0, 11000.0}}, 1.0};
    if (kind == "ramp_cycle") return {RampCycleLoad{8000.0, 12000.0, 10.0}, 1.0};
    if (kind == "drive_cycle") return {DriveCycleLoad{{{0.0, 8000.0}, {5.0, 12000.0}, {10.0, 8000.0}}}, 1.0};
    throw ValidationError("load.kind", "unknown load kind '" + std::string(kind) +
                                           "' (expected constant, steps, ramp_cycle or drive_cycle)");
}

/// Named presets. The fig* presets mirror the three demand experiments:
/// constant, stepped high/low/high, and a continuously ramping cycle.
inline constexpr std::array<std::string_view, 5> kPresetNames = {
    "fig12_constant", "fig13_steps", "fig14_cycle", "mppt_irradiance_step", "droop_sharing"};

inline std::string_view preset_description(std::string_view name)
{
    if (name == "fig12_constant") return "constant 9 kW demand, all sources, 10 s";
    if (name == "fig13_steps") return "demand steps 10/12/8/11 kW every 4 s, all sources, 16 s";
    if (name == "fig14_cycle") return "triangle demand 8-12 kW, 10 s period, all sources, 20 s";
    if (name == "mppt_irradiance_step") return "constant 9 kW, irradiance 1000 -> 600 W/m^2 at 5 s, 10 s";
    if (name == "droop_sharing") return "battery + fuel cell only (ratings 2:1), constant 3 kW, 5 s";
    return "";
}

inline std::optional<Scenario> preset(std::string_view name)
{
    Scenario s = base_scenario();
    s.name = std::string(name);
    if (name == "fig12_constant") {
        return s;
    }
    if (name == "fig13_steps") {
        s.clock.t_end = 16.0;
        s.load = load_of_kind("steps");
        return s;
    }
    if (name == "fig14_cycle") {
        s.clock.t_end = 20.0;
        s.load = load_of_kind("ramp_cycle");
        return s;
    }
    if (name == "mppt_irradiance_step") {
        s.clock.t_end = 10.0;
        s.pv.irradiance = {{0.0, 1000.0}, {5.0, 600.0}};
        return s;
    }
    if (name == "droop_sharing") {
        s.clock.t_end = 5.0;
        s.pv.enabled = false;
        s.load = {ConstantLoad{3000.0}, 1.0};
        return s;
    }
    return std::nullopt;
}

}  // namespace dcmg::defaults
