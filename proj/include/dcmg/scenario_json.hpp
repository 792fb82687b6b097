/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

// JSON scenario files. A file is merge-patched over a base scenario: either
// the preset it names under "preset", or the default microgrid. Every key,
// unit, default and range is listed in docs/scenario_format.md.

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dcmg/defaults.hpp"
#include "dcmg/errors.hpp"
#include "dcmg/scenario.hpp"

namespace dcmg {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string join_key(const std::string& parent, const std::string& key)
{
    return parent.empty() ? key : parent + "." + key;
}

/// Typed access into one JSON object with dotted-path diagnostics.
class JsonObject {
public:
    JsonObject(const Json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) throw ValidationError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    const Json& at(const std::string& key) const
    {
        const auto it = j_.find(key);
        if (it == j_.end()) throw ValidationError(join_key(path_, key), "missing required key");
        return *it;
    }

    double number(const std::string& key) const
    {
        const auto& v = at(key);
        if (!v.is_number()) throw ValidationError(join_key(path_, key), "expected a number");
        return v.get<double>();
    }

    int integer(const std::string& key) const
    {
        const auto& v = at(key);
        if (!v.is_number_integer()) throw ValidationError(join_key(path_, key), "expected an integer");
        return v.get<int>();
    }

    bool boolean(const std::string& key) const
    {
        const auto& v = at(key);
        if (!v.is_boolean()) throw ValidationError(join_key(path_, key), "expected true or false");
        return v.get<bool>();
    }

    std::string string(const std::string& key) const
    {
        const auto& v = at(key);
        if (!v.is_string()) throw ValidationError(join_key(path_, key), "expected a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const std::string& key) const
    {
        const auto& v = at(key);
        if (!v.is_array()) throw ValidationError(join_key(path_, key), "expected an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) throw ValidationError(join_key(path_, key), "expected an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::vector<std::pair<double, double>> pairs(const std::string& key) const
    {
        const auto& v = at(key);
        const auto bad = [&] { return ValidationError(join_key(path_, key), "expected an array of [t, value] pairs"); };
        if (!v.is_array()) throw bad();
        std::vector<std::pair<double, double>> out;
        for (const auto& e : v) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) throw bad();
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        return out;
    }

    JsonObject child(const std::string& key) const { return JsonObject(at(key), join_key(path_, key)); }

private:
    const Json& j_;
    std::string path_;
};

inline Json pairs_to_json(const std::vector<std::pair<double, double>>& v)
{
    Json a = Json::array();
    for (const auto& [x, y] : v) a.push_back(Json::array({x, y}));
    return a;
}

inline Json converter_to_json(const ConverterParams& c)
{
    return Json{{"kind", std::string(to_string(c.kind))},
                {"L", c.inductance},
                {"C", c.capacitance},
                {"T_sw", c.switching_period},
                {"i_L_max", c.i_l_max},
                {"rating", c.rating}};
}

inline ConverterParams converter_from_json(const JsonObject& o, const std::string& path)
{
    ConverterParams c{};
    const auto kind = o.string("kind");
    if (kind == "buck")
        c.kind = ConverterKind::buck;
    else if (kind == "boost")
        c.kind = ConverterKind::boost;
    else
        throw ValidationError(path + ".kind", "expected \"buck\" or \"boost\"");
    c.inductance = o.number("L");
    c.capacitance = o.number("C");
    c.switching_period = o.number("T_sw");
    c.i_l_max = o.number("i_L_max");
    c.rating = o.number("rating");
    return c;
}

inline Json pi_to_json(const PiGains& g) { return Json{{"kp", g.kp}, {"ki", g.ki}, {"lo", g.lo}, {"hi", g.hi}}; }

inline PiGains pi_from_json(const JsonObject& o)
{
    return {o.number("kp"), o.number("ki"), o.number("lo"), o.number("hi")};
}

inline Json load_to_json(const LoadProfile& l)
{
    Json j{{"kind", std::string(load_kind_name(l))}};
    std::visit(
        [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, ConstantLoad>) {
                j["power"] = shape.power;
            } else if constexpr (std::is_same_v<T, StepsLoad>) {
                j["times"] = shape.times;
                j["levels"] = shape.levels;
            } else if constexpr (std::is_same_v<T, RampCycleLoad>) {
                j["p_min"] = shape.p_min;
                j["p_max"] = shape.p_max;
                j["period"] = shape.period;
            } else {
                j["table"] = pairs_to_json(shape.table);
            }
        },
        l.shape);
    j["settling_window"] = l.settling_window;
    return j;
}

inline LoadProfile load_from_json(const JsonObject& o)
{
    LoadProfile l;
    const auto kind = o.string("kind");
    if (kind == "constant")
        l.shape = ConstantLoad{o.number("power")};
    else if (kind == "steps")
        l.shape = StepsLoad{o.numbers("times"), o.numbers("levels")};
    else if (kind == "ramp_cycle")
        l.shape = RampCycleLoad{o.number("p_min"), o.number("p_max"), o.number("period")};
    else if (kind == "drive_cycle")
        l.shape = DriveCycleLoad{o.pairs("table")};
    else
        throw ValidationError("load.kind", "expected constant, steps, ramp_cycle or drive_cycle");
    l.settling_window = o.number("settling_window");
    return l;
}

/// Every key of `user` must exist in `schema`; objects are compared
/// recursively, arrays and scalars are leaves.
inline void reject_unknown_keys(const Json& user, const Json& schema, const std::string& path)
{
    if (!user.is_object() || !schema.is_object()) return;
    for (auto it = user.begin(); it != user.end(); ++it) {
        const auto key = join_key(path, it.key());
        if (path.empty() && it.key() == "preset") continue;
        const auto s = schema.find(it.key());
        if (s == schema.end()) throw ValidationError(key, "unknown key");
        reject_unknown_keys(it.value(), *s, key);
    }
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace detail

inline Json scenario_to_json(const Scenario& s)
{
    using detail::converter_to_json;
    using detail::pi_to_json;
    const auto& b = s.battery;
    const auto& pv = s.pv;
    const auto& fc = s.fuel_cell;
    const auto& ctl = s.control;
    Json j;
    j["name"] = s.name;
    j["fidelity"] = s.fidelity == Fidelity::switched ? "switched" : "averaged";
    j["clock"] = {{"t0", s.clock.t0},
                  {"t_end", s.clock.t_end},
                  {"dt", s.clock.dt},
                  {"record_interval", s.clock.record_interval}};
    j["bus"] = {{"c_bus", s.bus.c_bus}, {"v_init", s.bus.v_init}, {"v_nom", s.bus.v_nom}, {"v_floor", s.bus.v_floor}};
    j["battery"] = {{"enabled", b.enabled},
                    {"E0", b.params.e0},
                    {"K", b.params.k},
                    {"Q", b.params.capacity_ah},
                    {"A", b.params.a_exp},
                    {"B", b.params.b_exp},
                    {"R_int", b.params.r_int},
                    {"tau_filter", b.params.tau_filter},
                    {"soc_init", b.soc_init},
                    {"converter", converter_to_json(b.converter)}};
    const auto& m = pv.array.module;
    j["pv"] = {{"enabled", pv.enabled},
               {"module",
                {{"IL_ref", m.il_ref}, {"I0", m.i0}, {"Rs", m.rs}, {"Rsh", m.rsh}, {"nl", m.nl}, {"Ncell", m.n_cell}}},
               {"n_series", pv.array.n_series},
               {"n_parallel", pv.array.n_parallel},
               {"temperature", pv.temperature_k},
               {"irradiance", detail::pairs_to_json(pv.irradiance)},
               {"c_in", pv.c_in},
               {"converter", converter_to_json(pv.converter)}};
    j["fuel_cell"] = {{"enabled", fc.enabled},
                      {"E_oc", fc.params.e_oc},
                      {"A_act", fc.params.a_act},
                      {"i0", fc.params.i0},
                      {"R_ohm", fc.params.r_ohm},
                      {"m_conc", fc.params.m_conc},
                      {"n_conc", fc.params.n_conc},
                      {"i_max", fc.params.i_max},
                      {"role", fc.role == ControlRole::droop ? "droop" : "mppt"},
                      {"converter", converter_to_json(fc.converter)}};
    j["control"] = {{"sample_period", ctl.sample_period},
                    {"delta_v_max_frac", ctl.delta_v_max_frac},
                    {"mppt",
                     {{"step", ctl.mppt.step},
                      {"sample_period", ctl.mppt.sample_period},
                      {"v_ref_init_frac", ctl.mppt.v_ref_init_frac},
                      {"v_min_frac", ctl.mppt.v_min_frac},
                      {"v_max_frac", ctl.mppt.v_max_frac}}},
                    {"mppt_pi", pi_to_json(ctl.mppt_pi)},
                    {"voltage_pi", pi_to_json(ctl.voltage_pi)},
                    {"current_pi", pi_to_json(ctl.current_pi)}};
    j["load"] = detail::load_to_json(s.load);
    j["limits"] = {{"abort_bound", s.limits.abort_bound}};
    j["output"] = {{"csv", s.output.csv}, {"plot_dir", s.output.plot_dir}};
    return j;
}

/// Reads a fully populated scenario object (no defaults applied here).
inline Scenario scenario_from_json(const Json& j)
{
    using detail::JsonObject;
    const JsonObject root(j, "");
    Scenario s;
    s.name = root.string("name");
    const auto fidelity = root.string("fidelity");
    if (fidelity == "switched")
        s.fidelity = Fidelity::switched;
    else if (fidelity == "averaged")
        s.fidelity = Fidelity::averaged;
    else
        throw ValidationError("fidelity", "expected \"switched\" or \"averaged\"");

    const auto clock = root.child("clock");
    s.clock = {clock.number("t0"), clock.number("t_end"), clock.number("dt"), clock.number("record_interval")};

    const auto bus = root.child("bus");
    s.bus = {bus.number("c_bus"), bus.number("v_init"), bus.number("v_nom"), bus.number("v_floor")};

    const auto b = root.child("battery");
    s.battery.enabled = b.boolean("enabled");
    s.battery.params = {b.number("E0"), b.number("K"),     b.number("Q"),         b.number("A"),
                        b.number("B"),  b.number("R_int"), b.number("tau_filter")};
    s.battery.soc_init = b.number("soc_init");
    s.battery.converter = detail::converter_from_json(b.child("converter"), "battery.converter");

    const auto pv = root.child("pv");
    const auto m = pv.child("module");
    s.pv.enabled = pv.boolean("enabled");
    s.pv.array.module = {m.number("IL_ref"), m.number("I0"), m.number("Rs"),
                         m.number("Rsh"),    m.number("nl"), m.integer("Ncell")};
    s.pv.array.n_series = pv.integer("n_series");
    s.pv.array.n_parallel = pv.integer("n_parallel");
    s.pv.temperature_k = pv.number("temperature");
    s.pv.irradiance = pv.pairs("irradiance");
    s.pv.c_in = pv.number("c_in");
    s.pv.converter = detail::converter_from_json(pv.child("converter"), "pv.converter");

    const auto fc = root.child("fuel_cell");
    s.fuel_cell.enabled = fc.boolean("enabled");
    s.fuel_cell.params = {fc.number("E_oc"),   fc.number("A_act"),  fc.number("i0"),   fc.number("R_ohm"),
                          fc.number("m_conc"), fc.number("n_conc"), fc.number("i_max")};
    const auto role = fc.string("role");
    if (role == "droop")
        s.fuel_cell.role = ControlRole::droop;
    else if (role == "mppt")
        s.fuel_cell.role = ControlRole::mppt;
    else
        throw ValidationError("fuel_cell.role", "expected \"droop\" or \"mppt\"");
    s.fuel_cell.converter = detail::converter_from_json(fc.child("converter"), "fuel_cell.converter");

    const auto ctl = root.child("control");
    s.control.sample_period = ctl.number("sample_period");
    s.control.delta_v_max_frac = ctl.number("delta_v_max_frac");
    const auto mp = ctl.child("mppt");
    s.control.mppt = {mp.number("step"), mp.number("sample_period"), mp.number("v_ref_init_frac"),
                      mp.number("v_min_frac"), mp.number("v_max_frac")};
    s.control.mppt_pi = detail::pi_from_json(ctl.child("mppt_pi"));
    s.control.voltage_pi = detail::pi_from_json(ctl.child("voltage_pi"));
    s.control.current_pi = detail::pi_from_json(ctl.child("current_pi"));

    s.load = detail::load_from_json(root.child("load"));
    s.limits = {root.child("limits").number("abort_bound")};
    const auto out = root.child("output");
    s.output = {out.string("csv"), out.string("plot_dir")};
    return s;
}

inline std::string serialize_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

/// User JSON -> validated Scenario. Omitted keys take the preset (or default)
/// values; `strict` rejects keys the schema does not know.
inline Scenario scenario_from_user_json(const Json& user, bool strict = true)
{
    if (!user.is_object()) throw ValidationError("<root>", "scenario must be a JSON object");

    Scenario base = defaults::base_scenario();
    if (const auto it = user.find("preset"); it != user.end()) {
        if (!it->is_string()) throw ValidationError("preset", "expected a string");
        const auto p = defaults::preset(it->get<std::string>());
        if (!p) throw ValidationError("preset", "unknown preset '" + it->get<std::string>() + "'");
        base = *p;
    }
    Json merged = scenario_to_json(base);

    // Switching load kind swaps in that kind's default block so only the keys
    // of the new kind are accepted.
    if (const auto l = user.find("load"); l != user.end() && l->is_object()) {
        if (const auto k = l->find("kind"); k != l->end()) {
            if (!k->is_string()) throw ValidationError("load.kind", "expected a string");
            if (k->get<std::string>() != merged["load"]["kind"].get<std::string>()) {
                auto fresh = defaults::load_of_kind(k->get<std::string>());
                fresh.settling_window = base.load.settling_window;
                merged["load"] = detail::load_to_json(fresh);
            }
        }
    }
    if (strict) detail::reject_unknown_keys(user, merged, "");

    Json patch = user;
    patch.erase("preset");
    merged.merge_patch(patch);

    // Switched fidelity without an explicit step defaults to T_sw / 50.
    const bool user_dt = user.contains("clock") && user["clock"].is_object() && user["clock"].contains("dt");
    if (merged["fidelity"] == "switched" && !user_dt) {
        double t_sw = 0.0;
        for (const char* src : {"battery", "pv", "fuel_cell"}) {
            const auto& blk = merged[src];
            if (blk["enabled"] == true && blk["converter"]["T_sw"].is_number()) {
                const double t = blk["converter"]["T_sw"].get<double>();
                t_sw = t_sw == 0.0 ? t : std::min(t_sw, t);
            }
        }
        if (t_sw > 0.0) merged["clock"]["dt"] = t_sw / defaults::kSwitchedStepsPerPeriod;
    }

    Scenario s = scenario_from_json(merged);
    validate_scenario(s);
    return s;
}

/// Parses scenario text. Syntax errors report line and column.
inline Scenario parse_scenario(std::string_view text, bool strict = true)
{
    Json user;
    try {
        user = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        const auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ValidationError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                              ": " + e.what());
    }
    return scenario_from_user_json(user, strict);
}

}  // namespace dcmg
