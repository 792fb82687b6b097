/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <catch_amalgamated.hpp>

#include <cmath>

#include "dcmg/trace.hpp"

using Catch::Matchers::WithinAbs;

namespace {

// Bus capacitor discharging into a resistor-free constant-power sink while one
// source feeds it: residual must vanish when the bookkeeping is consistent.
dcmg::Trace ramp_trace(double t_shift)
{
    dcmg::Trace tr;
    tr.source_names = {"battery"};
    tr.storage = {.c_bus = 0.01, .inductances = {1e-3}, .source_capacitances = {0.0}};
    for (int k = 0; k <= 20; ++k) {
        const double t = 0.01 * k;
        const double v = 200.0 + 10.0 * t;  // linear in t
        const double i_l = 5.0;
        const double de_dt = 0.01 * v * 10.0;
        const double p_load = 1000.0;
        dcmg::TraceRow r{.t = t + t_shift, .v_bus = v, .p_load = p_load, .p_demand = p_load,
                         .sources = {{240.0, (p_load + de_dt) / 240.0, p_load + de_dt}},
                         .converters = {{i_l, 0.8, p_load + de_dt}}, .soc = 1.0};
        tr.rows.push_back(r);
    }
    return tr;
}

}  // namespace

TEST_CASE("column schema")
{
    dcmg::Trace tr;
    tr.source_names = {"battery", "pv"};
    tr.has_soc = true;
    const std::vector<std::string> expected = {"t_s", "v_bus_V", "p_load_W", "p_demand_W", "battery_v_V",
                                               "battery_i_A", "battery_p_W", "pv_v_V", "pv_i_A", "pv_p_W",
                                               "battery_iL_A", "battery_duty", "battery_pout_W", "pv_iL_A",
                                               "pv_duty", "pv_pout_W", "soc"};
    CHECK(tr.columns() == expected);
    CHECK(tr.source_index("pv") == 1);
    CHECK(tr.source_index("fuel_cell") == -1);
}

TEST_CASE("residual of a consistent trace is zero")
{
    const auto tr = ramp_trace(0.0);
    for (std::size_t i = 1; i + 1 < tr.rows.size(); ++i)
        CHECK_THAT(dcmg::power_balance_residual(tr, i), WithinAbs(0.0, 1e-6));
}

TEST_CASE("residual is invariant under a time shift")
{
    const auto a = ramp_trace(0.0);
    const auto b = ramp_trace(123.0);
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        CHECK_THAT(dcmg::power_balance_residual(a, i), WithinAbs(dcmg::power_balance_residual(b, i), 1e-6));
}

TEST_CASE("empty network has zero residual")
{
    dcmg::Trace tr;
    tr.storage.c_bus = 0.01;
    for (int k = 0; k < 5; ++k) tr.rows.push_back({.t = 0.1 * k, .v_bus = 200.0, .p_load = 0.0, .p_demand = 0.0});
    for (std::size_t i = 0; i < tr.rows.size(); ++i) CHECK(dcmg::power_balance_residual(tr, i) == 0.0);
    CHECK_THROWS_AS(dcmg::power_balance_residual(tr, 5), dcmg::ValidationError);
}

TEST_CASE("delivered power sums converter outputs")
{
    dcmg::TraceRow r{};
    r.converters = {{1.0, 0.5, 100.0}, {2.0, 0.3, 250.0}};
    CHECK(dcmg::delivered_power(r) == 350.0);
}
