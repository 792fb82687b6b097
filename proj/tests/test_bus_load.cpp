/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <catch_amalgamated.hpp>

#include <array>

#include "dcmg/bus_load.hpp"
#include "dcmg/integrator.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("constant demand")
{
    const dcmg::LoadProfile p{dcmg::ConstantLoad{3000.0}};
    for (double t : {0.0, 1.0, 1e3}) CHECK(dcmg::load_demand(p, t) == 3000.0);
}

TEST_CASE("steps are left-closed")
{
    const dcmg::LoadProfile p{dcmg::StepsLoad{{0.0, 5.0}, {2000.0, 4000.0}}};
    CHECK(dcmg::load_demand(p, 4.999) == 2000.0);
    CHECK(dcmg::load_demand(p, 5.0) == 4000.0);
    CHECK(dcmg::load_demand(p, 0.0) == 2000.0);
    CHECK(dcmg::load_demand(p, 100.0) == 4000.0);
    const dcmg::LoadProfile late{dcmg::StepsLoad{{1.0}, {500.0}}};
    CHECK(dcmg::load_demand(late, 0.5) == 0.0);
    CHECK(dcmg::load_change_times(p) == std::vector<double>{0.0, 5.0});
}

TEST_CASE("triangle cycle interpolates linearly")
{
    const dcmg::LoadProfile p{dcmg::RampCycleLoad{1000.0, 5000.0, 10.0}};
    CHECK_THAT(dcmg::load_demand(p, 2.5), WithinAbs(3000.0, 1e-9));
    CHECK_THAT(dcmg::load_demand(p, 0.0), WithinAbs(1000.0, 1e-9));
    CHECK_THAT(dcmg::load_demand(p, 5.0), WithinAbs(5000.0, 1e-9));
    CHECK_THAT(dcmg::load_demand(p, 7.5), WithinAbs(3000.0, 1e-9));
    CHECK_THAT(dcmg::load_demand(p, 12.5), WithinAbs(3000.0, 1e-9));
    CHECK(dcmg::load_change_times(p).empty());
}

TEST_CASE("drive cycle is piecewise linear and held at the ends")
{
    const dcmg::LoadProfile p{dcmg::DriveCycleLoad{{{1.0, 100.0}, {3.0, 300.0}, {4.0, 0.0}}}};
    CHECK(dcmg::load_demand(p, 0.0) == 100.0);
    CHECK_THAT(dcmg::load_demand(p, 2.0), WithinAbs(200.0, 1e-12));
    CHECK_THAT(dcmg::load_demand(p, 3.5), WithinAbs(150.0, 1e-12));
    CHECK(dcmg::load_demand(p, 9.0) == 0.0);
}

TEST_CASE("constant-power load current")
{
    CHECK_THAT(dcmg::load_current(3000.0, 200.0, 40.0), WithinAbs(15.0, 1e-12));
    CHECK(dcmg::load_current(0.0, 0.0, 40.0) == 0.0);
    CHECK(dcmg::load_current(0.0, 200.0, 40.0) == 0.0);
    CHECK_THAT(dcmg::load_current(3000.0, 0.0, 40.0), WithinAbs(3000.0 / 40.0, 1e-12));
}

TEST_CASE("bus KCL")
{
    const std::array<double, 2> balanced = {4.0, 6.0};
    CHECK(dcmg::bus_derivative(200.0, balanced, 10.0, 0.01) == 0.0);
    const std::array<double, 1> net = {10.0};
    CHECK_THAT(dcmg::bus_derivative(200.0, net, 0.0, 0.01), WithinAbs(1000.0, 1e-9));
}

TEST_CASE("floored load discharges the bus capacitor linearly")
{
    // With v_floor at the initial voltage the load current is a constant 15 A.
    const double c = 0.01;
    std::vector<double> v = {200.0};
    const double dt = 1e-4;
    for (int k = 0; k < 1000; ++k)
        v = dcmg::step_rk4(v, k * dt, dt, [&](double, std::span<const double> s, std::span<double> ds) {
            ds[0] = dcmg::bus_derivative(s[0], {}, dcmg::load_current(3000.0, s[0], 200.0), c);
        });
    CHECK_THAT(v[0], WithinRel(50.0, 0.01));
}
