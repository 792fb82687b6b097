/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dcmg/integrator.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::ContainsSubstring;

namespace {

std::vector<double> integrate_decay(double dt, double t_end)
{
    const dcmg::SimClock clock(0.0, t_end, dt);
    std::vector<double> x = {1.0};
    for (std::int64_t k = 0; k < clock.steps(); ++k)
        x = dcmg::step_rk4(x, clock.time_at(k), dt, [](double, std::span<const double> s, std::span<double> ds) {
            ds[0] = -s[0];
        });
    return x;
}

}  // namespace

TEST_CASE("one RK4 step of exponential decay matches e^-0.1")
{
    const auto x = dcmg::step_rk4(std::vector<double>{1.0}, 0.0, 0.1,
                                  [](double, std::span<const double> s, std::span<double> ds) { ds[0] = -s[0]; });
    CHECK_THAT(x[0], WithinAbs(std::exp(-0.1), 1e-5));
    CHECK_THAT(x[0], WithinAbs(0.904837, 1e-5));
}

TEST_CASE("zero derivative leaves the state exactly unchanged")
{
    const auto x = dcmg::step_rk4(std::vector<double>{5.0}, 0.0, 0.37,
                                  [](double, std::span<const double>, std::span<double> ds) { ds[0] = 0.0; });
    CHECK(x[0] == 5.0);
}

TEST_CASE("constant derivative integrates exactly")
{
    const auto x = dcmg::step_rk4(std::vector<double>{0.0}, 0.0, 0.01,
                                  [](double, std::span<const double>, std::span<double> ds) { ds[0] = 1.0; });
    CHECK(x[0] == 0.01);
}

TEST_CASE("RK4 is exact for a cubic in time")
{
    // dx/dt = 3t^2 -> x(t) = t^3
    const auto x = dcmg::step_rk4(std::vector<double>{1.0}, 1.0, 0.5,
                                  [](double t, std::span<const double>, std::span<double> ds) { ds[0] = 3 * t * t; });
    CHECK_THAT(x[0], WithinAbs(1.5 * 1.5 * 1.5, 1e-14));
}

TEST_CASE("global error shrinks sixteenfold per halving of dt")
{
    double prev = std::abs(integrate_decay(0.2, 2.0)[0] - std::exp(-2.0));
    for (double dt : {0.1, 0.05, 0.025}) {
        const double err = std::abs(integrate_decay(dt, 2.0)[0] - std::exp(-2.0));
        CHECK(prev / err > 15.0);
        CHECK(prev / err < 17.5);
        prev = err;
    }
}

TEST_CASE("non-finite derivative aborts naming the state")
{
    const std::vector<std::string> names = {"v_bus", "pv.i_L"};
    auto bad = [](double, std::span<const double>, std::span<double> ds) {
        ds[0] = 0.0;
        ds[1] = std::numeric_limits<double>::quiet_NaN();
    };
    CHECK_THROWS_MATCHES(dcmg::step_rk4(std::vector<double>{1.0, 1.0}, 0.0, 1e-3, bad, names),
                         dcmg::SimulationError, Catch::Matchers::MessageMatches(ContainsSubstring("pv.i_L")));
}

TEST_CASE("clock derives time from the step index")
{
    const dcmg::SimClock clock(0.0, 1.0, 1e-5);
    CHECK(clock.steps() == 100000);
    CHECK(clock.time_at(0) == 0.0);
    CHECK(clock.time_at(100000) == 1.0);
    CHECK(clock.time_at(33333) == 33333 * 1e-5);
    CHECK_THROWS_AS(dcmg::SimClock(0.0, 1.0, 0.0), dcmg::ValidationError);
    CHECK_THROWS_AS(dcmg::SimClock(1.0, 0.5, 1e-3), dcmg::ValidationError);
}
