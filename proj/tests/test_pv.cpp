/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "dcmg/defaults.hpp"
#include "dcmg/pv.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kT = 298.15;

dcmg::PvModuleParams unit_cell(int n_cell)
{
    return {.il_ref = 5.0, .i0 = 1e-10, .rs = 0.0, .rsh = 100.0, .nl = 1.0, .n_cell = n_cell};
}

// Bisection on the implicit module equation, written independently of the
// library solver.
double bisect_current(double v, double g, const dcmg::PvModuleParams& p)
{
    const double vt = 1.380649e-23 * kT / 1.602176634e-19 * p.nl * p.n_cell;
    const double il = p.il_ref * g / 1000.0;
    auto f = [&](double i) {
        const double vd = v + i * p.rs;
        return il - p.i0 * (std::exp(vd / vt) - 1.0) - vd / p.rsh - i;
    };
    double lo = -1.0;
    double hi = il + 1.0;
    for (int n = 0; n < 200; ++n) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double residual(double v, double i, double g, const dcmg::PvModuleParams& p)
{
    const double vt = dcmg::pv_thermal_voltage(p, kT);
    const double vd = v + i * p.rs;
    return p.il_ref * g / 1000.0 - p.i0 * std::expm1(vd / vt) - vd / p.rsh - i;
}

}  // namespace

TEST_CASE("thermal voltage of one cell at room temperature")
{
    CHECK_THAT(dcmg::pv_thermal_voltage(unit_cell(1), kT), WithinAbs(0.025693, 1e-6));
    CHECK_THAT(dcmg::pv_thermal_voltage(unit_cell(60), kT), WithinAbs(1.5416, 1e-4));
}

TEST_CASE("diode current")
{
    const auto p = unit_cell(60);
    CHECK(dcmg::pv_diode_current(0.0, p, kT) == 0.0);
    CHECK_THAT(dcmg::pv_diode_current(-500.0, p, kT), WithinAbs(-p.i0, 1e-20));
    CHECK_THAT(dcmg::pv_diode_current(30.0, p, kT), WithinRel(2.82e-2, 0.01));
    CHECK_THROWS_AS(dcmg::pv_diode_current(701.0 * dcmg::pv_thermal_voltage(p, kT), p, kT), dcmg::SimulationError);
}

TEST_CASE("ideal short circuit returns the photocurrent exactly")
{
    auto p = unit_cell(60);
    p.rsh = std::numeric_limits<double>::infinity();
    CHECK(dcmg::pv_module_current(0.0, 1000.0, kT, p) == p.il_ref);
}

TEST_CASE("no irradiance at short circuit gives zero current")
{
    CHECK_THAT(dcmg::pv_module_current(0.0, 0.0, kT, dcmg::defaults::pv_module()), WithinAbs(0.0, 1e-9));
}

TEST_CASE("module current agrees with a bisection oracle")
{
    const auto p = dcmg::defaults::pv_module();
    for (double g : {200.0, 400.0, 700.0, 1000.0}) {
        const dcmg::PvArrayParams one{p, 1, 1};
        const double voc = dcmg::pv_array_voc(one, g, kT);
        for (int k = 0; k < 100; ++k) {
            const double v = voc * k / 99.0;
            const double i = dcmg::pv_module_current(v, g, kT, p);
            CHECK_THAT(i, WithinAbs(bisect_current(v, g, p), 1e-6));
            CHECK(std::abs(residual(v, i, g, p)) <= 1e-9);
        }
    }
}

TEST_CASE("module current is strictly decreasing up to open circuit")
{
    const auto p = dcmg::defaults::pv_module();
    const double voc = dcmg::pv_array_voc({p, 1, 1}, 1000.0, kT);
    double prev = dcmg::pv_module_current(0.0, 1000.0, kT, p);
    for (int k = 1; k <= 200; ++k) {
        const double i = dcmg::pv_module_current(voc * k / 200.0, 1000.0, kT, p);
        CHECK(i < prev);
        prev = i;
    }
    CHECK_THAT(prev, WithinAbs(0.0, 1e-6));
}

TEST_CASE("solver rejects voltages outside the sanity window")
{
    const auto p = dcmg::defaults::pv_module();
    CHECK_THROWS_AS(dcmg::pv_module_current(-5.0, 1000.0, kT, p), dcmg::SimulationError);
    CHECK_THROWS_AS(dcmg::pv_module_current(1e4, 1000.0, kT, p), dcmg::SimulationError);
    CHECK_THROWS_AS(dcmg::pv_module_current(1.0, -1.0, kT, p), dcmg::SimulationError);
}

TEST_CASE("array topology scales the module curve")
{
    const auto p = dcmg::defaults::pv_module();
    const dcmg::PvArrayParams one{p, 1, 1};
    const dcmg::PvArrayParams two_par{p, 1, 2};
    const dcmg::PvArrayParams three_ser{p, 3, 1};
    for (double v : {0.0, 10.0, 40.0, 55.0}) {
        CHECK(dcmg::pv_array_iv(v, 800.0, kT, one) == dcmg::pv_module_current(v, 800.0, kT, p));
        CHECK(dcmg::pv_array_iv(v, 800.0, kT, two_par) == 2.0 * dcmg::pv_array_iv(v, 800.0, kT, one));
        CHECK(dcmg::pv_array_iv(3.0 * v, 800.0, kT, three_ser) == dcmg::pv_array_iv(v, 800.0, kT, one));
    }
}

TEST_CASE("MPP oracle finds an interior maximum")
{
    const dcmg::PvArrayParams one{dcmg::defaults::pv_module(), 1, 1};
    const auto mpp = dcmg::pv_mpp_oracle(one, 1000.0, kT);
    const double voc = dcmg::pv_array_voc(one, 1000.0, kT);
    CHECK(mpp.v_mp > 0.0);
    CHECK(mpp.v_mp < voc);
    for (int k = 0; k <= 500; ++k) {
        const double v = voc * k / 500.0;
        CHECK(v * dcmg::pv_array_iv(v, 1000.0, kT, one) <= mpp.p_mp);
    }
}

TEST_CASE("power curve is unimodal over the sweep grid")
{
    const dcmg::PvArrayParams one{dcmg::defaults::pv_module(), 1, 1};
    const double voc = dcmg::pv_array_voc(one, 1000.0, kT);
    int sign_changes = 0;
    double prev_p = 0.0;
    int prev_dir = 1;
    for (int k = 1; k <= 400; ++k) {
        const double v = voc * k / 400.0;
        const double p = v * dcmg::pv_array_iv(v, 1000.0, kT, one);
        const int dir = p >= prev_p ? 1 : -1;
        if (dir != prev_dir) ++sign_changes;
        prev_dir = dir;
        prev_p = p;
    }
    CHECK(sign_changes == 1);
}

TEST_CASE("halving irradiance roughly halves the maximum power")
{
    const auto a = dcmg::defaults::pv_array_6kw();
    const double ratio = dcmg::pv_mpp_oracle(a, 500.0, kT).p_mp / dcmg::pv_mpp_oracle(a, 1000.0, kT).p_mp;
    CHECK(ratio > 0.4);
    CHECK(ratio < 0.6);
}

TEST_CASE("default array delivers about 6.1 kW at the MPP")
{
    const auto mpp = dcmg::pv_mpp_oracle(dcmg::defaults::pv_array_6kw(), 1000.0, kT);
    CHECK_THAT(mpp.p_mp, WithinRel(6100.0, 0.02));
}

TEST_CASE("MPP oracle requires positive irradiance")
{
    CHECK_THROWS_AS(dcmg::pv_mpp_oracle(dcmg::defaults::pv_array_6kw(), 0.0, kT), dcmg::ValidationError);
}
