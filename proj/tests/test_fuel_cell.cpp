/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <catch_amalgamated.hpp>

#include <cmath>

#include "dcmg/defaults.hpp"
#include "dcmg/fuel_cell.hpp"

using Catch::Matchers::WithinAbs;

TEST_CASE("activation term vanishes at the exchange current")
{
    const auto p = dcmg::defaults::fuel_cell_params();
    const double expected = p.e_oc - p.r_ohm * p.i0 - p.m_conc * std::exp(p.n_conc * p.i0);
    CHECK_THAT(dcmg::fuel_cell_voltage(p.i0, p), WithinAbs(expected, 1e-12));
}

TEST_CASE("open circuit voltage is E_oc minus the concentration offset")
{
    const auto p = dcmg::defaults::fuel_cell_params();
    CHECK_THAT(dcmg::fuel_cell_voltage(0.0, p), WithinAbs(p.e_oc - p.m_conc, 1e-12));
}

TEST_CASE("polarization curve falls monotonically and stays below E_oc")
{
    const auto p = dcmg::defaults::fuel_cell_params();
    const double h = 1e-4;
    for (int k = 1; k < 1000; ++k) {
        const double i = p.i0 + (p.i_max - p.i0) * k / 1000.0;
        const double dv = (dcmg::fuel_cell_voltage(std::min(i + h, p.i_max), p) - dcmg::fuel_cell_voltage(i - h, p));
        CHECK(dv < 0.0);
        CHECK(dcmg::fuel_cell_voltage(i, p) <= p.e_oc);
    }
}

TEST_CASE("voltage is clamped at zero")
{
    dcmg::FuelCellParams p = dcmg::defaults::fuel_cell_params();
    p.r_ohm = 10.0;
    CHECK(dcmg::fuel_cell_voltage(p.i_max, p) == 0.0);
}

TEST_CASE("negative and over-limit currents are rejected")
{
    const auto p = dcmg::defaults::fuel_cell_params();
    CHECK_THROWS_AS(dcmg::fuel_cell_voltage(-0.1, p), dcmg::SimulationError);
    CHECK_THROWS_AS(dcmg::fuel_cell_voltage(p.i_max + 0.1, p), dcmg::SimulationError);
}
