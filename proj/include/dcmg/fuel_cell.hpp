/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "dcmg/errors.hpp"

namespace dcmg {

/// Static polarization curve: Tafel activation + ohmic + exponential
/// concentration loss.
struct FuelCellParams {
    double e_oc;    ///< open-circuit voltage [V]
    double a_act;   ///< Tafel slope [V]
    double i0;      ///< activation knee / exchange current [A]
    double r_ohm;   ///< stack resistance [Ohm]
    double m_conc;  ///< concentration loss amplitude [V]
    double n_conc;  ///< concentration loss rate [1/A]
    double i_max;   ///< mass-transport limit [A]

    bool operator==(const FuelCellParams&) const = default;
};

inline double fuel_cell_voltage(double i, const FuelCellParams& p)
{
    if (i < 0.0) {
        throw SimulationError("fuel cell current " + std::to_string(i) + " A is negative (blocked by stack diode)");
    }
    if (i > p.i_max) {
        throw SimulationError("fuel cell current " + std::to_string(i) + " A exceeds mass-transport limit " +
                              std::to_string(p.i_max) + " A");
    }
    const double activation = p.a_act * std::log(std::max(i, p.i0) / p.i0);
    const double v = p.e_oc - activation - p.r_ohm * i - p.m_conc * std::exp(p.n_conc * i);
    return std::max(v, 0.0);
}

}  // namespace dcmg
