/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "dcmg/errors.hpp"

namespace dcmg {

inline constexpr double kBoltzmann = 1.380649e-23;         // J/K (exact SI)
inline constexpr double kElectronCharge = 1.602176634e-19;  // C (exact SI)
inline constexpr double kIrradianceRef = 1000.0;       // W/m^2
inline constexpr double kCelsiusZero = 273.15;

/// Five-parameter single-diode module.
struct PvModuleParams {
    double il_ref;  ///< light current at 1000 W/m^2 [A]
    double i0;      ///< diode saturation current [A]
    double rs;      ///< series resistance [Ohm]
    double rsh;     ///< shunt resistance [Ohm]
    double nl;      ///< diode ideality factor
    int n_cell;     ///< series cells per module

    bool operator==(const PvModuleParams&) const = default;
};

struct PvArrayParams {
    PvModuleParams module;
    int n_series;    ///< modules per string
    int n_parallel;  ///< parallel strings

    bool operator==(const PvArrayParams&) const = default;
};

struct MaxPowerPoint {
    double v_mp;
    double p_mp;
};

inline double pv_thermal_voltage(const PvModuleParams& p, double temperature_k)
{
    return kBoltzmann * temperature_k / kElectronCharge * p.nl * static_cast<double>(p.n_cell);
}

inline double pv_diode_current(double vd, const PvModuleParams& p, double temperature_k)
{
    const double arg = vd / pv_thermal_voltage(p, temperature_k);
    if (arg > 700.0) {
        throw SimulationError("PV diode exponent " + std::to_string(arg) +
                              " exceeds 700 (non-physical operating point)");
    }
    return p.i0 * std::expm1(arg);
}

/// Idealized upper bound on the module open-circuit voltage at reference
/// irradiance (Rs, Rsh ignored). Defines the sanity window of the solver.
inline double pv_module_voc_bound(const PvModuleParams& p, double temperature_k)
{
    return pv_thermal_voltage(p, temperature_k) * std::log1p(p.il_ref / p.i0);
}

/// Solve I = IL - I0 (exp((V + I Rs)/VT) - 1) - (V + I Rs)/Rsh for I.
/// Safeguarded Newton: starts at IL, keeps a sign bracket and bisects whenever
/// the Newton iterate leaves it or the exponent would overflow.
inline double pv_module_current(double v, double irradiance, double temperature_k, const PvModuleParams& p)
{
    if (irradiance < 0.0) throw SimulationError("PV irradiance must be >= 0, got " + std::to_string(irradiance));
    const double v_hi = 1.5 * pv_module_voc_bound(p, temperature_k);
    if (v < -1.0 || v > v_hi) {
        throw SimulationError("PV module voltage " + std::to_string(v) + " V outside sanity window [-1, " +
                              std::to_string(v_hi) + "]");
    }

    const double vt = pv_thermal_voltage(p, temperature_k);
    const double il = p.il_ref * irradiance / kIrradianceRef;
    constexpr double kMaxArg = 700.0;
    constexpr double kTol = 1e-9;
    constexpr int kMaxIter = 100;

    // f(I) is strictly decreasing; overflowed exponent means f = -inf.
    auto eval = [&](double i, double& f, double& df) {
        const double vd = v + i * p.rs;
        const double arg = vd / vt;
        if (arg > kMaxArg) {
            f = -std::numeric_limits<double>::infinity();
            df = -std::numeric_limits<double>::infinity();
            return;
        }
        const double e = std::exp(arg);
        f = il - p.i0 * (e - 1.0) - vd / p.rsh - i;
        df = -p.i0 * p.rs / vt * e - p.rs / p.rsh - 1.0;
    };

    double lo = -p.i0;
    double hi = il + 1.0;
    double f = 0.0;
    double df = 0.0;
    eval(lo, f, df);
    for (int n = 0; f <= 0.0 && n < 200; ++n) {
        lo = 2.0 * lo - 1.0;
        eval(lo, f, df);
    }
    eval(hi, f, df);
    for (int n = 0; f >= 0.0 && n < 200; ++n) {
        hi = 2.0 * hi + 1.0;
        eval(hi, f, df);
    }

    double i = il;
    eval(i, f, df);
    for (int iter = 0; iter < kMaxIter; ++iter) {
        if (std::abs(f) <= kTol) return i;
        if (f > 0.0)
            lo = i;
        else
            hi = i;
        double next = std::isfinite(f) ? i - f / df : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        i = next;
        eval(i, f, df);
    }
    if (std::abs(f) <= kTol) return i;
    throw SimulationError("PV module solve did not converge at V=" + std::to_string(v) +
                          " V; last residual " + std::to_string(f) + " A");
}

inline double pv_array_iv(double v_array, double irradiance, double temperature_k, const PvArrayParams& a)
{
    return static_cast<double>(a.n_parallel) *
           pv_module_current(v_array / static_cast<double>(a.n_series), irradiance, temperature_k, a.module);
}

/// Array open-circuit voltage: root of the (decreasing) I-V curve.
inline double pv_array_voc(const PvArrayParams& a, double irradiance, double temperature_k)
{
    if (irradiance <= 0.0) return 0.0;
    double lo = 0.0;
    double hi = pv_module_voc_bound(a.module, temperature_k) * static_cast<double>(a.n_series);
    for (int n = 0; n < 200 && hi - lo > 1e-12 * hi; ++n) {
        const double mid = 0.5 * (lo + hi);
        if (pv_array_iv(mid, irradiance, temperature_k, a) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Brute-force maximum power point: 1 mV sweep over [0, Voc].
inline MaxPowerPoint pv_mpp_oracle(const PvArrayParams& a, double irradiance, double temperature_k)
{
    if (!(irradiance > 0.0)) throw ValidationError("irradiance", "MPP oracle requires G > 0");
    const double voc = pv_array_voc(a, irradiance, temperature_k);
    constexpr double kResolution = 1e-3;
    const auto n = static_cast<long>(std::floor(voc / kResolution));
    MaxPowerPoint best{0.0, 0.0};
    for (long k = 0; k <= n; ++k) {
        const double v = static_cast<double>(k) * kResolution;
        const double power = v * pv_array_iv(v, irradiance, temperature_k, a);
        if (power > best.p_mp) best = {v, power};
    }
    return best;
}

}  // namespace dcmg
