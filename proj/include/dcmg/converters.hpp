/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <string_view>

#include "dcmg/errors.hpp"

namespace dcmg {

enum class ConverterKind { buck, boost };

inline std::string_view to_string(ConverterKind k) noexcept { return k == ConverterKind::buck ? "buck" : "boost"; }

struct ConverterParams {
    ConverterKind kind;
    double inductance;        ///< L [H]
    double capacitance;       ///< C [F], used when the converter runs standalone
    double switching_period;  ///< T_sw [s]
    double i_l_max;           ///< protection bound on |i_L| [A]
    double rating;            ///< power rating used for droop sharing [W]

    bool operator==(const ConverterParams&) const = default;
};

struct ConverterState {
    double i_l = 0.0;
    double v_o = 0.0;
    double duty = 0.0;
};

struct ConverterDerivatives {
    double di_l;
    double dv_o;
};

namespace detail {

// Ideal diode: inductor current cannot reverse through a unidirectional stage.
inline double dcm_clamp(double i_l, double di_l) noexcept { return (i_l <= 0.0 && di_l < 0.0) ? 0.0 : di_l; }

}  // namespace detail

/// `i_out` is whatever the output node draws: v_o/R standalone, or the
/// converter's share of the bus in microgrid coupling.
inline ConverterDerivatives buck_derivatives_switched(const ConverterState& s, bool gate_on, double v_in,
                                                      double i_out, const ConverterParams& p)
{
    const double di = gate_on ? (v_in - s.v_o) / p.inductance : -s.v_o / p.inductance;
    return {detail::dcm_clamp(s.i_l, di), (s.i_l - i_out) / p.capacitance};
}

inline ConverterDerivatives buck_derivatives_averaged(const ConverterState& s, double duty, double v_in,
                                                      double i_out, const ConverterParams& p)
{
    const double di = (duty * v_in - s.v_o) / p.inductance;
    return {detail::dcm_clamp(s.i_l, di), (s.i_l - i_out) / p.capacitance};
}

inline ConverterDerivatives boost_derivatives_switched(const ConverterState& s, bool gate_on, double v_in,
                                                       double i_out, const ConverterParams& p)
{
    if (gate_on) return {v_in / p.inductance, -i_out / p.capacitance};
    const double di = (v_in - s.v_o) / p.inductance;
    return {detail::dcm_clamp(s.i_l, di), (s.i_l - i_out) / p.capacitance};
}

inline ConverterDerivatives boost_derivatives_averaged(const ConverterState& s, double duty, double v_in,
                                                       double i_out, const ConverterParams& p)
{
    const double off = 1.0 - duty;
    const double di = (v_in - off * s.v_o) / p.inductance;
    return {detail::dcm_clamp(s.i_l, di), (off * s.i_l - i_out) / p.capacitance};
}

inline ConverterDerivatives converter_derivatives_switched(const ConverterState& s, bool gate_on, double v_in,
                                                           double i_out, const ConverterParams& p)
{
    return p.kind == ConverterKind::buck ? buck_derivatives_switched(s, gate_on, v_in, i_out, p)
                                         : boost_derivatives_switched(s, gate_on, v_in, i_out, p);
}

inline ConverterDerivatives converter_derivatives_averaged(const ConverterState& s, double duty, double v_in,
                                                           double i_out, const ConverterParams& p)
{
    return p.kind == ConverterKind::buck ? buck_derivatives_averaged(s, duty, v_in, i_out, p)
                                         : boost_derivatives_averaged(s, duty, v_in, i_out, p);
}

/// Terminal currents of a converter. `conduction` is the gate state (0 or 1)
/// in switched mode, or the duty in averaged mode.
struct PortCurrents {
    double input;   ///< drawn from the source
    double output;  ///< injected into the output node
};

inline PortCurrents converter_port_currents(ConverterKind kind, double i_l, double conduction) noexcept
{
    if (kind == ConverterKind::buck) return {conduction * i_l, i_l};
    return {i_l, (1.0 - conduction) * i_l};
}

struct SteadyState {
    double i_l;
    double v_o;
};

/// Ideal CCM equilibrium with a resistive load.
inline SteadyState converter_steady_state(ConverterKind kind, double duty, double v_in, double r_load)
{
    if (kind == ConverterKind::buck) {
        const double v = duty * v_in;
        return {v / r_load, v};
    }
    if (duty >= 1.0) throw ValidationError("duty", "boost steady state requires duty < 1");
    const double v = v_in / (1.0 - duty);
    return {v * v / (r_load * v_in), v};
}

}  // namespace dcmg
