/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <utility>

namespace dcmg {

// ---------------------------------------------------------------------------
// Perturb & observe
// ---------------------------------------------------------------------------

struct MpptState {
    double v_ref;
    double prev_p = 0.0;
    double prev_v = 0.0;
    double step;           ///< perturbation size [V]
    double sample_period;  ///< [s]
    double v_min;
    double v_max;
};

/// One P&O decision. Moves v_ref by exactly +step, -step or 0, then clamps it
/// to [v_min, v_max].
inline MpptState perturb_observe_step(const MpptState& s, double p_now, double v_now)
{
    MpptState next = s;
    const double dp = p_now - s.prev_p;
    const double dv = v_now - s.prev_v;
    if (dp > 0.0)
        next.v_ref += dv >= 0.0 ? s.step : -s.step;
    else if (dp < 0.0)
        next.v_ref += dv >= 0.0 ? -s.step : s.step;
    next.v_ref = std::clamp(next.v_ref, s.v_min, s.v_max);
    next.prev_p = p_now;
    next.prev_v = v_now;
    return next;
}

// ---------------------------------------------------------------------------
// PI with clamping anti-windup
// ---------------------------------------------------------------------------

struct PiState {
    double integral = 0.0;
    double kp;
    double ki;
    double lo;
    double hi;
};

inline std::pair<double, PiState> pi_step(const PiState& s, double error, double dt)
{
    PiState next = s;
    next.integral = s.integral + error * dt;
    const double raw = s.kp * error + s.ki * next.integral;
    if ((raw > s.hi && error > 0.0) || (raw < s.lo && error < 0.0)) next.integral = s.integral;
    const double out = std::clamp(s.kp * error + s.ki * next.integral, s.lo, s.hi);
    return {out, next};
}

/// Integral value that makes the PI output `u` at zero error.
inline PiState pi_preload(PiState s, double u)
{
    s.integral = s.ki != 0.0 ? std::clamp(u, s.lo, s.hi) / s.ki : 0.0;
    return s;
}

/// Closes v_ref onto the measured source voltage through a boost duty. Raising
/// the duty pulls the source voltage down, hence the negated error.
inline std::pair<double, PiState> mppt_duty_command(const MpptState& mppt, const PiState& pi, double v_meas,
                                                    double dt)
{
    return pi_step(pi, v_meas - mppt.v_ref, dt);
}

// ---------------------------------------------------------------------------
// Droop sharing
// ---------------------------------------------------------------------------

struct DroopParams {
    double v_nom;
    double slope;  ///< [V/W]
    double rating;
};

/// Slope chosen so every converter drops the same `delta_v_max` at its own
/// rated power.
inline DroopParams make_droop(double v_nom, double delta_v_max, double rating)
{
    return {v_nom, delta_v_max / rating, rating};
}

inline double droop_voltage_ref(const DroopParams& d, double p_out) { return d.v_nom - d.slope * p_out; }

/// Cascaded droop loop of a bus-forming converter: outer PI turns the droop
/// voltage error into a bus-current reference, inner PI tracks the matching
/// inductor current with the duty.
struct DroopLoop {
    DroopParams droop;
    PiState voltage_pi;  ///< output: bus-current reference [A]
    PiState current_pi;  ///< output: duty
    double i_l_ref_max;
};

struct DroopCommand {
    double duty;
    double i_l_ref;
    DroopLoop next;
};

/// `bus_to_inductor` converts a bus-side current into the inductor current
/// that carries the same power (1 for buck, v_bus/v_in for boost).
inline DroopCommand droop_duty_command(const DroopLoop& loop, double v_bus, double p_out, double i_l,
                                       double bus_to_inductor, double dt)
{
    DroopCommand cmd{0.0, 0.0, loop};
    const double v_ref = droop_voltage_ref(loop.droop, std::max(p_out, 0.0));
    const auto [i_bus_ref, vpi] = pi_step(loop.voltage_pi, v_ref - v_bus, dt);
    cmd.next.voltage_pi = vpi;
    cmd.i_l_ref = std::clamp(i_bus_ref * bus_to_inductor, 0.0, loop.i_l_ref_max);
    const auto [duty, cpi] = pi_step(loop.current_pi, cmd.i_l_ref - i_l, dt);
    cmd.next.current_pi = cpi;
    cmd.duty = duty;
    return cmd;
}

}  // namespace dcmg
