/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dcmg/battery.hpp"
#include "dcmg/bus_load.hpp"
#include "dcmg/control.hpp"
#include "dcmg/converters.hpp"
#include "dcmg/errors.hpp"
#include "dcmg/fuel_cell.hpp"
#include "dcmg/integrator.hpp"
#include "dcmg/pv.hpp"
#include "dcmg/pwm.hpp"
#include "dcmg/scenario.hpp"
#include "dcmg/trace.hpp"

namespace dcmg {

namespace detail {

inline std::int64_t steps_in(double interval, double dt) { return std::max<std::int64_t>(1, std::llround(interval / dt)); }

inline std::string fmt_time(double t)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", t);
    return buf;
}

/// The coupled plant plus its sampled controllers. Continuous state lives in
/// a flat vector (RK4-integrated); everything else is discrete and held
/// constant between controller samples.
class Microgrid {
public:
    explicit Microgrid(const Scenario& sc) : sc_(sc)
    {
        auto add = [this](const std::string& name) {
            names_.push_back(name);
            return static_cast<int>(names_.size() - 1);
        };
        ix_v_bus_ = add("v_bus");
        if (sc.battery.enabled) {
            ix_bat_il_ = add("battery.i_L");
            ix_bat_it_ = add("battery.it");
            ix_bat_istar_ = add("battery.i_star");
            sources_.push_back({Source::battery, &sc.battery.converter});
        }
        if (sc.pv.enabled) {
            ix_pv_il_ = add("pv.i_L");
            ix_pv_vin_ = add("pv.v_in");
            sources_.push_back({Source::pv, &sc.pv.converter});
        }
        if (sc.fuel_cell.enabled) {
            ix_fc_il_ = add("fuel_cell.i_L");
            sources_.push_back({Source::fuel_cell, &sc.fuel_cell.converter});
        }
        for (auto& src : sources_) {
            src.il_index = src.kind == Source::battery ? ix_bat_il_ : src.kind == Source::pv ? ix_pv_il_ : ix_fc_il_;
            src.steps_per_period = steps_in(src.params->switching_period, sc.clock.dt);
        }
        x_.assign(names_.size(), 0.0);
        initialise();
    }

    Trace run()
    {
        const SimClock clock(sc_.clock.t0, sc_.clock.t_end, sc_.clock.dt);
        const std::int64_t n_ctrl = steps_in(sc_.control.sample_period, clock.dt());
        const std::int64_t n_mppt = steps_in(sc_.control.mppt.sample_period, clock.dt());
        const std::int64_t n_rec = steps_in(sc_.clock.record_interval, clock.dt());
        const bool switched = sc_.fidelity == Fidelity::switched;

        Trace trace = make_trace_header();
        trace.rows.reserve(static_cast<std::size_t>(clock.steps() / n_rec + 2));

        Rk4Workspace ws;
        auto deriv = [this](double t, std::span<const double> x, std::span<double> dx) { derivatives(t, x, dx); };

        for (std::int64_t k = 0;; ++k) {
            const double t = clock.time_at(k);
            if (k % n_ctrl == 0) sample_controllers(t, k % n_mppt == 0);
            for (auto& src : sources_) {
                src.on_fraction = switched ? pwm_on_fraction(k, src.steps_per_period, src.duty) : 1.0;
                src.conduction = switched ? (src.on_fraction > 0.0 ? 1.0 : 0.0) : src.duty;
            }
            if (k % n_rec == 0 || k == clock.steps()) trace.rows.push_back(record(t));
            if (k == clock.steps()) break;

            if (switched)
                step_switched(t, clock.dt(), deriv, ws);
            else
                step_rk4(std::span<double>{x_}, t, clock.dt(), deriv, ws, names_);
            post_step(clock.time_at(k + 1));
        }
        return trace;
    }

private:
    enum class Source { battery, pv, fuel_cell };

    /// One switched step, split at every PWM turn-off edge that falls inside it.
    template <class Deriv>
    void step_switched(double t, double dt, Deriv& deriv, Rk4Workspace& ws)
    {
        std::array<double, 5> cuts{0.0};
        std::size_t n_cuts = 1;
        for (const auto& src : sources_)
            if (src.on_fraction > 0.0 && src.on_fraction < 1.0) cuts[n_cuts++] = src.on_fraction;
        cuts[n_cuts++] = 1.0;
        std::sort(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(n_cuts));

        for (std::size_t c = 0; c + 1 < n_cuts; ++c) {
            const double a = cuts[c];
            const double b = cuts[c + 1];
            if (b <= a) continue;
            for (auto& src : sources_) src.conduction = a < src.on_fraction ? 1.0 : 0.0;
            step_rk4(std::span<double>{x_}, t + a * dt, (b - a) * dt, deriv, ws, names_);
        }
    }

    struct SourceSlot {
        Source kind;
        const ConverterParams* params;
        int il_index = -1;
        std::int64_t steps_per_period = 1;
        double duty = 0.0;
        double conduction = 0.0;  ///< gate (0/1) when switched, duty when averaged
        double on_fraction = 1.0; ///< on-time share of the current step (switched)
    };

    struct SourceOperatingPoint {
        double v;
        double i;
    };

    static std::string name_of(Source s)
    {
        switch (s) {
        case Source::battery: return "battery";
        case Source::pv: return "pv";
        case Source::fuel_cell: return "fuel_cell";
        }
        return "";
    }

    // --- source models evaluated on a candidate state -----------------------

    double pv_irradiance(double t) const { return irradiance_at(sc_.pv, t); }

    double pv_current(double v_pv, double t) const
    {
        return pv_array_iv(v_pv, pv_irradiance(t), sc_.pv.temperature_k, sc_.pv.array);
    }

    BatteryState battery_state(std::span<const double> x) const
    {
        BatteryState s;
        s.it_ah = x[ix_bat_it_];
        s.i_star = x[ix_bat_istar_];
        s.soc = 1.0 - s.it_ah / sc_.battery.params.capacity_ah;
        return s;
    }

    /// Terminal (v, i) of a source given the converter conduction.
    SourceOperatingPoint operating_point(const SourceSlot& src, std::span<const double> x, double t) const
    {
        const double i_l = x[src.il_index];
        switch (src.kind) {
        case Source::battery: {
            const double i = converter_port_currents(ConverterKind::buck, i_l, src.conduction).input;
            return {battery_terminal_voltage(sc_.battery.params, battery_state(x), i), i};
        }
        case Source::pv: {
            const double v = x[ix_pv_vin_];
            return {v, pv_current(v, t)};
        }
        case Source::fuel_cell: {
            // Stack diode: the converter can never pull negative current.
            const double i = std::max(i_l, 0.0);
            return {fuel_cell_voltage(i, sc_.fuel_cell.params), i};
        }
        }
        return {0.0, 0.0};
    }

    void derivatives(double t, std::span<const double> x, std::span<double> dx) const
    {
        const double v_bus = x[ix_v_bus_];
        const bool switched = sc_.fidelity == Fidelity::switched;
        std::array<double, 3> injected{};
        std::size_t n_inj = 0;

        for (const auto& src : sources_) {
            const auto op = operating_point(src, x, t);
            const ConverterState cs{x[src.il_index], v_bus, src.duty};
            const auto d = switched ? converter_derivatives_switched(cs, src.conduction > 0.5, op.v, 0.0, *src.params)
                                    : converter_derivatives_averaged(cs, src.duty, op.v, 0.0, *src.params);
            dx[src.il_index] = d.di_l;
            injected[n_inj++] = converter_port_currents(src.params->kind, cs.i_l, src.conduction).output;

            if (src.kind == Source::battery) {
                dx[ix_bat_it_] = op.i / 3600.0;
                dx[ix_bat_istar_] = (op.i - x[ix_bat_istar_]) / sc_.battery.params.tau_filter;
            } else if (src.kind == Source::pv) {
                dx[ix_pv_vin_] = (op.i - cs.i_l) / sc_.pv.c_in;
            }
        }

        const double i_load = load_current(load_demand(sc_.load, t), v_bus, sc_.bus.v_floor);
        dx[ix_v_bus_] = bus_derivative(v_bus, std::span<const double>{injected.data(), n_inj}, i_load, sc_.bus.c_bus);
    }

    // --- setup ---------------------------------------------------------------

    void initialise()
    {
        const double t0 = sc_.clock.t0;
        const double v_bus = sc_.bus.v_init;
        x_[ix_v_bus_] = v_bus;
        const auto& ctl = sc_.control;

        auto make_droop_loop = [&](const ConverterParams& cp) {
            const double rated_current = cp.rating / sc_.bus.v_nom;
            DroopLoop loop;
            loop.droop = make_droop(sc_.bus.v_nom, ctl.delta_v_max_frac * sc_.bus.v_nom, cp.rating);
            loop.voltage_pi = {0.0, ctl.voltage_pi.kp, ctl.voltage_pi.ki, ctl.voltage_pi.lo * rated_current,
                               ctl.voltage_pi.hi * rated_current};
            loop.current_pi = {0.0, ctl.current_pi.kp, ctl.current_pi.ki, ctl.current_pi.lo, ctl.current_pi.hi};
            loop.i_l_ref_max = 0.9 * cp.i_l_max;
            return loop;
        };
        auto make_mppt = [&](double v_oc, double v_now) {
            const auto& m = ctl.mppt;
            MpptState s{};
            s.v_ref = m.v_ref_init_frac * v_oc;
            s.prev_p = 0.0;
            s.prev_v = v_now;
            s.step = m.step;
            s.sample_period = m.sample_period;
            s.v_min = m.v_min_frac * v_oc;
            s.v_max = m.v_max_frac * v_oc;
            return s;
        };
        const PiState mppt_pi{0.0, ctl.mppt_pi.kp, ctl.mppt_pi.ki, ctl.mppt_pi.lo, ctl.mppt_pi.hi};

        if (sc_.battery.enabled) {
            const auto bs = battery_state_at_soc(sc_.battery.params, sc_.battery.soc_init);
            x_[ix_bat_it_] = bs.it_ah;
            x_[ix_bat_istar_] = 0.0;
            bat_loop_ = make_droop_loop(sc_.battery.converter);
            // Duty that holds the inductor current at zero.
            const double v_oc = battery_emf(sc_.battery.params, bs, 0.0);
            bat_loop_.current_pi = pi_preload(bat_loop_.current_pi, v_bus / v_oc);
        }
        if (sc_.pv.enabled) {
            const double v_oc = pv_array_voc(sc_.pv.array, pv_irradiance(t0), sc_.pv.temperature_k);
            x_[ix_pv_vin_] = v_oc;
            pv_mppt_ = make_mppt(v_oc, v_oc);
            pv_pi_ = pi_preload(mppt_pi, 1.0 - v_oc / v_bus);
        }
        if (sc_.fuel_cell.enabled) {
            const double v_oc = fuel_cell_voltage(0.0, sc_.fuel_cell.params);
            if (sc_.fuel_cell.role == ControlRole::droop) {
                fc_loop_ = make_droop_loop(sc_.fuel_cell.converter);
                fc_loop_.current_pi = pi_preload(fc_loop_.current_pi, 1.0 - v_oc / v_bus);
            } else {
                fc_mppt_ = make_mppt(v_oc, v_oc);
                // Keep the tracked operating point below the converter's current limit.
                const auto& fc = sc_.fuel_cell;
                const double i_cap = 0.9 * std::min(fc.converter.i_l_max, fc.params.i_max);
                fc_mppt_.v_min = std::max(fc_mppt_.v_min, fuel_cell_voltage(i_cap, fc.params));
                fc_mppt_.v_ref = std::max(fc_mppt_.v_ref, fc_mppt_.v_min);
                fc_pi_ = pi_preload(mppt_pi, 1.0 - v_oc / v_bus);
            }
        }
        for (auto& src : sources_) src.duty = initial_duty(src);
    }

    double initial_duty(const SourceSlot& src) const
    {
        const double ki_int = [&] {
            switch (src.kind) {
            case Source::battery: return bat_loop_.current_pi.ki * bat_loop_.current_pi.integral;
            case Source::pv: return pv_pi_.ki * pv_pi_.integral;
            case Source::fuel_cell:
                return sc_.fuel_cell.role == ControlRole::droop ? fc_loop_.current_pi.ki * fc_loop_.current_pi.integral
                                                                : fc_pi_.ki * fc_pi_.integral;
            }
            return 0.0;
        }();
        return std::clamp(ki_int, 0.0, 1.0);
    }

    // --- discrete control -----------------------------------------------------

    void sample_controllers(double t, bool mppt_tick)
    {
        const double dt = sc_.control.sample_period;
        const double v_bus = x_[ix_v_bus_];
        const std::span<const double> x{x_};

        for (auto& src : sources_) {
            // Measurements use the duty-averaged source current so the sampled
            // values do not alias with the switching ripple.
            SourceSlot avg = src;
            avg.conduction = src.duty;
            const auto op = operating_point(avg, x, t);
            const double i_l = x_[src.il_index];
            // Power through the inductor side of the converter: v_bus * i_L for
            // a buck, v_in * i_L for a boost. Neither depends on the duty being
            // commanded, which would otherwise close an algebraic loop through
            // the droop reference.
            const double p_out = src.params->kind == ConverterKind::buck ? v_bus * i_l : op.v * i_l;

            auto run_mppt = [&](MpptState& mppt, PiState& pi) {
                if (mppt_tick) mppt = perturb_observe_step(mppt, op.v * op.i, op.v);
                const auto [duty, next] = mppt_duty_command(mppt, pi, op.v, dt);
                pi = next;
                return duty;
            };
            auto run_droop = [&](DroopLoop& loop, double bus_to_inductor) {
                const auto cmd = droop_duty_command(loop, v_bus, p_out, i_l, bus_to_inductor, dt);
                loop = cmd.next;
                return cmd.duty;
            };

            switch (src.kind) {
            case Source::battery: src.duty = run_droop(bat_loop_, 1.0); break;
            case Source::pv: src.duty = run_mppt(pv_mppt_, pv_pi_); break;
            case Source::fuel_cell:
                if (sc_.fuel_cell.role == ControlRole::droop)
                    src.duty = run_droop(fc_loop_, v_bus / std::max(op.v, 1.0));
                else
                    src.duty = run_mppt(fc_mppt_, fc_pi_);
                break;
            }
        }
    }

    // --- bookkeeping ------------------------------------------------------------

    void post_step(double t)
    {
        for (const auto& src : sources_) {
            double& i_l = x_[src.il_index];
            if (i_l < 0.0) i_l = 0.0;  // unidirectional stages
            if (i_l > src.params->i_l_max) {
                throw SimulationError("protection trip at t=" + fmt_time(t) + ": " + name_of(src.kind) +
                                      " inductor current " + std::to_string(i_l) + " A exceeds i_L_max " +
                                      std::to_string(src.params->i_l_max) + " A");
            }
        }
        for (std::size_t i = 0; i < x_.size(); ++i) {
            if (!std::isfinite(x_[i]) || std::abs(x_[i]) > sc_.limits.abort_bound) {
                throw SimulationError("numerical blow-up at t=" + fmt_time(t) + ": '" + names_[i] + "' = " +
                                      std::to_string(x_[i]));
            }
        }
        if (ix_bat_it_ >= 0 && x_[ix_bat_it_] >= sc_.battery.params.capacity_ah)
            throw SimulationError("battery depleted at t=" + fmt_time(t));
        if (ix_v_bus_ >= 0 && x_[ix_v_bus_] < 0.0)
            throw SimulationError("bus voltage went negative at t=" + fmt_time(t));
    }

    Trace make_trace_header() const
    {
        Trace tr;
        tr.has_soc = sc_.battery.enabled;
        tr.storage.c_bus = sc_.bus.c_bus;
        for (const auto& src : sources_) {
            tr.source_names.push_back(name_of(src.kind));
            tr.storage.inductances.push_back(src.params->inductance);
            tr.storage.source_capacitances.push_back(src.kind == Source::pv ? sc_.pv.c_in : 0.0);
        }
        return tr;
    }

    TraceRow record(double t) const
    {
        const std::span<const double> x{x_};
        TraceRow row{};
        row.t = t;
        row.v_bus = x_[ix_v_bus_];
        row.p_demand = load_demand(sc_.load, t);
        row.p_load = row.v_bus * load_current(row.p_demand, row.v_bus, sc_.bus.v_floor);
        for (const auto& src : sources_) {
            const auto op = operating_point(src, x, t);
            row.sources.push_back({op.v, op.i, op.v * op.i});
            const double i_l = x_[src.il_index];
            const double i_out = converter_port_currents(src.params->kind, i_l, src.conduction).output;
            row.converters.push_back({i_l, src.duty, row.v_bus * i_out});
        }
        row.soc = sc_.battery.enabled ? 1.0 - x_[ix_bat_it_] / sc_.battery.params.capacity_ah : 0.0;
        return row;
    }

    const Scenario& sc_;
    std::vector<std::string> names_;
    std::vector<double> x_;
    std::vector<SourceSlot> sources_;
    int ix_v_bus_ = -1;
    int ix_bat_il_ = -1, ix_bat_it_ = -1, ix_bat_istar_ = -1;
    int ix_pv_il_ = -1, ix_pv_vin_ = -1;
    int ix_fc_il_ = -1;

    DroopLoop bat_loop_{};
    DroopLoop fc_loop_{};
    MpptState pv_mppt_{};
    MpptState fc_mppt_{};
    PiState pv_pi_{};
    PiState fc_pi_{};
};

}  // namespace detail

/// Integrates a validated scenario from t0 to t_end. Deterministic: the same
/// scenario always produces a bit-identical trace.
inline Trace run_simulation(const Scenario& scenario)
{
    validate_scenario(scenario);
    detail::Microgrid grid(scenario);
    return grid.run();
}

// ---------------------------------------------------------------------------
// Standalone converter with a resistive load (test bench for the converter
// models; the microgrid never uses it)
// ---------------------------------------------------------------------------

struct OpenLoopBench {
    ConverterParams params;
    double duty;
    double v_in;
    double r_load;
    double t_end;
    double dt;
    Fidelity fidelity;
};

struct OpenLoopResult {
    std::vector<double> period_start;  ///< start time of each switching period
    std::vector<double> i_l_mean;      ///< per-period mean of i_L
    std::vector<double> v_o_mean;      ///< per-period mean of v_o
    ConverterState final_state;
};

/// Runs the converter open loop from rest and reports per-period means
/// (rectangle rule on the step grid).
inline OpenLoopResult simulate_converter_open_loop(const OpenLoopBench& b)
{
    const SimClock clock(0.0, b.t_end, b.dt);
    const std::int64_t per = detail::steps_in(b.params.switching_period, b.dt);
    const bool switched = b.fidelity == Fidelity::switched;
    if (switched && !detail::is_multiple(b.params.switching_period, b.dt))
        throw ValidationError("dt", "switched fidelity requires dt to divide the switching period");

    std::vector<double> x = {0.0, 0.0};
    const std::array<std::string, 2> names = {"i_L", "v_o"};
    Rk4Workspace ws;
    OpenLoopResult res;
    double sum_i = 0.0;
    double sum_v = 0.0;

    for (std::int64_t k = 0; k < clock.steps(); ++k) {
        if (k % per == 0 && k > 0) {
            res.period_start.push_back(clock.time_at(k - per));
            res.i_l_mean.push_back(sum_i / static_cast<double>(per));
            res.v_o_mean.push_back(sum_v / static_cast<double>(per));
            sum_i = sum_v = 0.0;
        }
        sum_i += x[0];
        sum_v += x[1];
        const double on = switched ? pwm_on_fraction(k, per, b.duty) : 1.0;
        bool gate = on > 0.0;
        auto deriv = [&](double, std::span<const double> s, std::span<double> ds) {
            const ConverterState cs{s[0], s[1], b.duty};
            const double i_out = s[1] / b.r_load;
            const auto d = switched ? converter_derivatives_switched(cs, gate, b.v_in, i_out, b.params)
                                    : converter_derivatives_averaged(cs, b.duty, b.v_in, i_out, b.params);
            ds[0] = d.di_l;
            ds[1] = d.dv_o;
        };
        if (on > 0.0 && on < 1.0) {
            step_rk4(std::span<double>{x}, clock.time_at(k), on * b.dt, deriv, ws, names);
            gate = false;
            step_rk4(std::span<double>{x}, clock.time_at(k) + on * b.dt, (1.0 - on) * b.dt, deriv, ws, names);
        } else {
            step_rk4(std::span<double>{x}, clock.time_at(k), b.dt, deriv, ws, names);
        }
        x[0] = std::max(x[0], 0.0);
    }
    res.final_state = {x[0], x[1], b.duty};
    return res;
}

}  // namespace dcmg
