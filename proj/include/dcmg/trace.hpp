/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dcmg/errors.hpp"

namespace dcmg {

struct SourceSample {
    double v;
    double i;
    double p;

    bool operator==(const SourceSample&) const = default;
};

struct ConverterSample {
    double i_l;
    double duty;
    double p_out;  ///< power injected into the bus

    bool operator==(const ConverterSample&) const = default;
};

struct TraceRow {
    double t;
    double v_bus;
    double p_load;
    double p_demand;
    std::vector<SourceSample> sources;
    std::vector<ConverterSample> converters;
    double soc;  ///< meaningful only when Trace::has_soc

    bool operator==(const TraceRow&) const = default;
};

/// Energy-storing elements, needed to close the power balance.
struct StorageMeta {
    double c_bus = 0.0;
    std::vector<double> inductances;          ///< per converter
    std::vector<double> source_capacitances;  ///< per source, 0 where none

    bool operator==(const StorageMeta&) const = default;
};

/// Time-indexed record of a run. One source and one converter per name in
/// `source_names`, in that order.
struct Trace {
    std::vector<std::string> source_names;
    bool has_soc = false;
    StorageMeta storage;
    std::vector<TraceRow> rows;

    bool operator==(const Trace&) const = default;

    /// Column order: t_s, v_bus_V, p_load_W, p_demand_W, then per source
    /// <name>_v_V, <name>_i_A, <name>_p_W, then per converter <name>_iL_A,
    /// <name>_duty, <name>_pout_W, then soc when a battery is present.
    std::vector<std::string> columns() const
    {
        std::vector<std::string> cols = {"t_s", "v_bus_V", "p_load_W", "p_demand_W"};
        for (const auto& n : source_names) {
            cols.push_back(n + "_v_V");
            cols.push_back(n + "_i_A");
            cols.push_back(n + "_p_W");
        }
        for (const auto& n : source_names) {
            cols.push_back(n + "_iL_A");
            cols.push_back(n + "_duty");
            cols.push_back(n + "_pout_W");
        }
        if (has_soc) cols.push_back("soc");
        return cols;
    }

    std::vector<double> flatten(const TraceRow& r) const
    {
        std::vector<double> v = {r.t, r.v_bus, r.p_load, r.p_demand};
        for (const auto& s : r.sources) v.insert(v.end(), {s.v, s.i, s.p});
        for (const auto& c : r.converters) v.insert(v.end(), {c.i_l, c.duty, c.p_out});
        if (has_soc) v.push_back(r.soc);
        return v;
    }

    std::ptrdiff_t source_index(const std::string& name) const
    {
        for (std::size_t i = 0; i < source_names.size(); ++i)
            if (source_names[i] == name) return static_cast<std::ptrdiff_t>(i);
        return -1;
    }
};

/// Total power the converters push into the bus.
inline double delivered_power(const TraceRow& r)
{
    double p = 0.0;
    for (const auto& c : r.converters) p += c.p_out;
    return p;
}

inline double stored_energy(const Trace& tr, const TraceRow& r)
{
    const auto& m = tr.storage;
    double e = 0.5 * m.c_bus * r.v_bus * r.v_bus;
    for (std::size_t k = 0; k < r.converters.size() && k < m.inductances.size(); ++k)
        e += 0.5 * m.inductances[k] * r.converters[k].i_l * r.converters[k].i_l;
    for (std::size_t k = 0; k < r.sources.size() && k < m.source_capacitances.size(); ++k)
        e += 0.5 * m.source_capacitances[k] * r.sources[k].v * r.sources[k].v;
    return e;
}

/// Source power minus load power minus rate of change of stored energy at
/// row `index`. The derivative is a centered difference on the neighbouring
/// rows (one-sided at the ends).
inline double power_balance_residual(const Trace& tr, std::size_t index)
{
    const auto& rows = tr.rows;
    if (index >= rows.size()) throw ValidationError("row", "index out of range");
    const auto& r = rows[index];
    double p_src = 0.0;
    for (const auto& s : r.sources) p_src += s.p;

    double de_dt = 0.0;
    if (rows.size() > 1) {
        const std::size_t a = index == 0 ? 0 : index - 1;
        const std::size_t b = index + 1 < rows.size() ? index + 1 : index;
        de_dt = (stored_energy(tr, rows[b]) - stored_energy(tr, rows[a])) / (rows[b].t - rows[a].t);
    }
    return p_src - r.p_load - de_dt;
}

}  // namespace dcmg
