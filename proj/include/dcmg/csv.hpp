/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dcmg/errors.hpp"
#include "dcmg/trace.hpp"

namespace dcmg {

/// Plain decimal with 9 significant digits, trailing zeros trimmed. No
/// exponent, no quoting; every standard CSV reader parses it.
inline std::string format_number(double x)
{
    if (!std::isfinite(x)) throw SimulationError("non-finite value in trace");
    if (x == 0.0) return "0";
    const int exponent = static_cast<int>(std::floor(std::log10(std::abs(x))));
    const int decimals = std::max(0, 8 - exponent);
    std::vector<char> buf(static_cast<std::size_t>(decimals + std::max(exponent, 0) + 8));
    std::snprintf(buf.data(), buf.size(), "%.*f", decimals, x);
    std::string s(buf.data());
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

/// Header plus one line per row. Returns the number of data rows written.
inline std::size_t write_trace_csv(const Trace& trace, std::ostream& out)
{
    if (trace.rows.empty()) throw ValidationError("trace", "cannot write an empty trace");
    const auto cols = trace.columns();
    std::string line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) line += ',';
        line += cols[i];
    }
    line += '\n';
    out << line;
    for (const auto& row : trace.rows) {
        const auto values = trace.flatten(row);
        line.clear();
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) line += ',';
            line += format_number(values[i]);
        }
        line += '\n';
        out << line;
    }
    if (!out) throw SimulationError("failed writing trace CSV");
    return trace.rows.size();
}

/// Rebuilds a Trace from CSV produced by write_trace_csv. Storage metadata is
/// not part of the file and comes back empty.
inline Trace read_trace_csv(std::istream& in)
{
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };

    std::string header;
    if (!std::getline(in, header)) throw ValidationError("csv", "missing header row");
    const auto cols = split(header);
    static const std::vector<std::string> fixed = {"t_s", "v_bus_V", "p_load_W", "p_demand_W"};
    if (cols.size() < fixed.size() || !std::equal(fixed.begin(), fixed.end(), cols.begin()))
        throw ValidationError("csv", "header does not start with t_s,v_bus_V,p_load_W,p_demand_W");

    Trace tr;
    const std::string suffix = "_v_V";
    std::size_t c = fixed.size();
    while (c < cols.size() && cols[c].size() > suffix.size() &&
           cols[c].compare(cols[c].size() - suffix.size(), suffix.size(), suffix) == 0) {
        tr.source_names.push_back(cols[c].substr(0, cols[c].size() - suffix.size()));
        c += 3;
    }
    tr.has_soc = !cols.empty() && cols.back() == "soc";
    if (tr.columns() != cols) throw ValidationError("csv", "header does not match the trace schema");

    const std::size_t n_src = tr.source_names.size();
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != cols.size())
            throw ValidationError("csv", "line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                                             " cells, expected " + std::to_string(cols.size()));
        std::vector<double> v;
        v.reserve(cells.size());
        for (const auto& cell : cells) v.push_back(std::stod(cell));
        TraceRow r{};
        r.t = v[0];
        r.v_bus = v[1];
        r.p_load = v[2];
        r.p_demand = v[3];
        std::size_t k = 4;
        for (std::size_t s = 0; s < n_src; ++s, k += 3) r.sources.push_back({v[k], v[k + 1], v[k + 2]});
        for (std::size_t s = 0; s < n_src; ++s, k += 3) r.converters.push_back({v[k], v[k + 1], v[k + 2]});
        r.soc = tr.has_soc ? v[k] : 0.0;
        tr.rows.push_back(std::move(r));
    }
    return tr;
}

}  // namespace dcmg
