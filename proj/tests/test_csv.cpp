/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "dcmg/csv.hpp"

namespace {

dcmg::Trace sample_trace(std::size_t n)
{
    dcmg::Trace tr;
    tr.source_names = {"battery", "fuel_cell"};
    tr.has_soc = true;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = 0.01 * static_cast<double>(k);
        tr.rows.push_back({.t = t, .v_bus = 199.87654321 - t, .p_load = 3000.0 + t, .p_demand = 3000.0,
                           .sources = {{245.1, 8.2, 2009.82}, {62.3, 16.0, 996.8}},
                           .converters = {{8.2, 0.81, 2000.1}, {16.0, 0.69, 999.9}}, .soc = 0.999999 - 1e-7 * t});
    }
    return tr;
}

std::size_t count(const std::string& s, char c) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), c)); }

}  // namespace

TEST_CASE("number formatting")
{
    CHECK(dcmg::format_number(0.0) == "0");
    CHECK(dcmg::format_number(-0.0) == "0");
    CHECK(dcmg::format_number(200.0) == "200");
    CHECK(dcmg::format_number(199.87654321) == "199.876543");
    CHECK(dcmg::format_number(-1.5) == "-1.5");
    CHECK(dcmg::format_number(1.23456789012e-5) == "0.0000123456789");
    CHECK(dcmg::format_number(123456789012.0) == "123456789012");
    CHECK_THROWS_AS(dcmg::format_number(std::numeric_limits<double>::quiet_NaN()), dcmg::SimulationError);
}

TEST_CASE("one row makes two lines")
{
    std::ostringstream out;
    CHECK(dcmg::write_trace_csv(sample_trace(1), out) == 1);
    CHECK(count(out.str(), '\n') == 2);
    CHECK(out.str().back() == '\n');
}

TEST_CASE("identical traces give identical bytes")
{
    std::ostringstream a;
    std::ostringstream b;
    dcmg::write_trace_csv(sample_trace(50), a);
    dcmg::write_trace_csv(sample_trace(50), b);
    CHECK(a.str() == b.str());
}

TEST_CASE("every line has one cell per column")
{
    const auto tr = sample_trace(20);
    std::ostringstream out;
    dcmg::write_trace_csv(tr, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(count(line, ',') + 1 == tr.columns().size());
    while (std::getline(in, line)) {
        CHECK(count(line, ',') + 1 == tr.columns().size());
        CHECK(line.find_first_of("eE") == std::string::npos);
        CHECK(line.find('"') == std::string::npos);
    }
}

TEST_CASE("empty trace is rejected")
{
    std::ostringstream out;
    CHECK_THROWS_AS(dcmg::write_trace_csv(dcmg::Trace{}, out), dcmg::ValidationError);
}

TEST_CASE("written CSV reads back and rewrites identically")
{
    std::ostringstream out;
    dcmg::write_trace_csv(sample_trace(10), out);
    std::istringstream in(out.str());
    const auto back = dcmg::read_trace_csv(in);
    CHECK(back.source_names == std::vector<std::string>{"battery", "fuel_cell"});
    CHECK(back.has_soc);
    CHECK(back.rows.size() == 10);
    std::ostringstream again;
    dcmg::write_trace_csv(back, again);
    CHECK(again.str() == out.str());
}

TEST_CASE("malformed CSV is rejected")
{
    std::istringstream bad_header("time,v\n1,2\n");
    CHECK_THROWS_AS(dcmg::read_trace_csv(bad_header), dcmg::ValidationError);
    std::istringstream short_row("t_s,v_bus_V,p_load_W,p_demand_W\n1,2,3\n");
    CHECK_THROWS_AS(dcmg::read_trace_csv(short_row), dcmg::ValidationError);
}
