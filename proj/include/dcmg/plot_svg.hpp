/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "dcmg/errors.hpp"
#include "dcmg/trace.hpp"

namespace dcmg {

struct PlotSpec {
    std::filesystem::path dir;
    std::string stem = "trace";
    int width = 900;
    int height = 420;
};

struct Series {
    std::string label;
    std::vector<double> y;
    std::string color;
    bool dashed = false;
};

struct Panel {
    std::string name;  ///< file suffix
    std::string title;
    std::string y_label;
    std::vector<Series> series;
};

namespace detail {

inline std::string svg_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

inline std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

/// "Nice" tick spacing (1, 2, 5 x 10^n) giving roughly `target` ticks.
inline double nice_step(double span, int target)
{
    if (!(span > 0.0)) return 1.0;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

struct Axis {
    double lo;
    double hi;
    double step;
};

inline Axis auto_axis(double lo, double hi)
{
    if (!(hi > lo)) {
        const double pad = std::max(std::abs(lo) * 0.05, 1.0);
        lo -= pad;
        hi += pad;
    }
    const double step = nice_step(hi - lo, 5);
    return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

inline std::string render_panel(const Panel& panel, const std::vector<double>& t, const PlotSpec& spec)
{
    const double w = spec.width;
    const double h = spec.height;
    const double left = 80, right = 170, top = 40, bottom = 55;
    const double pw = w - left - right;
    const double ph = h - top - bottom;

    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();
    for (const auto& s : panel.series)
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    const Axis xa = auto_axis(t.front(), t.back());
    const Axis ya = auto_axis(ymin, ymax);
    auto px = [&](double x) { return left + (x - xa.lo) / (xa.hi - xa.lo) * pw; };
    auto py = [&](double y) { return top + ph - (y - ya.lo) / (ya.hi - ya.lo) * ph; };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height << "\" fill=\"white\"/>\n";
    o << "<text x=\"" << svg_num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << xml_escape(panel.title) << "</text>\n";

    o << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (double x = xa.lo; x <= xa.hi + 0.5 * xa.step; x += xa.step)
        o << "<line x1=\"" << svg_num(px(x)) << "\" y1=\"" << svg_num(top) << "\" x2=\"" << svg_num(px(x))
          << "\" y2=\"" << svg_num(top + ph) << "\"/>\n";
    for (double y = ya.lo; y <= ya.hi + 0.5 * ya.step; y += ya.step)
        o << "<line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(py(y)) << "\" x2=\"" << svg_num(left + pw)
          << "\" y2=\"" << svg_num(py(y)) << "\"/>\n";
    o << "</g>\n";
    o << "<rect x=\"" << svg_num(left) << "\" y=\"" << svg_num(top) << "\" width=\"" << svg_num(pw) << "\" height=\""
      << svg_num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double x = xa.lo; x <= xa.hi + 0.5 * xa.step; x += xa.step)
        o << "<text x=\"" << svg_num(px(x)) << "\" y=\"" << svg_num(top + ph + 18) << "\" text-anchor=\"middle\">"
          << tick_label(x) << "</text>\n";
    for (double y = ya.lo; y <= ya.hi + 0.5 * ya.step; y += ya.step)
        o << "<text x=\"" << svg_num(left - 8) << "\" y=\"" << svg_num(py(y) + 4) << "\" text-anchor=\"end\">"
          << tick_label(y) << "</text>\n";
    o << "<text x=\"" << svg_num(left + pw / 2) << "\" y=\"" << svg_num(h - 12)
      << "\" text-anchor=\"middle\">time [s]</text>\n";
    o << "<text x=\"18\" y=\"" << svg_num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << svg_num(top + ph / 2) << ")\">" << xml_escape(panel.y_label) << "</text>\n";

    double legend_y = top + 10;
    for (const auto& s : panel.series) {
        const std::string dash = s.dashed ? " stroke-dasharray=\"6 4\"" : "";
        if (t.size() == 1) {
            o << "<circle cx=\"" << svg_num(px(t[0])) << "\" cy=\"" << svg_num(py(s.y[0])) << "\" r=\"3\" fill=\""
              << s.color << "\"/>\n";
        } else {
            o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"" << dash << " points=\"";
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) o << ' ';
                o << svg_num(px(t[i])) << ',' << svg_num(py(s.y[i]));
            }
            o << "\"/>\n";
        }
        const double lx = left + pw + 15;
        o << "<line x1=\"" << svg_num(lx) << "\" y1=\"" << svg_num(legend_y) << "\" x2=\"" << svg_num(lx + 25)
          << "\" y2=\"" << svg_num(legend_y) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"" << dash << "/>\n";
        o << "<text x=\"" << svg_num(lx + 32) << "\" y=\"" << svg_num(legend_y + 4) << "\">" << xml_escape(s.label)
          << "</text>\n";
        legend_y += 20;
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace detail

/// Panels drawn from a trace: demand vs delivered power, bus voltage,
/// per-source power and (with a battery) state of charge.
inline std::vector<Panel> trace_panels(const Trace& tr)
{
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    std::vector<Panel> panels;

    Panel power{"power", "Demanded vs delivered power", "power [W]", {}};
    Series demand{"demand", {}, "#000000", true};
    Series delivered{"delivered (converters)", {}, palette[0], false};
    Series load{"load", {}, palette[1], false};
    for (const auto& r : tr.rows) {
        demand.y.push_back(r.p_demand);
        delivered.y.push_back(delivered_power(r));
        load.y.push_back(r.p_load);
    }
    power.series = {demand, delivered, load};
    panels.push_back(std::move(power));

    Panel bus{"bus_voltage", "DC bus voltage", "voltage [V]", {}};
    Series vb{"v_bus", {}, palette[0], false};
    for (const auto& r : tr.rows) vb.y.push_back(r.v_bus);
    bus.series = {vb};
    panels.push_back(std::move(bus));

    if (!tr.source_names.empty()) {
        Panel src{"source_power", "Source power", "power [W]", {}};
        for (std::size_t k = 0; k < tr.source_names.size(); ++k) {
            Series s{tr.source_names[k], {}, palette[(k + 2) % 6], false};
            for (const auto& r : tr.rows) s.y.push_back(r.sources[k].p);
            src.series.push_back(std::move(s));
        }
        panels.push_back(std::move(src));
    }

    if (tr.has_soc) {
        Panel soc{"soc", "Battery state of charge", "SOC [-]", {}};
        Series s{"soc", {}, palette[0], false};
        for (const auto& r : tr.rows) s.y.push_back(r.soc);
        soc.series = {s};
        panels.push_back(std::move(soc));
    }
    return panels;
}

/// Writes one SVG per panel as <dir>/<stem>_<panel>.svg and returns the paths.
inline std::vector<std::filesystem::path> emit_plots(const Trace& tr, const PlotSpec& spec)
{
    if (tr.rows.empty()) throw ValidationError("trace", "cannot plot an empty trace");
    std::vector<double> t;
    t.reserve(tr.rows.size());
    for (const auto& r : tr.rows) t.push_back(r.t);

    std::filesystem::create_directories(spec.dir);
    std::vector<std::filesystem::path> files;
    for (const auto& panel : trace_panels(tr)) {
        const auto path = spec.dir / (spec.stem + "_" + panel.name + ".svg");
        std::ofstream out(path, std::ios::binary);
        out << detail::render_panel(panel, t, spec);
        if (!out) throw SimulationError("failed writing plot " + path.string());
        files.push_back(path);
    }
    return files;
}

}  // namespace dcmg
