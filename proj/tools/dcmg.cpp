/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

// Command-line front end:
//   dcmg run <scenario> [--out DIR] [--plots]
//   dcmg presets
//   dcmg sweep <scenario> --param KEY --values V1 V2 ... [--out DIR]
//   dcmg validate <scenario>
//   dcmg plot <trace.csv> [--out DIR]
// <scenario> is a JSON file or a preset name. Exit codes: 0 ok, 1 validation
// or usage error, 2 numerical abort.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dcmg/dcmg.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

dcmg::Json load_user_json(const std::string& arg)
{
    if (!fs::exists(arg) && dcmg::defaults::preset(arg)) return dcmg::Json{{"preset", arg}};
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw dcmg::ValidationError("cannot open scenario '" + arg + "' (not a file or preset name)");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    // Round through parse_scenario for syntax diagnostics, then keep the raw
    // JSON so sweeps can patch it.
    dcmg::parse_scenario(text);
    return dcmg::Json::parse(text);
}

struct RunOutput {
    fs::path csv;
    std::vector<fs::path> plots;
    std::size_t rows = 0;
};

RunOutput run_and_write(const dcmg::Scenario& sc, const fs::path& out_dir, const std::string& stem, bool plots)
{
    const auto trace = dcmg::run_simulation(sc);
    fs::create_directories(out_dir);
    RunOutput res;
    res.csv = out_dir / (sc.output.csv.empty() ? stem + ".csv" : sc.output.csv);
    std::ofstream out(res.csv, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + res.csv.string());
    res.rows = dcmg::write_trace_csv(trace, out);
    if (plots) {
        const fs::path plot_dir = sc.output.plot_dir.empty() ? out_dir : out_dir / sc.output.plot_dir;
        res.plots = dcmg::emit_plots(trace, {plot_dir, stem});
    }
    return res;
}

dcmg::Json parse_cli_value(const std::string& text)
{
    if (text == "true") return true;
    if (text == "false") return false;
    try {
        std::size_t used = 0;
        const double d = std::stod(text, &used);
        if (used == text.size()) {
            if (text.find_first_of(".eE") == std::string::npos) return std::stoll(text);
            return d;
        }
    } catch (const std::exception&) {
    }
    return text;
}

std::string sanitize(std::string s)
{
    for (char& c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')) c = '_';
    return s;
}

template <class F>
int guarded(F&& body)
{
    try {
        return body();
    } catch (const dcmg::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const dcmg::SimulationError& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"DC microgrid simulator (battery, PV, fuel cell on a common DC bus)"};
    app.require_subcommand(1);

    std::string scenario_arg;
    std::string out_dir = ".";
    bool plots = false;
    auto* run = app.add_subcommand("run", "simulate a scenario and write its trace CSV");
    run->add_option("scenario", scenario_arg, "scenario JSON file or preset name")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--plots", plots, "also write SVG plots");

    app.add_subcommand("presets", "list the named scenarios and PV array presets");

    std::string sweep_param;
    std::vector<std::string> sweep_values;
    auto* sweep = app.add_subcommand("sweep", "run a scenario once per value of one parameter");
    sweep->add_option("scenario", scenario_arg, "scenario JSON file or preset name")->required();
    sweep->add_option("--param", sweep_param, "dotted key, e.g. control.mppt.step")->required();
    sweep->add_option("--values", sweep_values, "values to assign")->required();
    sweep->add_option("--out", out_dir, "output directory");

    auto* validate = app.add_subcommand("validate", "parse and validate a scenario without running it");
    validate->add_option("scenario", scenario_arg, "scenario JSON file or preset name")->required();

    std::string csv_arg;
    auto* plot = app.add_subcommand("plot", "regenerate SVG plots from a trace CSV");
    plot->add_option("csv", csv_arg, "trace CSV written by `run`")->required();
    plot->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    if (app.got_subcommand("presets")) {
        std::cout << "scenarios:\n";
        for (auto name : dcmg::defaults::kPresetNames)
            std::cout << "  " << name << "  -  " << dcmg::defaults::preset_description(name) << "\n";
        std::cout << "pv arrays:\n"
                  << "  10x2_6kW  -  2 series x 10 parallel SPR-305E-class modules, about 6 kW (scenario default)\n"
                  << "  66x5      -  66 strings x 5 series modules (set pv.n_series=5, pv.n_parallel=66)\n";
        return kExitOk;
    }

    if (app.got_subcommand("validate")) {
        return guarded([&] {
            const auto sc = dcmg::scenario_from_user_json(load_user_json(scenario_arg));
            std::cout << "ok: " << sc.name << "\n";
            return kExitOk;
        });
    }

    if (app.got_subcommand("run")) {
        return guarded([&] {
            const auto sc = dcmg::scenario_from_user_json(load_user_json(scenario_arg));
            const auto res = run_and_write(sc, out_dir, sanitize(sc.name), plots);
            std::cout << "wrote " << res.csv.string() << " (" << res.rows << " rows)\n";
            for (const auto& p : res.plots) std::cout << "wrote " << p.string() << "\n";
            return kExitOk;
        });
    }

    if (app.got_subcommand("sweep")) {
        return guarded([&] {
            const auto base = load_user_json(scenario_arg);
            std::string pointer = "/" + sweep_param;
            std::replace(pointer.begin(), pointer.end(), '.', '/');

            std::vector<dcmg::Scenario> scenarios;
            std::vector<std::string> stems;
            for (const auto& v : sweep_values) {
                auto patched = base;
                patched[dcmg::Json::json_pointer(pointer)] = parse_cli_value(v);
                scenarios.push_back(dcmg::scenario_from_user_json(patched));
                scenarios.back().output.csv.clear();
                stems.push_back(sanitize(scenarios.back().name + "__" + sweep_param + "=" + v));
            }
            // Runs are independent pure functions of their scenario.
            std::vector<std::future<RunOutput>> jobs;
            for (std::size_t i = 0; i < scenarios.size(); ++i)
                jobs.push_back(std::async(std::launch::async, [&, i] {
                    return run_and_write(scenarios[i], out_dir, stems[i], false);
                }));
            int code = kExitOk;
            for (auto& j : jobs) {
                const int c = guarded([&] {
                    const auto res = j.get();
                    std::cout << "wrote " << res.csv.string() << " (" << res.rows << " rows)\n";
                    return kExitOk;
                });
                code = std::max(code, c);
            }
            return code;
        });
    }

    if (app.got_subcommand("plot")) {
        return guarded([&] {
            std::ifstream in(csv_arg, std::ios::binary);
            if (!in) throw dcmg::ValidationError("cannot open '" + csv_arg + "'");
            const auto trace = dcmg::read_trace_csv(in);
            for (const auto& p : dcmg::emit_plots(trace, {out_dir, fs::path(csv_arg).stem().string()}))
                std::cout << "wrote " << p.string() << "\n";
            return kExitOk;
        });
    }
    return kExitValidation;
}
