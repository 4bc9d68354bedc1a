// SPDX-License-Identifier: Apache-2.0
//
// drbf: distributionally robust receive beamforming
// Copyright (C) 2026 The drbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "drbf/config.hpp"
#include "drbf/csv_io.hpp"
#include "drbf/harness.hpp"
#include "drbf/version.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 1;
constexpr int kExitMethodFailed = 3;

struct Options {
    std::string config_path;
    std::string out_dir = "drbf_out";
    std::string preset;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::string method;
    std::vector<std::string> grids;
    std::optional<int> pilot_size;
    std::string frame_path = "frame.csv";
    bool quiet = false;
};

drbf::ExperimentConfig load_config(const Options &opt, std::vector<std::string> overrides) {
    if (opt.seed) { overrides.push_back("master_seed=" + std::to_string(*opt.seed)); }
    if (opt.jobs) { overrides.push_back("jobs=" + std::to_string(*opt.jobs)); }
    if (opt.config_path.empty()) { return drbf::parse_config_text("", "<defaults>", overrides); }
    return drbf::parse_config(opt.config_path, overrides);
}

void write_manifest(const fs::path &dir, const std::string &command, const drbf::ExperimentConfig &cfg,
                    const std::vector<drbf::ResultRow> &rows, double elapsed_s) {
    std::ofstream os(dir / "manifest.txt");
    if (!os) { throw drbf::Error("cannot write " + (dir / "manifest.txt").string()); }
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    os << "# drbf " << drbf::kVersion << '\n'
       << "# command: " << command << '\n'
       << "# written: " << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ") << '\n'
       << "# elapsed_s: " << elapsed_s << '\n'
       << "# master_seed: " << cfg.master_seed << '\n'
       << "# re-run with: drbf run --config manifest.txt\n";
    os << drbf::config_to_text(cfg);
    os << "# parameters used per method and pilot size\n";
    for (const auto &r : rows) {
        os << "# " << r.method << " L=" << r.pilot_size << " " << (r.params.empty() ? "-" : r.params);
        if (r.episodes_ok < r.episodes_total) {
            os << " failures=" << (r.episodes_total - r.episodes_ok) << " first_error=\"" << r.error << '"';
        }
        os << '\n';
    }
}

void print_rows(const std::vector<drbf::ResultRow> &rows,
                const std::map<std::pair<std::string, int>, double> &reference) {
    std::cout << std::left << std::setw(16) << "method" << std::right << std::setw(7) << "L" << std::setw(12)
              << (rows.empty() ? "metric" : rows.front().metric_name) << std::setw(10) << "stderr" << std::setw(12)
              << "time_s" << std::setw(8) << "ok";
    if (!reference.empty()) { std::cout << std::setw(11) << "published"; }
    std::cout << '\n';
    for (const auto &r : rows) {
        std::cout << std::left << std::setw(16) << r.method << std::right << std::setw(7) << r.pilot_size
                  << std::setw(12) << std::setprecision(4) << r.metric_value << std::setw(10) << std::setprecision(2)
                  << r.metric_stderr << std::setw(12) << std::setprecision(3) << r.train_time_s << std::setw(5)
                  << r.episodes_ok << '/' << r.episodes_total;
        if (!reference.empty()) {
            const auto it = reference.find({r.method, r.pilot_size});
            std::cout << std::setw(11);
            if (it != reference.end()) {
                std::cout << std::setprecision(3) << it->second;
            } else {
                std::cout << "-";
            }
        }
        std::cout << '\n';
    }
}

int emit(const Options &opt, const std::string &command, const drbf::ExperimentConfig &cfg,
         const std::vector<drbf::ResultRow> &rows, double elapsed_s,
         const std::map<std::pair<std::string, int>, double> &reference = {}) {
    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    drbf::write_results_csv((dir / "results.csv").string(), rows, reference);
    drbf::write_plot_script((dir / "plot.gp").string(), "results.csv", rows);
    write_manifest(dir, command, cfg, rows, elapsed_s);
    if (!opt.quiet) { print_rows(rows, reference); }
    std::cerr << "wrote " << (dir / "results.csv").string() << ", manifest.txt, plot.gp\n";
    for (const auto &r : rows) {
        if (r.episodes_ok == 0) {
            std::cerr << "error: " << r.method << " failed in every episode at L=" << r.pilot_size << ": " << r.error
                      << '\n';
            return kExitMethodFailed;
        }
    }
    return kExitOk;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_run(const Options &opt, const std::string &command) {
    const auto cfg = load_config(opt, opt.overrides);
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = drbf::run_experiment(cfg);
    return emit(opt, command, cfg, rows, seconds_since(t0));
}

int cmd_reproduce(const Options &opt, const std::string &command) {
    drbf::Preset preset;
    try {
        preset = drbf::make_preset(opt.preset);
    } catch (const drbf::InvalidArgument &e) {
        std::cerr << "error: " << e.what() << "\navailable presets:";
        for (const auto &n : drbf::preset_names()) { std::cerr << ' ' << n; }
        std::cerr << '\n';
        return kExitUsage;
    }
    auto cfg = preset.config;
    for (const auto &o : opt.overrides) { drbf::apply_override(cfg, o); }
    if (opt.seed) { cfg.master_seed = *opt.seed; }
    if (opt.jobs) { cfg.jobs = *opt.jobs; }
    cfg.validate();
    std::cerr << preset.name << ": " << preset.description << '\n';
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = drbf::run_experiment(cfg);
    return emit(opt, command, cfg, rows, seconds_since(t0), preset.reference);
}

int cmd_tune(const Options &opt) {
    const auto cfg = load_config(opt, opt.overrides);
    const auto method = drbf::parse_method(opt.method);
    std::map<std::string, std::vector<double>> grids;
    for (const auto &g : opt.grids) {
        const auto eq = g.find('=');
        if (eq == std::string::npos) { throw drbf::InvalidArgument("--grid expects key=v1,v2,..., got '" + g + "'"); }
        std::vector<double> values;
        std::stringstream ss(g.substr(eq + 1));
        std::string item;
        while (std::getline(ss, item, ',')) { values.push_back(drbf::csv::parse_double(item)); }
        grids[g.substr(0, eq)] = values;
    }
    if (grids.empty()) {
        for (const auto &[key, values] : drbf::method_info(method.name).tuning_grid) { grids[key] = values; }
    }
    if (grids.empty()) { throw drbf::InvalidArgument("method " + method.name + " has no tunable parameters"); }
    const std::vector<int> sizes = opt.pilot_size ? std::vector<int>{*opt.pilot_size} : cfg.pilot_sizes;

    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    std::ofstream os(dir / "tune.csv");
    os << "method,pilot_size,params,metric_value,selected\n";
    for (int l : sizes) {
        const auto result = drbf::tune_parameter(cfg, method, l, grids);
        std::string best;
        for (const auto &[k, v] : result.best) { best += (best.empty() ? "" : ";") + k + "=" + drbf::csv::format_double(v); }
        for (const auto &[point, value] : result.evaluated) {
            std::string p;
            for (const auto &[k, v] : point) { p += (p.empty() ? "" : ";") + k + "=" + drbf::csv::format_double(v); }
            os << method.name << ',' << l << ',' << p << ',' << drbf::csv::format_double(value) << ','
               << (point == result.best ? 1 : 0) << '\n';
        }
        std::cout << method.name << " L=" << l << ": " << best << " (" << cfg.metric_name() << " "
                  << result.best_metric << " over " << cfg.tune_episodes << " tuning episodes)\n";
    }
    std::cerr << "wrote " << (dir / "tune.csv").string() << '\n';
    return kExitOk;
}

int cmd_export_frame(const Options &opt) {
    const auto cfg = load_config(opt, opt.overrides);
    const int l = opt.pilot_size.value_or(cfg.pilot_sizes.front());
    const auto ep = drbf::generate_episode(cfg, l, drbf::evaluation_seed(cfg.master_seed, 0));
    const fs::path path(opt.frame_path);
    if (path.has_parent_path()) { fs::create_directories(path.parent_path()); }
    drbf::save_frame(path.string(), ep.pilots);
    std::cerr << "wrote " << path.string() << " (M=" << cfg.n_tx << ", N=" << cfg.n_rx << ", L=" << l << ")\n";
    return kExitOk;
}

int cmd_list() {
    std::cout << "methods:\n";
    for (const auto &m : drbf::method_registry()) {
        std::cout << "  " << std::left << std::setw(18) << m.name << m.description;
        if (!m.defaults.empty()) {
            std::cout << " [";
            bool first = true;
            for (const auto &[k, v] : m.defaults) {
                std::cout << (first ? "" : ", ") << k << "=" << v;
                first = false;
            }
            std::cout << "]";
        }
        std::cout << '\n';
    }
    std::cout << "presets:\n";
    for (const auto &n : drbf::preset_names()) {
        std::cout << "  " << std::left << std::setw(18) << n << drbf::make_preset(n).description << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"drbf: robust receive beamforming experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(drbf::kVersion));
    Options opt;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--set", opt.overrides, "override a config key, KEY=VALUE (repeatable)")->take_all();
        sub->add_option("--seed", opt.seed, "master seed");
        sub->add_option("--jobs", opt.jobs, "worker threads (0 = all cores)");
        sub->add_flag("--quiet", opt.quiet, "do not print the result table");
    };

    auto *run = app.add_subcommand("run", "run an experiment described by a config file");
    run->add_option("--config", opt.config_path, "key=value config file")->required()->check(CLI::ExistingFile);
    add_common(run);

    auto *reproduce = app.add_subcommand("reproduce", "run a named table or figure preset");
    reproduce->add_option("--preset", opt.preset, "table1..table6, fig3a..fig3d, fig4a..fig4d")->required();
    add_common(reproduce);

    auto *tune = app.add_subcommand("tune", "grid-search method parameters on tuning episodes");
    tune->add_option("--config", opt.config_path, "key=value config file")->required()->check(CLI::ExistingFile);
    tune->add_option("--method", opt.method, "method spec, e.g. wiener_dl")->required();
    tune->add_option("--grid", opt.grids, "KEY=v1,v2,... (repeatable; default: the method's built-in grid)");
    tune->add_option("--pilot-size", opt.pilot_size, "tune at this pilot size only");
    add_common(tune);

    auto *exp = app.add_subcommand("export-frame", "write one generated pilot frame as CSV");
    exp->add_option("--config", opt.config_path, "key=value config file")->check(CLI::ExistingFile);
    exp->add_option("--out", opt.frame_path, "output file");
    exp->add_option("--set", opt.overrides, "override a config key, KEY=VALUE (repeatable)")->take_all();
    exp->add_option("--seed", opt.seed, "master seed");
    exp->add_option("--pilot-size", opt.pilot_size, "frame length (default: first pilot size)");

    auto *list = app.add_subcommand("list", "list methods and presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    std::string command;
    for (int i = 0; i < argc; ++i) { command += (i ? " " : "") + std::string(argv[i]); }
    try {
        if (run->parsed()) { return cmd_run(opt, command); }
        if (reproduce->parsed()) { return cmd_reproduce(opt, command); }
        if (tune->parsed()) { return cmd_tune(opt); }
        if (exp->parsed()) { return cmd_export_frame(opt); }
        if (list->parsed()) { return cmd_list(); }
    } catch (const drbf::InvalidArgument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
