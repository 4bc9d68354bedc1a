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

#include "drbf/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "drbf/csv_io.hpp"

namespace drbf {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) { return {}; }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) { out.push_back(item); }
    }
    return out;
}

template<typename Int>
Int parse_int(const std::string &key, const std::string &value) {
    Int v{};
    const auto *end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc() || ptr != end) { throw InvalidArgument("invalid integer for " + key + ": '" + value + "'"); }
    return v;
}

double parse_real(const std::string &key, const std::string &value) {
    if (value == "inf" || value == "+inf") { return std::numeric_limits<double>::infinity(); }
    try {
        return csv::parse_double(value);
    } catch (const Error &) {
        throw InvalidArgument("invalid number for " + key + ": '" + value + "'");
    }
}

bool parse_bool(const std::string &key, const std::string &value) {
    if (value == "true" || value == "1" || value == "yes") { return true; }
    if (value == "false" || value == "0" || value == "no") { return false; }
    throw InvalidArgument("invalid boolean for " + key + ": '" + value + "'");
}

std::string join_ints(const std::vector<int> &v) {
    std::string out;
    for (int x : v) { out += (out.empty() ? "" : ",") + std::to_string(x); }
    return out;
}

std::vector<MethodSpec> methods_from(const std::vector<std::string> &texts) {
    std::vector<MethodSpec> out;
    for (const auto &t : texts) { out.push_back(parse_method(t)); }
    return out;
}

// Method labels as they appear in the published tables.
const std::vector<std::string> kTableMethods{
    "Wiener=wiener",
    "Wiener-DL=wiener_dl:eps=auto",
    "Wiener-DR=wiener_dr:eps=auto",
    "Wiener-CE=wiener_ce",
    "Wiener-CE-DL=wiener_ce_dl:eps=auto",
    "Wiener-CE-DR=wiener_ce_dr:eps=auto",
    "Capon=capon",
    "Capon-DL=capon_dl:eps=auto",
    "ZF=zf",
    "Kernel=kernel:bw=auto",
    "Kernel-DL=kernel_dl:eps=auto;bw=auto",
};

const std::vector<std::string> kFigureMethods{
    "Wiener=wiener", "Wiener-CE=wiener_ce", "Capon=capon", "ZF=zf", "Kernel=kernel:bw=auto",
};

const std::vector<int> kTablePilots{10, 15, 20, 25, 50, 100};

// Rows follow kTableMethods, columns follow kTablePilots.
const double kTableMse[11][6] = {
    {3.30, 1.38, 1.12, 0.92, 0.69, 0.57}, {2.11, 1.23, 1.05, 0.88, 0.68, 0.57},
    {1.97, 1.07, 0.93, 0.80, 0.65, 0.55}, {3.30, 1.38, 1.12, 0.92, 0.69, 0.57},
    {2.50, 1.30, 1.08, 0.90, 0.68, 0.57}, {3.31, 1.39, 1.13, 0.92, 0.70, 0.58},
    {5.44, 4.48, 5.01, 4.94, 6.95, 9.89}, {4.52, 4.34, 4.94, 4.89, 6.93, 9.88},
    {2.12, 2.97, 3.82, 4.06, 6.36, 9.45}, {1.07, 1.12, 1.20, 1.14, 0.92, 0.72},
    {0.80, 0.70, 0.66, 0.60, 0.53, 0.49},
};

struct FigureSetup {
    const char *name;
    SignalKind kind;
    int n_rx;
    double snr_db;
    bool rv_known;
};

const FigureSetup kFigures[] = {
    {"fig3a", SignalKind::gaussian, 8, 10.0, false},  {"fig3b", SignalKind::gaussian, 8, 10.0, true},
    {"fig3c", SignalKind::gaussian, 16, 10.0, false}, {"fig3d", SignalKind::gaussian, 16, -10.0, false},
    {"fig4a", SignalKind::qpsk, 8, 10.0, false},      {"fig4b", SignalKind::qpsk, 8, 10.0, true},
    {"fig4c", SignalKind::qpsk, 16, 10.0, false},     {"fig4d", SignalKind::qpsk, 16, -10.0, false},
};

}  // namespace

void apply_setting(ExperimentConfig &cfg, const std::string &raw_key, const std::string &raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "n_tx") {
        cfg.n_tx = parse_int<int>(key, value);
    } else if (key == "n_rx") {
        cfg.n_rx = parse_int<int>(key, value);
    } else if (key == "n_paths") {
        cfg.n_paths = parse_int<int>(key, value);
    } else if (key == "snr_db") {
        cfg.snr_db = parse_real(key, value);
    } else if (key == "signal_kind") {
        if (value == "gaussian") {
            cfg.signal_kind = SignalKind::gaussian;
        } else if (value == "qpsk") {
            cfg.signal_kind = SignalKind::qpsk;
        } else {
            throw InvalidArgument("invalid value for signal_kind: '" + value + "' (gaussian or qpsk)");
        }
    } else if (key == "pilot_sizes") {
        cfg.pilot_sizes.clear();
        for (const auto &item : split_list(value)) { cfg.pilot_sizes.push_back(parse_int<int>(key, item)); }
    } else if (key == "test_len") {
        cfg.test_len = parse_int<int>(key, value);
    } else if (key == "episodes") {
        cfg.episodes = parse_int<int>(key, value);
    } else if (key == "tune_episodes") {
        cfg.tune_episodes = parse_int<int>(key, value);
    } else if (key == "impulse_fraction") {
        cfg.impulse_fraction = parse_real(key, value);
    } else if (key == "impulse_max_amplitude") {
        cfg.impulse_max_amplitude = parse_real(key, value);
    } else if (key == "methods") {
        cfg.methods = methods_from(split_list(value));
    } else if (key == "master_seed") {
        cfg.master_seed = parse_int<std::uint64_t>(key, value);
    } else if (key == "rv_known") {
        cfg.rv_known = parse_bool(key, value);
    } else if (key == "jobs") {
        cfg.jobs = parse_int<int>(key, value);
    } else {
        throw InvalidArgument("unknown key '" + key + "'");
    }
}

void apply_override(ExperimentConfig &cfg, const std::string &key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos) { throw InvalidArgument("override '" + key_value + "' is not key=value"); }
    apply_setting(cfg, key_value.substr(0, eq), key_value.substr(eq + 1));
}

ExperimentConfig parse_config_text(const std::string &text, const std::string &source,
                                   const std::vector<std::string> &overrides) {
    ExperimentConfig cfg;
    cfg.methods = methods_from({"wiener"});
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) { line.resize(hash); }
        line = trim(line);
        if (line.empty()) { continue; }
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(line_no) + ": ";
        if (eq == std::string::npos) { throw InvalidArgument(where + "expected key=value, got '" + line + "'"); }
        try {
            apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
        } catch (const InvalidArgument &e) {
            throw InvalidArgument(where + e.what());
        }
    }
    for (const auto &o : overrides) {
        try {
            apply_override(cfg, o);
        } catch (const InvalidArgument &e) {
            throw InvalidArgument("--set " + o + ": " + e.what());
        }
    }
    try {
        cfg.validate();
    } catch (const InvalidArgument &e) {
        throw InvalidArgument(source + ": " + e.what());
    }
    return cfg;
}

ExperimentConfig parse_config(const std::string &path, const std::vector<std::string> &overrides) {
    std::ifstream is(path);
    if (!is) { throw Error("cannot read config file " + path); }
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str(), path, overrides);
}

std::string config_to_text(const ExperimentConfig &cfg) {
    std::ostringstream os;
    os << "n_tx=" << cfg.n_tx << '\n'
       << "n_rx=" << cfg.n_rx << '\n'
       << "n_paths=" << cfg.n_paths << '\n'
       << "snr_db=" << csv::format_double(cfg.snr_db) << '\n'
       << "signal_kind=" << (cfg.signal_kind == SignalKind::qpsk ? "qpsk" : "gaussian") << '\n'
       << "pilot_sizes=" << join_ints(cfg.pilot_sizes) << '\n'
       << "test_len=" << cfg.test_len << '\n'
       << "episodes=" << cfg.episodes << '\n'
       << "tune_episodes=" << cfg.tune_episodes << '\n'
       << "impulse_fraction=" << csv::format_double(cfg.impulse_fraction) << '\n'
       << "impulse_max_amplitude=" << csv::format_double(cfg.impulse_max_amplitude) << '\n';
    os << "methods=";
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) { os << (i ? "," : "") << format_method(cfg.methods[i]); }
    os << '\n'
       << "master_seed=" << cfg.master_seed << '\n'
       << "rv_known=" << (cfg.rv_known ? "true" : "false") << '\n'
       << "jobs=" << cfg.jobs << '\n';
    return os.str();
}

const std::vector<std::string> &preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (int i = 1; i <= 6; ++i) { v.push_back("table" + std::to_string(i)); }
        for (const auto &f : kFigures) { v.emplace_back(f.name); }
        return v;
    }();
    return names;
}

Preset make_preset(const std::string &name) {
    Preset p;
    p.name = name;
    ExperimentConfig &cfg = p.config;
    if (name.rfind("table", 0) == 0 && name.size() == 6 && name[5] >= '1' && name[5] <= '6') {
        const int idx = name[5] - '1';
        cfg.n_tx = 4;
        cfg.n_rx = 8;
        cfg.snr_db = -10.0;
        cfg.signal_kind = SignalKind::gaussian;
        cfg.impulse_fraction = 0.10;
        cfg.impulse_max_amplitude = 1.5;
        cfg.pilot_sizes = {kTablePilots[static_cast<std::size_t>(idx)]};
        cfg.methods = methods_from(kTableMethods);
        for (std::size_t k = 0; k < cfg.methods.size(); ++k) {
            p.reference[{cfg.methods[k].display(), cfg.pilot_sizes[0]}] = kTableMse[k][idx];
        }
        p.description = "impulse-noise scenario, M=4, N=8, SNR -10 dB, pilot size " +
                        std::to_string(cfg.pilot_sizes[0]) + ", 11 beamformers";
        return p;
    }
    for (const auto &f : kFigures) {
        if (name != f.name) { continue; }
        cfg.n_tx = 4;
        cfg.n_rx = f.n_rx;
        cfg.snr_db = f.snr_db;
        cfg.signal_kind = f.kind;
        cfg.rv_known = f.rv_known;
        cfg.impulse_fraction = 0.0;
        cfg.impulse_max_amplitude = 0.0;
        cfg.pilot_sizes = {20, 30, 40, 50, 75, 100};
        cfg.methods = methods_from(kFigureMethods);
        std::ostringstream d;
        d << (f.kind == SignalKind::qpsk ? "QPSK SER" : "Gaussian MSE") << " sweep, N=" << f.n_rx << ", SNR "
          << f.snr_db << " dB, R_v " << (f.rv_known ? "known" : "estimated");
        p.description = d.str();
        return p;
    }
    throw InvalidArgument("unknown preset '" + name + "'");
}

}  // namespace drbf
