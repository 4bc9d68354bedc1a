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

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "drbf/config.hpp"

using namespace drbf;

namespace {

std::string error_of(const std::string &text, const std::vector<std::string> &overrides = {}) {
    try {
        (void)parse_config_text(text, "exp.cfg", overrides);
    } catch (const InvalidArgument &e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("minimal file fills the defaults") {
    const auto cfg = parse_config_text("n_tx=4\nn_rx=8\n");
    CHECK(cfg.n_tx == 4);
    CHECK(cfg.n_rx == 8);
    CHECK(cfg.n_paths == 25);
    CHECK(cfg.episodes == 250);
    CHECK(cfg.test_len == 500);
    CHECK(cfg.snr_db == -10.0);
    CHECK(cfg.impulse_fraction == 0.10);
    CHECK(cfg.impulse_max_amplitude == 1.5);
    CHECK(cfg.signal_kind == SignalKind::gaussian);
    CHECK(cfg.pilot_sizes == std::vector<int>{10});
    REQUIRE(cfg.methods.size() == 1);
    CHECK(cfg.methods[0].name == "wiener");
    CHECK(cfg.master_seed == 1);
    CHECK_FALSE(cfg.rv_known);
}

TEST_CASE("full file with comments and lists") {
    const std::string text =
        "# experiment\n"
        "\n"
        "n_tx = 2   # streams\n"
        "n_rx=6\n"
        "snr_db=10\n"
        "signal_kind=qpsk\n"
        "pilot_sizes=10, 20,40\n"
        "methods=wiener,Loaded=wiener_dl:eps=auto,kernel_dl:eps=0.1;bw=2\n"
        "master_seed=42\n"
        "rv_known=true\n"
        "jobs=2\n"
        "tune_episodes=7\n";
    const auto cfg = parse_config_text(text);
    CHECK(cfg.n_tx == 2);
    CHECK(cfg.snr_db == 10.0);
    CHECK(cfg.signal_kind == SignalKind::qpsk);
    CHECK(cfg.pilot_sizes == std::vector<int>{10, 20, 40});
    REQUIRE(cfg.methods.size() == 3);
    CHECK(cfg.methods[1].display() == "Loaded");
    CHECK(cfg.methods[1].tuned == std::vector<std::string>{"eps"});
    CHECK(cfg.methods[2].params.at("bw") == 2.0);
    CHECK(cfg.master_seed == 42);
    CHECK(cfg.rv_known);
    CHECK(cfg.jobs == 2);
    CHECK(cfg.tune_episodes == 7);
}

TEST_CASE("validation and parse errors name the line and field") {
    CHECK(error_of("episodes=0\n").find("episodes") != std::string::npos);
    const auto unknown = error_of("n_tx=4\nfoo=1\n");
    CHECK(unknown.find("exp.cfg:2") != std::string::npos);
    CHECK(unknown.find("foo") != std::string::npos);
    const auto no_equals = error_of("n_tx=4\n\nn_rx\n");
    CHECK(no_equals.find("exp.cfg:3") != std::string::npos);
    const auto bad_number = error_of("snr_db=loud\n");
    CHECK(bad_number.find("snr_db") != std::string::npos);
    CHECK(bad_number.find("exp.cfg:1") != std::string::npos);
    CHECK_FALSE(error_of("n_tx=2.5\n").empty());
    CHECK_FALSE(error_of("signal_kind=16qam\n").empty());
    CHECK_FALSE(error_of("rv_known=maybe\n").empty());
    CHECK_FALSE(error_of("methods=wiener,unknown\n").empty());
    CHECK_FALSE(error_of("impulse_fraction=2\n").empty());
}

TEST_CASE("overrides take precedence over the file") {
    const auto cfg = parse_config_text("snr_db=-10\nepisodes=5\n", "exp.cfg", {"snr_db=10"});
    CHECK(cfg.snr_db == 10.0);
    CHECK(cfg.episodes == 5);

    // An override can repair a value that is invalid in the file.
    CHECK(parse_config_text("episodes=0\n", "exp.cfg", {"episodes=3"}).episodes == 3);
    CHECK_FALSE(error_of("", {"nonsense"}).empty());
    CHECK_FALSE(error_of("", {"bogus_key=1"}).empty());

    ExperimentConfig direct;
    apply_override(direct, "n_paths=3");
    CHECK(direct.n_paths == 3);
    apply_setting(direct, "snr_db", "inf");
    CHECK(std::isinf(direct.snr_db));
}

TEST_CASE("config text round-trips") {
    auto cfg = parse_config_text(
        "n_rx=16\nsnr_db=2.5\npilot_sizes=3,9\nmethods=wiener,Kernel-DL=kernel_dl:eps=auto;bw=0.5\nrv_known=true\n");
    const auto text = config_to_text(cfg);
    const auto back = parse_config_text(text);
    CHECK(config_to_text(back) == text);
    CHECK(back.n_rx == 16);
    CHECK(back.snr_db == 2.5);
    CHECK(back.methods[1].display() == "Kernel-DL");
    CHECK(back.methods[1].params.at("bw") == 0.5);
    CHECK(back.methods[1].tuned == std::vector<std::string>{"eps"});
}

TEST_CASE("parse_config reads files") {
    {
        std::ofstream os("config_test.cfg");
        os << "n_tx=3\nepisodes=9\n";
    }
    const auto cfg = parse_config("config_test.cfg", {"episodes=4"});
    CHECK(cfg.n_tx == 3);
    CHECK(cfg.episodes == 4);
    std::remove("config_test.cfg");
    CHECK_THROWS_AS((void)parse_config("missing.cfg"), Error);
}

TEST_CASE("table presets") {
    const std::vector<int> sizes{10, 15, 20, 25, 50, 100};
    for (int t = 1; t <= 6; ++t) {
        const auto p = make_preset("table" + std::to_string(t));
        CAPTURE(p.name);
        CHECK(p.config.n_tx == 4);
        CHECK(p.config.n_rx == 8);
        CHECK(p.config.snr_db == -10.0);
        CHECK(p.config.impulse_fraction == 0.10);
        CHECK(p.config.impulse_max_amplitude == 1.5);
        CHECK(p.config.episodes == 250);
        CHECK(p.config.pilot_sizes == std::vector<int>{sizes[t - 1]});
        CHECK(p.config.methods.size() == 11);
        CHECK(p.reference.count({"Wiener", sizes[t - 1]}) == 1);
        CHECK_NOTHROW(p.config.validate());
    }
    CHECK(make_preset("table1").reference.at({"Wiener", 10}) == 3.30);
    CHECK(make_preset("table1").reference.at({"Kernel-DL", 10}) == 0.80);
}

TEST_CASE("figure presets") {
    const auto a = make_preset("fig3a");
    CHECK(a.config.n_rx == 8);
    CHECK(a.config.snr_db == 10.0);
    CHECK_FALSE(a.config.rv_known);
    CHECK(a.config.impulse_fraction == 0.0);
    CHECK(a.config.signal_kind == SignalKind::gaussian);
    CHECK(a.config.pilot_sizes.size() > 1);

    CHECK(make_preset("fig3b").config.rv_known);
    CHECK(make_preset("fig3c").config.n_rx == 16);
    CHECK(make_preset("fig3d").config.snr_db == -10.0);
    CHECK(make_preset("fig4a").config.signal_kind == SignalKind::qpsk);
    CHECK(make_preset("fig4a").config.metric_name() == "ser");

    CHECK(preset_names().size() == 14);
    for (const auto &name : preset_names()) { CHECK(make_preset(name).name == name); }
    CHECK_THROWS_AS((void)make_preset("table7"), InvalidArgument);
}
