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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drbf/moments.hpp"
#include "drbf/scene.hpp"

namespace drbf {

/// One beamformer to evaluate: a registered method name plus its parameters.
/// Parameters listed in `tuned` are chosen by tune_parameter before evaluation.
struct MethodSpec {
    std::string name;
    std::map<std::string, double> params;
    std::vector<std::string> tuned;
    std::string label;  ///< display name; defaults to `name`

    [[nodiscard]] double param(const std::string &key, double fallback) const;
    [[nodiscard]] const std::string &display() const { return label.empty() ? name : label; }
};

/// "name", "name:key=value;key=value", "name:key=auto" or "Label=name:...".
/// Throws InvalidArgument.
[[nodiscard]] MethodSpec parse_method(const std::string &text);
[[nodiscard]] std::string format_method(const MethodSpec &m);

struct MethodInfo {
    std::string name;
    std::string description;
    std::map<std::string, double> defaults;
    std::map<std::string, std::vector<double>> tuning_grid;
};

/// Every method the harness can fit, in display order.
[[nodiscard]] const std::vector<MethodInfo> &method_registry();
[[nodiscard]] const MethodInfo &method_info(const std::string &name);

struct ExperimentConfig {
    int n_tx = 4;
    int n_rx = 8;
    int n_paths = 25;
    double snr_db = -10.0;
    SignalKind signal_kind = SignalKind::gaussian;
    std::vector<int> pilot_sizes{10};
    int test_len = 500;
    int episodes = 250;
    double impulse_fraction = 0.10;
    double impulse_max_amplitude = 1.5;
    std::vector<MethodSpec> methods;
    std::uint64_t master_seed = 1;
    /// Channel-model beamformers use the true Gaussian noise covariance instead of its estimate.
    bool rv_known = false;
    int tune_episodes = 50;
    int jobs = 1;

    void validate() const;
    [[nodiscard]] NoiseSpec noise() const;
    [[nodiscard]] std::string metric_name() const { return signal_kind == SignalKind::qpsk ? "ser" : "mse"; }
};

/// ||S - S_hat||_F^2 / (M L).
[[nodiscard]] double mse_metric(const CMatrix &s_true, const CMatrix &s_hat);

/// Fraction of entries whose nearest QPSK point differs from the transmitted one.
[[nodiscard]] double ser_metric(const CMatrix &s_true_qpsk, const CMatrix &s_hat);

/// Pilots and test block of one Monte-Carlo episode.
struct EpisodeData {
    PilotFrame pilots;
    CMatrix s_test;
    CMatrix x_test;
    double noise_variance = 0.0;
};

/// Fresh scene, channel, pilots and test block; a pure function of its arguments.
[[nodiscard]] EpisodeData generate_episode(const ExperimentConfig &cfg, int pilot_size, std::uint64_t episode_seed);

/// Trained receiver: maps an N x P received block to M x P estimates.
using Receiver = std::function<CMatrix(const CMatrix &)>;

/// Fits one method on the pilot frame alone (true R_v is used only when cfg.rv_known).
[[nodiscard]] Receiver fit_method(const MethodSpec &method, const PilotFrame &pilots, const ExperimentConfig &cfg);

struct ResultRow {
    std::string method;
    std::string params;  ///< parameter values used, "key=value;..."
    int pilot_size = 0;
    std::string metric_name;
    double metric_value = 0.0;  ///< NaN when no episode succeeded
    double metric_stderr = 0.0;
    double train_time_s = 0.0;
    int episodes_ok = 0;
    int episodes_total = 0;
    std::string error;  ///< first failure message, if any
};

/// One row per configured method; failed fits have episodes_ok = 0.
[[nodiscard]] std::vector<ResultRow> run_episode(const ExperimentConfig &cfg, int pilot_size,
                                                 std::uint64_t episode_seed);

/// Seed of evaluation episode `index`; tuning episodes use a disjoint stream.
[[nodiscard]] std::uint64_t evaluation_seed(std::uint64_t master_seed, int index);
[[nodiscard]] std::uint64_t tuning_seed(std::uint64_t master_seed, int index);

/// Mean metric and fit time per (pilot size, method) over cfg.episodes episodes.
/// Methods with tuned parameters are tuned per pilot size first.
[[nodiscard]] std::vector<ResultRow> run_experiment(const ExperimentConfig &cfg);

/// Same, over an explicit list of episode seeds and with no tuning step.
[[nodiscard]] std::vector<ResultRow> run_episodes(const ExperimentConfig &cfg, int pilot_size,
                                                  const std::vector<std::uint64_t> &seeds);

struct TuneResult {
    std::map<std::string, double> best;  ///< chosen value for every tuned key
    double best_metric = 0.0;
    std::vector<std::pair<std::map<std::string, double>, double>> evaluated;
};

/// Grid search over the product of `grids` on tuning episodes; lowest mean
/// metric wins and ties go to the lexicographically smaller parameter vector.
/// Throws Error when every grid point fails.
[[nodiscard]] TuneResult tune_parameter(const ExperimentConfig &cfg, const MethodSpec &method, int pilot_size,
                                        const std::map<std::string, std::vector<double>> &grids);

/// Single-key convenience form.
[[nodiscard]] double tune_parameter(const ExperimentConfig &cfg, const MethodSpec &method, int pilot_size,
                                    const std::string &key, const std::vector<double> &grid);

/// Rows as CSV: method,pilot_size,metric_name,metric_value,train_time_s,episodes_ok
/// plus metric_stderr and, when `reference` is non-empty, published_value.
void write_results_csv(const std::string &path, const std::vector<ResultRow> &rows,
                       const std::map<std::pair<std::string, int>, double> &reference = {});

/// Gnuplot script plotting metric against pilot size, one line per method.
void write_plot_script(const std::string &path, const std::string &csv_name, const std::vector<ResultRow> &rows);

}  // namespace drbf
