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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "drbf/harness.hpp"

namespace drbf {

// Flat key=value experiment files. '#' starts a comment, blank lines are
// ignored, lists are comma-separated. Keys:
//
//   n_tx, n_rx, n_paths            counts (4, 8, 25)
//   snr_db                         receive SNR in dB (-10)
//   signal_kind                    gaussian | qpsk (gaussian)
//   pilot_sizes                    e.g. 10,15,20 (10)
//   test_len                       non-pilot symbols per episode (500)
//   episodes                       Monte-Carlo episodes (250)
//   tune_episodes                  episodes used to tune "auto" parameters (50)
//   impulse_fraction               share of impulse-hit columns (0.10)
//   impulse_max_amplitude          uniform impulse amplitude (1.5)
//   methods                        e.g. wiener,wiener_dl:eps=auto,kernel_dl:eps=0.1;bw=2
//   master_seed                    unsigned integer (1)
//   rv_known                       true | false (false)
//   jobs                           worker threads, 0 = all cores (1)

/// Parses file contents; `source` names the input in error messages.
/// `overrides` ("key=value") are applied after the file and before validation.
[[nodiscard]] ExperimentConfig parse_config_text(const std::string &text, const std::string &source = "<config>",
                                                 const std::vector<std::string> &overrides = {});
[[nodiscard]] ExperimentConfig parse_config(const std::string &path, const std::vector<std::string> &overrides = {});

/// Applies one "key=value" setting; used for command-line overrides.
void apply_setting(ExperimentConfig &cfg, const std::string &key, const std::string &value);
void apply_override(ExperimentConfig &cfg, const std::string &key_value);

/// Round-trippable text form (every key, one per line).
[[nodiscard]] std::string config_to_text(const ExperimentConfig &cfg);

struct Preset {
    std::string name;
    std::string description;
    ExperimentConfig config;
    /// Published value per (method label, pilot size), for the comparison column.
    std::map<std::pair<std::string, int>, double> reference;
};

[[nodiscard]] const std::vector<std::string> &preset_names();
/// Throws InvalidArgument for an unknown name.
[[nodiscard]] Preset make_preset(const std::string &name);

}  // namespace drbf
