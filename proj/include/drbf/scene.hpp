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
#include <limits>
#include <string>
#include <vector>

#include "drbf/types.hpp"

namespace drbf {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Geometry of one point-to-point link: a transmitter, a receiver and the
/// scatterers that each contribute one radio path.
struct ChannelScene {
    Point2 tx_pos{0.0, 0.0};
    Point2 rx_pos{500.0, 450.0};
    std::vector<Point2> scatterers;
    int n_tx = 4;
    int n_rx = 8;
    double carrier_wavelength = 0.1;  // meters
    std::uint64_t rng_seed = 0;

    void validate() const;
};

/// Gaussian background noise at a target SNR plus sparse impulse contamination.
struct NoiseSpec {
    double snr_db = std::numeric_limits<double>::infinity();
    double impulse_fraction = 0.0;
    double impulse_max_amplitude = 0.0;

    void validate() const;
};

/// One block of known pilots and the matching received samples.
struct PilotFrame {
    CMatrix s_block;   ///< M x L
    CMatrix x_block;   ///< N x L
    CMatrix true_h;    ///< N x M
    CMatrix true_r_v;  ///< N x N

    [[nodiscard]] Eigen::Index length() const { return s_block.cols(); }
    void validate() const;
};

enum class SignalKind { gaussian, qpsk };

/// Mixes several integers into an independent 64-bit seed (splitmix64 chain).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// tx at the origin, rx at (500, 450) m, `n_paths` scatterers uniform on [0,500]^2 m.
[[nodiscard]] ChannelScene generate_scene(int n_tx, int n_rx, int n_paths, std::uint64_t seed);

/// Ray-sum channel over half-wavelength uniform linear arrays, normalized to
/// unit average entry power.
[[nodiscard]] CMatrix synthesize_channel(const ChannelScene &scene);

/// M x L block of zero-mean symbols with covariance r_s. QPSK requires a diagonal r_s.
[[nodiscard]] CMatrix generate_signals(SignalKind kind, int m, int l, const CMatrix &r_s, std::uint64_t seed);

struct Transmission {
    CMatrix x_block;  ///< N x L
    CMatrix r_v;      ///< Gaussian-only noise covariance sigma^2 I_N
    std::vector<Eigen::Index> impulse_columns;
};

/// x_i = H s_i + v_i. The Gaussian noise power is chosen from the empirical
/// signal power of this block so that the receive SNR equals noise.snr_db.
[[nodiscard]] Transmission transmit(const CMatrix &h, const CMatrix &s_block, const NoiseSpec &noise, std::uint64_t seed);

/// Same as transmit() with an explicit Gaussian noise variance per antenna.
[[nodiscard]] Transmission transmit_with_variance(const CMatrix &h, const CMatrix &s_block, double noise_variance,
                                                  const NoiseSpec &noise, std::uint64_t seed);

/// sigma^2 giving SNR `snr_db` for average per-antenna receive power Tr(H R_s H^H)/N.
[[nodiscard]] double noise_variance_for_snr(const CMatrix &h, const CMatrix &r_s, double snr_db);

/// Number of impulse-contaminated columns: fraction * L rounded to nearest.
[[nodiscard]] Eigen::Index impulse_count(double fraction, Eigen::Index l);

/// Frame as a CSV container with matrices S, X, H, R_v (see csv_io.hpp).
void save_frame(const std::string &path, const PilotFrame &frame);
[[nodiscard]] PilotFrame load_frame(const std::string &path);

}  // namespace drbf
