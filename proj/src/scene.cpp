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

#include "drbf/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "drbf/linalg.hpp"

namespace drbf {

namespace {

constexpr double kMinPathLength = 1e-9;  // meters

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double distance(const Point2 &a, const Point2 &b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Half-wavelength ULA along the x axis; `angle` is measured from that axis.
CVector steering(int n, double angle) {
    CVector a(n);
    for (int k = 0; k < n; ++k) { a(k) = std::polar(1.0, std::numbers::pi * k * std::cos(angle)); }
    return a;
}

// Circularly-symmetric CN(0, 1) entries.
CMatrix standard_complex_normal(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix z(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = {re, im};
        }
    }
    return z;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(base) ^ a) ^ (b * 0xd1342543de82ef95ULL));
}

void ChannelScene::validate() const {
    require(n_tx >= 1 && n_rx >= 1, "ChannelScene: antenna counts must be >= 1");
    require(!scatterers.empty(), "ChannelScene: at least one scatterer is required");
    require(carrier_wavelength > 0.0 && std::isfinite(carrier_wavelength), "ChannelScene: wavelength must be > 0");
    auto finite = [](const Point2 &p) { return std::isfinite(p.x) && std::isfinite(p.y); };
    require(finite(tx_pos) && finite(rx_pos), "ChannelScene: positions must be finite");
    require(std::all_of(scatterers.begin(), scatterers.end(), finite), "ChannelScene: scatterers must be finite");
}

void NoiseSpec::validate() const {
    require(!std::isnan(snr_db), "NoiseSpec: snr_db is NaN");
    require(impulse_fraction >= 0.0 && impulse_fraction <= 1.0, "NoiseSpec: impulse_fraction must lie in [0,1]");
    require(impulse_max_amplitude >= 0.0, "NoiseSpec: impulse_max_amplitude must be >= 0");
}

void PilotFrame::validate() const {
    require(s_block.cols() == x_block.cols(), "PilotFrame: S and X must share the column count");
    require(true_h.rows() == x_block.rows() && true_h.cols() == s_block.rows(), "PilotFrame: H must be N x M");
    require(true_r_v.rows() == x_block.rows() && true_r_v.cols() == x_block.rows(), "PilotFrame: R_v must be N x N");
}

ChannelScene generate_scene(int n_tx, int n_rx, int n_paths, std::uint64_t seed) {
    require(n_tx >= 1 && n_rx >= 1 && n_paths >= 1, "generate_scene: counts must be >= 1");
    ChannelScene scene;
    scene.n_tx = n_tx;
    scene.n_rx = n_rx;
    scene.rng_seed = seed;
    std::mt19937_64 rng(derive_seed(seed, 0x5ca7));
    std::uniform_real_distribution<double> coord(0.0, 500.0);
    scene.scatterers.reserve(static_cast<std::size_t>(n_paths));
    for (int p = 0; p < n_paths; ++p) {
        const double x = coord(rng);
        const double y = coord(rng);
        scene.scatterers.push_back({x, y});
    }
    return scene;
}

CMatrix synthesize_channel(const ChannelScene &scene) {
    scene.validate();
    CMatrix h = CMatrix::Zero(scene.n_rx, scene.n_tx);
    for (const auto &sc : scene.scatterers) {
        const double d_tx = distance(scene.tx_pos, sc);
        const double d_rx = distance(sc, scene.rx_pos);
        if (d_tx < kMinPathLength || d_rx < kMinPathLength) {
            throw InvalidArgument("synthesize_channel: scatterer coincides with an antenna array (zero-length path)");
        }
        const double departure = std::atan2(sc.y - scene.tx_pos.y, sc.x - scene.tx_pos.x);
        const double arrival = std::atan2(sc.y - scene.rx_pos.y, sc.x - scene.rx_pos.x);
        const double phase = -2.0 * std::numbers::pi * (d_tx + d_rx) / scene.carrier_wavelength;
        const Complex gain = std::polar(1.0 / (d_tx * d_rx), phase);
        h += gain * steering(scene.n_rx, arrival) * steering(scene.n_tx, departure).adjoint();
    }
    const double mean_power = h.squaredNorm() / static_cast<double>(h.size());
    require(mean_power > 0.0, "synthesize_channel: paths cancel exactly");
    return h / std::sqrt(mean_power);
}

CMatrix generate_signals(SignalKind kind, int m, int l, const CMatrix &r_s, std::uint64_t seed) {
    require(m >= 1 && l >= 0, "generate_signals: need m >= 1 and l >= 0");
    require(r_s.rows() == m && r_s.cols() == m, "generate_signals: r_s must be M x M");
    if (!linalg::is_psd(r_s)) { throw InvalidArgument("generate_signals: r_s must be Hermitian PSD"); }
    std::mt19937_64 rng(derive_seed(seed, 0x516));
    if (kind == SignalKind::gaussian) {
        return linalg::sqrt_psd(r_s) * standard_complex_normal(m, l, rng);
    }
    const CMatrix off = r_s - CMatrix(r_s.diagonal().asDiagonal());
    if (off.size() && off.cwiseAbs().maxCoeff() > 1e-12) {
        throw InvalidArgument("generate_signals: QPSK requires a diagonal r_s (independent streams)");
    }
    std::bernoulli_distribution coin(0.5);
    CMatrix s(m, l);
    for (Eigen::Index j = 0; j < l; ++j) {
        for (Eigen::Index i = 0; i < m; ++i) {
            const double scale = std::sqrt(std::max(r_s(i, i).real(), 0.0) / 2.0);
            const double re = coin(rng) ? scale : -scale;
            const double im = coin(rng) ? scale : -scale;
            s(i, j) = {re, im};
        }
    }
    return s;
}

Eigen::Index impulse_count(double fraction, Eigen::Index l) {
    return static_cast<Eigen::Index>(std::llround(fraction * static_cast<double>(l)));
}

double noise_variance_for_snr(const CMatrix &h, const CMatrix &r_s, double snr_db) {
    require(r_s.rows() == h.cols() && r_s.cols() == h.cols(), "noise_variance_for_snr: R_s must be M x M");
    if (std::isinf(snr_db) && snr_db > 0) { return 0.0; }
    const double power = linalg::rtrace(h * r_s * h.adjoint()) / static_cast<double>(h.rows());
    return power / std::pow(10.0, snr_db / 10.0);
}

Transmission transmit_with_variance(const CMatrix &h, const CMatrix &s_block, double noise_variance,
                                    const NoiseSpec &noise, std::uint64_t seed) {
    require(h.cols() == s_block.rows(), "transmit: H columns must match S rows");
    require(noise_variance >= 0.0 && std::isfinite(noise_variance), "transmit: noise variance must be finite and >= 0");
    noise.validate();
    const Eigen::Index n = h.rows();
    const Eigen::Index l = s_block.cols();

    Transmission out;
    out.x_block = h * s_block;
    out.r_v = CMatrix::Identity(n, n) * noise_variance;
    if (noise_variance > 0.0) {
        std::mt19937_64 rng(derive_seed(seed, 0x6a55));
        out.x_block += std::sqrt(noise_variance) * standard_complex_normal(n, l, rng);
    }

    const Eigen::Index count = impulse_count(noise.impulse_fraction, l);
    if (count > 0) {
        std::mt19937_64 rng(derive_seed(seed, 0x1a9));
        std::vector<Eigen::Index> columns(static_cast<std::size_t>(l));
        std::iota(columns.begin(), columns.end(), Eigen::Index{0});
        std::shuffle(columns.begin(), columns.end(), rng);
        columns.resize(static_cast<std::size_t>(count));
        std::sort(columns.begin(), columns.end());
        const double a = noise.impulse_max_amplitude;
        std::uniform_real_distribution<double> uniform(-a, a);
        for (const auto col : columns) {
            for (Eigen::Index i = 0; i < n; ++i) {
                const double re = uniform(rng);
                const double im = uniform(rng);
                out.x_block(i, col) += Complex(re, im);
            }
        }
        out.impulse_columns = std::move(columns);
    }
    return out;
}

Transmission transmit(const CMatrix &h, const CMatrix &s_block, const NoiseSpec &noise, std::uint64_t seed) {
    require(h.cols() == s_block.rows(), "transmit: H columns must match S rows");
    noise.validate();
    double variance = 0.0;
    if (!(std::isinf(noise.snr_db) && noise.snr_db > 0) && s_block.cols() > 0) {
        const double power = (h * s_block).squaredNorm() / static_cast<double>(h.rows() * s_block.cols());
        variance = power / std::pow(10.0, noise.snr_db / 10.0);
    }
    return transmit_with_variance(h, s_block, variance, noise, seed);
}

}  // namespace drbf
