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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "doctest.h"
#include "drbf/scene.hpp"
#include "helpers.hpp"

using namespace drbf;
using namespace drbf::testing;

namespace {

double singular_ratio(const CMatrix &h) {
    Eigen::JacobiSVD<CMatrix> svd(h);
    const auto &sv = svd.singularValues();
    return sv(sv.size() - 1) / sv(0);
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("generate_scene places scatterers in the square") {
    const auto scene = generate_scene(4, 8, 25, 17);
    CHECK(scene.scatterers.size() == 25);
    CHECK(scene.tx_pos.x == 0.0);
    CHECK(scene.tx_pos.y == 0.0);
    CHECK(scene.rx_pos.x == 500.0);
    CHECK(scene.rx_pos.y == 450.0);
    for (const auto &p : scene.scatterers) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 500.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= 500.0);
    }
}

TEST_CASE("generate_scene is deterministic per seed") {
    const auto a = generate_scene(4, 8, 25, 99);
    const auto b = generate_scene(4, 8, 25, 99);
    const auto c = generate_scene(4, 8, 25, 100);
    bool same = true;
    bool differs = false;
    for (std::size_t i = 0; i < a.scatterers.size(); ++i) {
        same = same && a.scatterers[i].x == b.scatterers[i].x && a.scatterers[i].y == b.scatterers[i].y;
        differs = differs || a.scatterers[i].x != c.scatterers[i].x;
    }
    CHECK(same);
    CHECK(differs);
    CHECK(synthesize_channel(a) == synthesize_channel(b));
}

TEST_CASE("generate_scene rejects empty counts") {
    CHECK_THROWS_AS((void)generate_scene(0, 8, 25, 1), InvalidArgument);
    CHECK_THROWS_AS((void)generate_scene(4, 8, 0, 1), InvalidArgument);
}

TEST_CASE("single-path channel has rank one") {
    const auto scene = generate_scene(4, 8, 1, 5);
    const CMatrix h = synthesize_channel(scene);
    CHECK(singular_ratio(h) <= 1e-8);
}

TEST_CASE("25-path channels have full column rank") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const CMatrix h = synthesize_channel(generate_scene(4, 8, 25, seed));
        CHECK(h.rows() == 8);
        CHECK(h.cols() == 4);
        CHECK(singular_ratio(h) > 0.0);
        CHECK(std::abs(h.squaredNorm() / 32.0 - 1.0) <= 1e-10);
    }
}

TEST_CASE("synthesize_channel rejects a scatterer on an endpoint") {
    auto scene = generate_scene(2, 2, 3, 1);
    scene.scatterers[1] = scene.tx_pos;
    CHECK_THROWS_AS((void)synthesize_channel(scene), InvalidArgument);
    scene.scatterers[1] = scene.rx_pos;
    CHECK_THROWS_AS((void)synthesize_channel(scene), InvalidArgument);
}

TEST_CASE("Gaussian signals have the requested covariance") {
    Rng rng(1);
    const CMatrix r_s = random_psd(rng, 3);
    const CMatrix s = generate_signals(SignalKind::gaussian, 3, 100000, r_s, 7);
    const CMatrix sample = s * s.adjoint() / 100000.0;
    CHECK(rel_err(sample, r_s) <= 0.05);

    const CMatrix s_unit = generate_signals(SignalKind::gaussian, 4, 100000, CMatrix::Identity(4, 4), 8);
    CHECK(rel_err(CMatrix(s_unit * s_unit.adjoint() / 100000.0), CMatrix::Identity(4, 4)) <= 0.05);
}

TEST_CASE("QPSK symbols sit on the scaled constellation") {
    CMatrix r_s = CMatrix::Zero(3, 3);
    r_s.diagonal() << 1.0, 4.0, 0.25;
    const CMatrix s = generate_signals(SignalKind::qpsk, 3, 2000, r_s, 3);
    for (Eigen::Index i = 0; i < 3; ++i) {
        const double amp = std::sqrt(r_s(i, i).real() / 2.0);
        for (Eigen::Index j = 0; j < s.cols(); ++j) {
            CHECK(std::abs(std::abs(s(i, j).real()) - amp) <= 1e-15);
            CHECK(std::abs(std::abs(s(i, j).imag()) - amp) <= 1e-15);
        }
        CHECK(std::abs(s.row(i).cwiseAbs2().mean() - r_s(i, i).real()) <= 1e-12);
    }
}

TEST_CASE("generate_signals edge cases") {
    CHECK(generate_signals(SignalKind::gaussian, 2, 5, CMatrix::Zero(2, 2), 1) == CMatrix::Zero(2, 5));
    CHECK(generate_signals(SignalKind::qpsk, 2, 5, CMatrix::Zero(2, 2), 1) == CMatrix::Zero(2, 5));
    CMatrix coupled = CMatrix::Identity(2, 2);
    coupled(0, 1) = coupled(1, 0) = 0.5;
    CHECK_THROWS_AS((void)generate_signals(SignalKind::qpsk, 2, 5, coupled, 1), InvalidArgument);
}

TEST_CASE("noiseless transmit is exact") {
    Rng rng(2);
    const CMatrix h = random_complex(rng, 6, 3);
    const CMatrix s = random_complex(rng, 3, 40);
    NoiseSpec none;
    const auto tx = transmit(h, s, none, 11);
    CHECK(tx.x_block == h * s);
    CHECK(tx.r_v == CMatrix::Zero(6, 6));
    CHECK(tx.impulse_columns.empty());
}

TEST_CASE("transmit is linear in the signal when noiseless") {
    Rng rng(3);
    const CMatrix h = random_complex(rng, 4, 2);
    const CMatrix s1 = random_complex(rng, 2, 10);
    const CMatrix s2 = random_complex(rng, 2, 10);
    NoiseSpec none;
    const CMatrix sum = transmit(h, s1 + s2, none, 1).x_block;
    const CMatrix parts = transmit(h, s1, none, 2).x_block + transmit(h, s2, none, 3).x_block;
    CHECK(max_abs(sum - parts) <= 1e-12);
}

TEST_CASE("impulse noise hits the rounded share of columns") {
    Rng rng(4);
    const CMatrix h = random_complex(rng, 4, 2);
    const CMatrix s = random_complex(rng, 2, 1000);
    NoiseSpec spec;
    spec.impulse_fraction = 0.10;
    spec.impulse_max_amplitude = 1.5;
    const auto tx = transmit(h, s, spec, 5);
    CHECK(tx.impulse_columns.size() == 100);
    const std::set<Eigen::Index> unique(tx.impulse_columns.begin(), tx.impulse_columns.end());
    CHECK(unique.size() == 100);

    const CMatrix diff = tx.x_block - h * s;
    for (Eigen::Index j = 0; j < diff.cols(); ++j) {
        const bool hit = unique.count(j) > 0;
        if (!hit) { CHECK(diff.col(j).norm() == 0.0); }
        for (Eigen::Index i = 0; i < diff.rows(); ++i) {
            CHECK(std::abs(diff(i, j).real()) <= 1.5);
            CHECK(std::abs(diff(i, j).imag()) <= 1.5);
        }
    }
    CHECK(impulse_count(0.10, 1000) == 100);
    CHECK(impulse_count(0.10, 15) == 2);
    CHECK(impulse_count(0.10, 10) == 1);
    CHECK(impulse_count(0.0, 10) == 0);
}

TEST_CASE("empirical SNR matches the request") {
    const CMatrix h = synthesize_channel(generate_scene(4, 8, 25, 21));
    const CMatrix s = generate_signals(SignalKind::gaussian, 4, 100000, CMatrix::Identity(4, 4), 22);
    for (double snr : {-10.0, 0.0, 10.0}) {
        NoiseSpec spec;
        spec.snr_db = snr;
        const auto tx = transmit(h, s, spec, 23);
        const CMatrix clean = h * s;
        const double signal = clean.squaredNorm();
        const double noise = (tx.x_block - clean).squaredNorm();
        const double measured = 10.0 * std::log10(signal / noise);
        CHECK(std::abs(measured - snr) <= 0.2);
        CHECK(std::abs(tx.r_v(0, 0).real() - noise / (8.0 * 100000.0)) / tx.r_v(0, 0).real() <= 0.05);
    }
}

TEST_CASE("noise_variance_for_snr uses model power") {
    CMatrix h = CMatrix::Identity(2, 2);
    CHECK(std::abs(noise_variance_for_snr(h, CMatrix::Identity(2, 2), 0.0) - 1.0) <= 1e-15);
    CHECK(std::abs(noise_variance_for_snr(h, CMatrix::Identity(2, 2), 10.0) - 0.1) <= 1e-15);
    CHECK(noise_variance_for_snr(h, CMatrix::Identity(2, 2), std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("transmit is reproducible") {
    Rng rng(6);
    const CMatrix h = random_complex(rng, 4, 2);
    const CMatrix s = random_complex(rng, 2, 50);
    NoiseSpec spec;
    spec.snr_db = 5.0;
    spec.impulse_fraction = 0.2;
    spec.impulse_max_amplitude = 1.0;
    CHECK(transmit(h, s, spec, 9).x_block == transmit(h, s, spec, 9).x_block);
    CHECK(transmit(h, s, spec, 9).x_block != transmit(h, s, spec, 10).x_block);
}

TEST_CASE("NoiseSpec and PilotFrame validation") {
    NoiseSpec bad;
    bad.impulse_fraction = 1.5;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad.impulse_fraction = 0.1;
    bad.impulse_max_amplitude = -1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);

    Rng rng(7);
    auto frame = random_frame(rng, 4, 2, 10, 0.1);
    CHECK_NOTHROW(frame.validate());
    frame.x_block = random_complex(rng, 4, 9);
    CHECK_THROWS_AS(frame.validate(), InvalidArgument);
}

TEST_CASE("derive_seed separates streams") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 50; ++a) {
        for (std::uint64_t b = 0; b < 4; ++b) { seen.insert(derive_seed(1, a, b)); }
    }
    CHECK(seen.size() == 200);
    CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
    CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
}

TEST_CASE("frames round-trip through CSV bit-exactly") {
    Rng rng(8);
    const auto frame = random_frame(rng, 5, 3, 12, 0.3);
    const std::string path = "scene_frame_roundtrip.csv";
    save_frame(path, frame);
    const auto back = load_frame(path);
    CHECK(back.s_block == frame.s_block);
    CHECK(back.x_block == frame.x_block);
    CHECK(back.true_h == frame.true_h);
    CHECK(back.true_r_v == frame.true_r_v);

    save_frame(path + ".2", back);
    CHECK(slurp(path) == slurp(path + ".2"));
    std::remove(path.c_str());
    std::remove((path + ".2").c_str());
    CHECK_THROWS_AS((void)load_frame("does_not_exist.csv"), Error);
}
