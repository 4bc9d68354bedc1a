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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "drbf/dro.hpp"
#include "drbf/linalg.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace drbf;
using namespace drbf::testing;

namespace {

/// Squared Bures distance of 2 x 2 PSD matrices from Tr sqrt(M) = sqrt(Tr M + 2 sqrt(det M)),
/// applied to the spectrum of A B (the same as that of A^{1/2} B A^{1/2}).
double bures_2x2(const CMatrix &a, const CMatrix &b) {
    const CMatrix ab = a * b;
    const double tr = ab.trace().real();
    const double det = std::max(0.0, ab.determinant().real());
    const double fidelity = std::sqrt(std::max(0.0, tr + 2.0 * std::sqrt(det)));
    return std::max(0.0, a.trace().real() + b.trace().real() - 2.0 * fidelity);
}

bool psd_2x2(const CMatrix &r) {
    return r(0, 0).real() >= 0.0 && r(1, 1).real() >= 0.0 && r.determinant().real() >= 0.0;
}

CMatrix scalar(double v) { return CMatrix::Constant(1, 1, Complex(v, 0.0)); }

}  // namespace

TEST_CASE("psd_project") {
    Rng rng(1);
    const CMatrix p = random_psd(rng, 4);
    CHECK(max_abs(psd_project(p) - p) <= 1e-12);

    CMatrix d = CMatrix::Zero(2, 2);
    d.diagonal() << 1.0, -1.0;
    CMatrix expected = CMatrix::Zero(2, 2);
    expected(0, 0) = 1.0;
    CHECK(max_abs(psd_project(d) - expected) <= 1e-15);

    for (int t = 0; t < 20; ++t) {
        const CMatrix a = random_hermitian(rng, 4);
        const CMatrix proj = psd_project(a);
        CHECK(linalg::is_psd(proj));
        const double dist = (a - proj).norm();
        for (int k = 0; k < 100; ++k) { CHECK(dist <= (a - random_psd(rng, 4, 1 + k % 5)).norm() + 1e-12); }
    }
}

TEST_CASE("bures_distance_sq agrees with the 2x2 closed form") {
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        const CMatrix a = random_psd(rng, 2, 2 + t % 3);
        const CMatrix b = random_psd(rng, 2);
        CHECK(std::abs(bures_distance_sq(a, b) - bures_2x2(a, b)) <= 1e-9);
    }
    // Rank one A = v v^H: the fidelity term is sqrt(v^H B v). Rounding leaves
    // eigenvalues of order 1e-16 in the null space, which the square root lifts to 1e-8.
    for (int t = 0; t < 20; ++t) {
        const CMatrix v = random_complex(rng, 3, 1);
        const CMatrix b = random_psd(rng, 3);
        const double fidelity = std::sqrt((v.adjoint() * b * v)(0, 0).real());
        const double oracle = v.squaredNorm() + b.trace().real() - 2.0 * fidelity;
        CHECK(std::abs(bures_distance_sq(v * v.adjoint(), b) - oracle) <= 1e-9 * 1e3 * (1.0 + oracle));
    }
    const CMatrix a = random_psd(rng, 3);
    CHECK(bures_distance_sq(a, a) <= 1e-12);
    CHECK(std::abs(bures_distance_sq(scalar(1.0), scalar(4.0)) - 1.0) <= 1e-12);
}

TEST_CASE("F-ball trace maximization with zero radius") {
    Rng rng(3);
    const CMatrix r_hat = random_psd(rng, 3);
    const auto sol = solve_fnorm_trace_max(r_hat, 0.0);
    CHECK(max_abs(sol.r_star - r_hat) <= 1e-12);
    CHECK(sol.converged);
}

TEST_CASE("F-ball diagonal-shift candidate survives brute force at d = 2") {
    Rng rng(4);
    for (int t = 0; t < 3; ++t) {
        const CMatrix r_hat = t == 0 ? CMatrix(CMatrix::Identity(2, 2)) : random_psd(rng, 2, t);
        const double eps = 1.0;
        const double candidate = r_hat.trace().real() + std::sqrt(2.0) * eps;
        const double brute = brute_force_fnorm(rng, r_hat, eps, 100000);
        CHECK(brute <= candidate + 1e-12);
        CHECK(std::abs(brute - candidate) / candidate <= 1e-3);

        const auto sol = solve_fnorm_trace_max(r_hat, eps);
        CHECK(std::abs(sol.objective - brute) / brute <= 1e-3);
        CHECK(sol.objective >= brute - 1e-9);
        CHECK(max_abs(sol.r_star - (r_hat + eps / std::sqrt(2.0) * CMatrix::Identity(2, 2))) <= 1e-6);
        CHECK((sol.r_star - r_hat).norm() <= eps + 1e-8);
        CHECK(linalg::min_eigenvalue(sol.r_star) >= -1e-8);
    }
}

TEST_CASE("F-ball solver beats random feasible points at d = 3") {
    Rng rng(5);
    const CMatrix r_hat = random_psd(rng, 3, 2);
    const double eps = 0.8;
    const auto sol = solve_fnorm_trace_max(r_hat, eps);
    CHECK(sol.objective >= brute_force_fnorm(rng, r_hat, eps, 10000));
    CHECK(sol.constraint_residual <= 1e-8);
}

TEST_CASE("Bures scalar case matches a 1-D grid search") {
    const double r_hat = 1.0;
    const double eps = 0.5;
    const double best = bures_scalar_grid(r_hat, eps, 4.0, 4000000);
    CHECK(std::abs(best - 2.25) <= 1e-5);
    const auto sol = solve_wasserstein_trace_max(scalar(r_hat), eps);
    CHECK(std::abs(sol.r_star(0, 0).real() - best) <= 1e-4);
    CHECK(sol.converged);
}

TEST_CASE("Bures ball with zero radius or zero center") {
    Rng rng(6);
    const CMatrix r_hat = random_psd(rng, 3);
    CHECK(max_abs(solve_wasserstein_trace_max(r_hat, 0.0).r_star - r_hat) <= 1e-8);
    CHECK(max_abs(solve_wasserstein_trace_max(CMatrix::Zero(2, 2), 0.0).r_star) == 0.0);

    // Around zero the ball is {R : Tr R <= eps^2}.
    const auto sol = solve_wasserstein_trace_max(CMatrix::Zero(2, 2), 0.7);
    CHECK(std::abs(sol.objective - 0.49) <= 1e-6);
}

TEST_CASE("Bures scaled candidate survives sampling at d = 2") {
    Rng rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 5; ++t) {
        const CMatrix r_hat = random_psd(rng, 2, 1 + t % 3);
        const double eps = 0.3 + 0.2 * t;
        const double tr = r_hat.trace().real();
        const CMatrix candidate = std::pow(1.0 + eps / std::sqrt(tr), 2) * r_hat;
        CHECK(bures_2x2(candidate, r_hat) <= eps * eps + 1e-9);

        const CMatrix root = linalg::sqrt_psd(r_hat);
        double sampled = -INFINITY;
        for (int k = 0; k < 20000; ++k) {
            const CMatrix dir = random_complex(rng, 2, 2);
            const CMatrix y = root + eps * std::sqrt(u(rng)) * dir / dir.norm();
            const CMatrix r = y * y.adjoint();
            if (bures_2x2(r, r_hat) <= eps * eps) { sampled = std::max(sampled, r.trace().real()); }
            const CMatrix near = candidate + 0.05 * eps * unit_hermitian(rng, 2);
            if (psd_2x2(near) && bures_2x2(near, r_hat) <= eps * eps) {
                sampled = std::max(sampled, near.trace().real());
            }
        }
        CHECK(sampled <= candidate.trace().real() + 1e-9);

        const auto sol = solve_wasserstein_trace_max(r_hat, eps);
        CHECK(std::abs(sol.objective - candidate.trace().real()) <= 1e-4);
        CHECK(bures_2x2(sol.r_star, r_hat) <= eps * eps + 1e-8);
    }
}

TEST_CASE("Bures solutions satisfy the Schur block condition") {
    Rng rng(8);
    for (int t = 0; t < 5; ++t) {
        const CMatrix r_hat = random_psd(rng, 4);
        const double eps = 0.5;
        const auto sol = solve_wasserstein_trace_max(r_hat, eps);
        const CMatrix block = bures_schur_block(r_hat, sol.r_star);
        CHECK(linalg::min_eigenvalue(block) >= -1e-8);
        const CMatrix u = block.topRightCorner(4, 4);
        CHECK((sol.r_star + r_hat - 2.0 * u).trace().real() <= eps * eps + 1e-8);
        CHECK(sol.constraint_residual <= 1e-8);
        CHECK(linalg::is_psd(sol.r_star));
        CHECK(sol.objective >= r_hat.trace().real());
    }
}

TEST_CASE("solver objective sequences never decrease") {
    Rng rng(9);
    const CMatrix r_hat = random_psd(rng, 4);
    for (const auto &sol : {solve_fnorm_trace_max(r_hat, 0.6), solve_wasserstein_trace_max(r_hat, 0.6)}) {
        REQUIRE(!sol.trace.empty());
        for (std::size_t i = 1; i < sol.trace.size(); ++i) {
            CHECK(sol.trace[i].objective >= sol.trace[i - 1].objective - 1e-10);
        }
    }
}

TEST_CASE("blocks gradient matches central differences") {
    Rng rng(10);
    const double step = 1e-5;
    for (int t = 0; t < 20; ++t) {
        const CMatrix h = random_complex(rng, 3, 2);
        const CMatrix r_s = random_psd(rng, 2);
        const CMatrix r_v = random_psd(rng, 3);
        const auto g = blocks_gradient(h, r_s, r_v);
        const CMatrix ds = unit_hermitian(rng, 2);
        const CMatrix dv = unit_hermitian(rng, 3);
        const double analytic_s = (g.g_s * ds).trace().real();
        const double analytic_v = (g.g_v * dv).trace().real();
        const double fd_s = (blocks_objective(h, r_s + step * ds, r_v) - blocks_objective(h, r_s - step * ds, r_v)) /
                            (2.0 * step);
        const double fd_v = (blocks_objective(h, r_s, r_v + step * dv) - blocks_objective(h, r_s, r_v - step * dv)) /
                            (2.0 * step);
        CHECK(std::abs(analytic_s - fd_s) <= 1e-5 * std::max(1.0, std::abs(fd_s)));
        CHECK(std::abs(analytic_v - fd_v) <= 1e-5 * std::max(1.0, std::abs(fd_v)));
    }
}

TEST_CASE("blocks objective is the Wiener error of the model") {
    Rng rng(11);
    const CMatrix h = random_complex(rng, 4, 2);
    const CMatrix r_s = random_psd(rng, 2);
    const CMatrix r_v = random_psd(rng, 4);
    const auto m = JointMoments::from_model(h, r_s, r_v);
    CHECK(std::abs(blocks_objective(h, r_s, r_v) - f1(assemble_joint(m), 4)) <= 1e-10);
}

TEST_CASE("blocks solver reductions") {
    Rng rng(12);
    const CMatrix h = random_complex(rng, 4, 2);
    const CMatrix r_s = random_psd(rng, 2);
    const CMatrix r_v = random_psd(rng, 4);
    const auto zero = solve_wasserstein_blocks(r_s, r_v, h, 0.0, 0.0);
    CHECK(max_abs(zero.r_s_star - r_s) <= 1e-10);
    CHECK(max_abs(zero.r_v_star - r_v) <= 1e-10);

    const auto sol = solve_wasserstein_blocks(r_s, r_v, h, 0.3, 0.5);
    CHECK(sol.objective >= blocks_objective(h, r_s, r_v));
    CHECK(bures_distance_sq(sol.r_s_star, r_s) <= 0.09 + 1e-8);
    CHECK(bures_distance_sq(sol.r_v_star, r_v) <= 0.25 + 1e-8);
    CHECK(linalg::is_psd(sol.r_s_star));
    CHECK(linalg::is_psd(sol.r_v_star));
}

TEST_CASE("blocks solver on a 1x1 system matches a 2-D grid search") {
    const double h = 0.8;
    const double a = 1.0;
    const double b = 0.5;
    const double e1 = 0.3;
    const double e2 = 0.2;
    const double best = blocks_scalar_grid(h, a, b, e1, e2, 2000);
    const auto sol = solve_wasserstein_blocks(scalar(a), scalar(b), scalar(h), e1, e2);
    CHECK(std::abs(sol.objective - best) <= 1e-4);
    CHECK(std::abs(sol.objective - blocks_scalar(h, sol.r_s_star(0, 0).real(), sol.r_v_star(0, 0).real())) <= 1e-12);
}

TEST_CASE("blocks solver survives a singular noise estimate") {
    Rng rng(13);
    const CMatrix h = random_complex(rng, 3, 3);
    const auto sol = solve_wasserstein_blocks(random_psd(rng, 3), CMatrix::Zero(3, 3), h, 0.2, 0.0);
    CHECK(std::isfinite(sol.objective));
    CHECK(sol.r_v_star.allFinite());
}

TEST_CASE("robust beamformers from the numerical worst case") {
    Rng rng(14);
    const auto m = JointMoments::split(random_psd(rng, 6), 4);
    const SolverConfig cfg;
    for (auto ball : {DroBall::joint_fnorm, DroBall::joint_wasserstein, DroBall::blocks_wasserstein}) {
        CHECK(rel_err(dr_wasserstein_beamformer(m, 0.0, cfg, ball).w, wiener(m).w) <= 1e-8);
    }

    const double eps = 0.9;
    UncertaintySpec dl{UncertaintyKind::diag_loading, eps / std::sqrt(6.0), {}, {}, {}};
    CHECK(rel_err(dr_wasserstein_beamformer(m, eps, cfg, DroBall::joint_fnorm).w, dr_beamformer(m, dl).w) <= 1e-6);
}

TEST_CASE("robust weights are the best response at the worst case") {
    Rng rng(15);
    const auto m = JointMoments::split(random_psd(rng, 6), 4);
    const auto worst = solve_wasserstein_trace_max(assemble_joint(m), 0.5);
    const auto m_star = JointMoments::split(worst.r_star, 4);
    const auto w = dr_wasserstein_beamformer(m, 0.5, {}, DroBall::joint_wasserstein);
    const double at_w = estimation_error(w.w, m_star);
    for (int t = 0; t < 100; ++t) {
        CHECK(estimation_error(w.w + 0.1 * random_complex(rng, 2, 4), m_star) >= at_w - 1e-9);
    }
}

TEST_CASE("solver configuration and trace dump") {
    SolverConfig bad;
    bad.max_iters = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad.max_iters = 10;
    bad.tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);

    Rng rng(16);
    SolverConfig cfg;
    cfg.verbose = true;
    cfg.trace_path = "dro_trace.csv";
    const auto sol = solve_wasserstein_trace_max(random_psd(rng, 3), 0.4, cfg);
    std::ifstream in(cfg.trace_path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "iter,objective,residual");
    int lines = 0;
    for (std::string line; std::getline(in, line);) { ++lines; }
    CHECK(lines == static_cast<int>(sol.trace.size()));
    std::remove(cfg.trace_path.c_str());

    CHECK_THROWS_AS((void)solve_fnorm_trace_max(random_psd(rng, 3), -1.0), InvalidArgument);
}
