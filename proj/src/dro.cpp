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

#include "drbf/dro.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include "drbf/linalg.hpp"

namespace drbf {

namespace {

constexpr int kMaxHalvings = 50;
constexpr int kStallWindow = 10;
constexpr int kDykstraIters = 500;

struct AscentResult {
    int iterations = 0;
    bool converged = false;
    std::vector<IterationRecord> trace;
};

// Generic projected-gradient ascent with backtracking. `step_from(x)` returns a
// callable t -> projected candidate; `objective` and `residual` score a point.
template<typename Point, typename Objective, typename StepFrom, typename Residual>
AscentResult ascend(Point &x, double &fx, Objective objective, StepFrom step_from, Residual residual,
                    const SolverConfig &cfg) {
    AscentResult out;
    int stalled = 0;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        auto step = step_from(x);
        double t = cfg.step_init;
        double change = 0.0;
        for (int k = 0; k < kMaxHalvings; ++k, t *= 0.5) {
            Point cand = step(t);
            const double fc = objective(cand);
            if (std::isfinite(fc) && fc > fx) {
                change = (fc - fx) / std::max(1.0, std::abs(fx));
                x = std::move(cand);
                fx = fc;
                break;
            }
        }
        out.iterations = it;
        out.trace.push_back({it, fx, residual(x)});
        if (cfg.verbose && cfg.trace_path.empty()) {
            std::cerr << "iter " << it << " objective " << fx << " step " << t << '\n';
        }
        stalled = change < cfg.tol ? stalled + 1 : 0;
        if (stalled >= kStallWindow) {
            out.converged = true;
            break;
        }
    }
    return out;
}

void dump_trace(const SolverConfig &cfg, const std::vector<IterationRecord> &trace) {
    if (!cfg.verbose || cfg.trace_path.empty()) { return; }
    std::ofstream os(cfg.trace_path);
    if (!os) { throw Error("cannot write solver trace to " + cfg.trace_path); }
    os << "iter,objective,residual\n";
    for (const auto &r : trace) { os << r.iter << ',' << r.objective << ',' << r.residual << '\n'; }
}

// Nearest point of the Frobenius ball ||y - center|| <= radius.
CMatrix project_ball(const CMatrix &y, const CMatrix &center, double radius) {
    const double dist = (y - center).norm();
    if (dist <= radius) { return y; }
    return center + (y - center) * (radius / dist);
}

// Projection onto {||R - center||_F <= radius} intersected with the PSD cone.
// Dykstra's alternating projections, then a pull toward the (PSD) center that
// restores exact ball feasibility while keeping PSD.
CMatrix project_fball_psd(const CMatrix &v, const CMatrix &center, double radius) {
    CMatrix x = v;
    CMatrix p = CMatrix::Zero(v.rows(), v.cols());
    CMatrix q = p;
    for (int k = 0; k < kDykstraIters; ++k) {
        const CMatrix y = project_ball(x + p, center, radius);
        p = x + p - y;
        const CMatrix x_next = linalg::psd_project(y + q);
        q = y + q - x_next;
        const double moved = (x_next - x).norm();
        x = x_next;
        if (moved <= 1e-14 * std::max(1.0, x.norm())) { break; }
    }
    return linalg::symmetrize(project_ball(x, center, radius));
}

double negative_part(const CMatrix &r) { return std::max(0.0, -linalg::min_eigenvalue(r)); }

void require_psd_input(const CMatrix &r, const char *what) {
    require(r.rows() == r.cols(), std::string(what) + " must be square");
    require(linalg::is_psd(r), std::string(what) + " must be Hermitian PSD");
}

}  // namespace

void SolverConfig::validate() const {
    require(max_iters >= 1, "SolverConfig: max_iters must be >= 1");
    require(tol > 0.0, "SolverConfig: tol must be > 0");
    require(step_init > 0.0, "SolverConfig: step_init must be > 0");
}

double bures_distance_sq(const CMatrix &a, const CMatrix &b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "bures_distance_sq: shape mismatch");
    const CMatrix root_a = linalg::sqrt_psd(a);
    const CMatrix cross = linalg::sqrt_psd(linalg::symmetrize(CMatrix(root_a * b * root_a)));
    return std::max(0.0, linalg::rtrace(a) + linalg::rtrace(b) - 2.0 * linalg::rtrace(cross));
}

CMatrix bures_schur_block(const CMatrix &r_hat, const CMatrix &r) {
    const auto d = r.rows();
    const CMatrix root = linalg::sqrt_psd(r_hat);
    const CMatrix inner = linalg::symmetrize(CMatrix(root * r * root));
    const CMatrix u = linalg::sqrt_psd(inner);
    CMatrix block(2 * d, 2 * d);
    block << inner, u, u, CMatrix::Identity(d, d);
    return block;
}

DroSolution solve_fnorm_trace_max(const CMatrix &r_hat, double epsilon, const SolverConfig &cfg) {
    cfg.validate();
    require_psd_input(r_hat, "solve_fnorm_trace_max: r_hat");
    require(epsilon >= 0.0, "solve_fnorm_trace_max: epsilon must be >= 0");
    const CMatrix center = linalg::symmetrize(r_hat);
    DroSolution sol;
    if (epsilon == 0.0) {
        sol.r_star = center;
        sol.objective = linalg::rtrace(center);
        sol.converged = true;
        return sol;
    }
    const auto d = center.rows();
    const CMatrix eye = CMatrix::Identity(d, d);
    CMatrix r = center;
    double fr = linalg::rtrace(r);
    auto objective = [](const CMatrix &x) { return linalg::rtrace(x); };
    auto step_from = [&](const CMatrix &x) {
        return [&, x](double t) { return project_fball_psd(x + t * eye, center, epsilon); };
    };
    auto residual = [&](const CMatrix &x) { return std::max(0.0, (x - center).norm() - epsilon); };
    auto run = ascend(r, fr, objective, step_from, residual, cfg);

    sol.r_star = r;
    sol.objective = fr;
    sol.iterations = run.iterations;
    sol.converged = run.converged;
    sol.constraint_residual =
        std::max(0.0, (r - center).squaredNorm() - epsilon * epsilon) + negative_part(r);
    sol.trace = std::move(run.trace);
    dump_trace(cfg, sol.trace);
    return sol;
}

DroSolution solve_wasserstein_trace_max(const CMatrix &r_hat, double epsilon, const SolverConfig &cfg) {
    cfg.validate();
    require_psd_input(r_hat, "solve_wasserstein_trace_max: r_hat");
    require(epsilon >= 0.0, "solve_wasserstein_trace_max: epsilon must be >= 0");
    const CMatrix center_r = linalg::symmetrize(r_hat);
    DroSolution sol;
    if (epsilon == 0.0) {
        sol.r_star = center_r;
        sol.objective = linalg::rtrace(center_r);
        sol.converged = true;
        return sol;
    }
    const auto d = center_r.rows();
    const CMatrix root = linalg::sqrt_psd(center_r);
    CMatrix y = root;
    if (root.norm() == 0.0) { y = CMatrix::Identity(d, d) * (epsilon / std::sqrt(static_cast<double>(d))); }
    double fy = y.squaredNorm();
    auto objective = [](const CMatrix &x) { return x.squaredNorm(); };
    auto step_from = [&](const CMatrix &x) {
        return [&, x](double t) { return project_ball(CMatrix(x + 2.0 * t * x), root, epsilon); };
    };
    auto residual = [&](const CMatrix &x) { return std::max(0.0, (x - root).norm() - epsilon); };
    auto run = ascend(y, fy, objective, step_from, residual, cfg);

    sol.r_star = linalg::symmetrize(CMatrix(y * y.adjoint()));
    sol.objective = linalg::rtrace(sol.r_star);
    sol.iterations = run.iterations;
    sol.converged = run.converged;
    sol.constraint_residual = std::max(0.0, bures_distance_sq(center_r, sol.r_star) - epsilon * epsilon);
    sol.trace = std::move(run.trace);
    dump_trace(cfg, sol.trace);
    return sol;
}

double blocks_objective(const CMatrix &h, const CMatrix &r_s, const CMatrix &r_v) {
    const CMatrix p = linalg::inv_psd(CMatrix(h * r_s * h.adjoint() + r_v), "H R_s H^H + R_v");
    const CMatrix hr = h * r_s;
    return linalg::rtrace(r_s) - linalg::rtrace(hr.adjoint() * p * hr);
}

BlockGradient blocks_gradient(const CMatrix &h, const CMatrix &r_s, const CMatrix &r_v) {
    const auto m = r_s.rows();
    const CMatrix p = linalg::inv_psd(CMatrix(h * r_s * h.adjoint() + r_v), "H R_s H^H + R_v");
    const CMatrix b = h.adjoint() * p * h;
    const CMatrix eye = CMatrix::Identity(m, m);
    const CMatrix phr = p * h * r_s;
    return {linalg::symmetrize(CMatrix((eye - b * r_s) * (eye - r_s * b))),
            linalg::symmetrize(CMatrix(phr * phr.adjoint()))};
}

DroSolution solve_wasserstein_blocks(const CMatrix &r_s_hat, const CMatrix &r_v_hat, const CMatrix &h, double eps1,
                                     double eps2, const SolverConfig &cfg) {
    cfg.validate();
    require_psd_input(r_s_hat, "solve_wasserstein_blocks: r_s_hat");
    require_psd_input(r_v_hat, "solve_wasserstein_blocks: r_v_hat");
    require(h.rows() == r_v_hat.rows() && h.cols() == r_s_hat.rows(), "solve_wasserstein_blocks: H must be N x M");
    require(eps1 >= 0.0 && eps2 >= 0.0, "solve_wasserstein_blocks: epsilons must be >= 0");

    const CMatrix root_s = linalg::sqrt_psd(r_s_hat);
    const CMatrix root_v = linalg::sqrt_psd(r_v_hat);
    double delta = 1e-10 * linalg::rtrace(r_v_hat);
    if (delta <= 0.0) { delta = 1e-10 * std::max(1.0, linalg::rtrace(r_s_hat)); }

    struct Pair {
        CMatrix ys;
        CMatrix yv;
    };
    auto covs = [](const Pair &x) {
        return std::pair{linalg::symmetrize(CMatrix(x.ys * x.ys.adjoint())),
                         linalg::symmetrize(CMatrix(x.yv * x.yv.adjoint()))};
    };
    // R_v used in the objective, floored at delta I if the inner matrix is singular.
    auto effective_rv = [&](const CMatrix &r_s, const CMatrix &r_v) {
        try {
            (void)linalg::inv_psd(CMatrix(h * r_s * h.adjoint() + r_v));
            return r_v;
        } catch (const SingularMatrix &) {
            return linalg::psd_floor(r_v, delta);
        }
    };
    auto objective = [&](const Pair &x) {
        const auto [r_s, r_v] = covs(x);
        return blocks_objective(h, r_s, effective_rv(r_s, r_v));
    };
    auto step_from = [&](const Pair &x) {
        const auto [r_s, r_v] = covs(x);
        const auto g = blocks_gradient(h, r_s, effective_rv(r_s, r_v));
        const CMatrix dir_s = 2.0 * g.g_s * x.ys;
        const CMatrix dir_v = 2.0 * g.g_v * x.yv;
        return [&, x, dir_s, dir_v](double t) {
            return Pair{project_ball(CMatrix(x.ys + t * dir_s), root_s, eps1),
                        project_ball(CMatrix(x.yv + t * dir_v), root_v, eps2)};
        };
    };
    auto residual = [&](const Pair &x) {
        return std::max(0.0, (x.ys - root_s).norm() - eps1) + std::max(0.0, (x.yv - root_v).norm() - eps2);
    };

    Pair x{root_s, root_v};
    double fx = objective(x);
    DroSolution sol;
    AscentResult run;
    if (eps1 > 0.0 || eps2 > 0.0) {
        run = ascend(x, fx, objective, step_from, residual, cfg);
    } else {
        run.converged = true;
    }
    auto [r_s, r_v] = covs(x);
    sol.r_s_star = r_s;
    sol.r_v_star = effective_rv(r_s, r_v);
    sol.objective = fx;
    sol.iterations = run.iterations;
    sol.converged = run.converged;
    sol.constraint_residual = std::max(0.0, bures_distance_sq(r_s_hat, sol.r_s_star) - eps1 * eps1) +
                              std::max(0.0, bures_distance_sq(r_v_hat, r_v) - eps2 * eps2);
    sol.trace = std::move(run.trace);
    dump_trace(cfg, sol.trace);
    return sol;
}

BeamformerWeights dr_wasserstein_beamformer(const JointMoments &m, double epsilon, const SolverConfig &cfg,
                                            DroBall ball, std::optional<double> eps_noise) {
    m.validate();
    require(epsilon >= 0.0, "dr_wasserstein_beamformer: epsilon must be >= 0");
    BeamformerWeights out;
    DroSolution sol;
    switch (ball) {
    case DroBall::joint_fnorm:
    case DroBall::joint_wasserstein: {
        const CMatrix r_hat = assemble_joint(m);
        sol = ball == DroBall::joint_fnorm ? solve_fnorm_trace_max(r_hat, epsilon, cfg)
                                           : solve_wasserstein_trace_max(r_hat, epsilon, cfg);
        const auto worst = JointMoments::split(sol.r_star, m.n_rx());
        out.w = worst.r_xs.adjoint() * linalg::inv_psd(worst.r_x, "worst-case R_x");
        out.method = ball == DroBall::joint_fnorm ? "dr_fnorm" : "dr_wasserstein";
        out.params = {{"epsilon", epsilon}};
        break;
    }
    case DroBall::blocks_wasserstein: {
        const CMatrix h = m.r_xs * linalg::inv_psd(m.r_s, "R_s");
        const CMatrix r_v = linalg::psd_project(CMatrix(m.r_x - h * m.r_s * h.adjoint()));
        const double eps2 = eps_noise.value_or(epsilon);
        sol = solve_wasserstein_blocks(m.r_s, r_v, h, epsilon, eps2, cfg);
        out.w = sol.r_s_star * h.adjoint() *
                linalg::inv_psd(CMatrix(h * sol.r_s_star * h.adjoint() + sol.r_v_star), "H R_s H^H + R_v");
        out.method = "dr_wasserstein_blocks";
        out.params = {{"eps1", epsilon}, {"eps2", eps2}};
        break;
    }
    }
    if (!sol.converged) {
        out.warnings.push_back("worst-case solver stopped after " + std::to_string(sol.iterations) +
                               " iterations without meeting its tolerance");
    }
    return out;
}

}  // namespace drbf
