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

#include <optional>
#include <string>
#include <vector>

#include "drbf/core_types.hpp"
#include "drbf/linear_bf.hpp"

namespace drbf {

struct SolverConfig {
    int max_iters = 2000;
    double tol = 1e-8;
    double step_init = 1.0;
    bool verbose = false;
    /// When verbose and non-empty, the iteration trace is written here as CSV.
    std::string trace_path;

    void validate() const;
};

struct IterationRecord {
    int iter = 0;
    double objective = 0.0;
    double residual = 0.0;
};

struct DroSolution {
    CMatrix r_star;    ///< joint maximizer (trace-max solvers)
    CMatrix r_s_star;  ///< block maximizers (solve_wasserstein_blocks)
    CMatrix r_v_star;
    double objective = 0.0;
    int iterations = 0;
    /// max(0, distance^2 - eps^2) plus the magnitude of any negative eigenvalue.
    double constraint_residual = 0.0;
    bool converged = false;
    std::vector<IterationRecord> trace;
};

using linalg::psd_project;

/// Squared Bures distance Tr[A + B - 2 (A^{1/2} B A^{1/2})^{1/2}], clipped at 0.
[[nodiscard]] double bures_distance_sq(const CMatrix &a, const CMatrix &b);

/// [[R_hat^{1/2} R R_hat^{1/2}, U], [U, I]] with U = (R_hat^{1/2} R R_hat^{1/2})^{1/2}.
[[nodiscard]] CMatrix bures_schur_block(const CMatrix &r_hat, const CMatrix &r);

/// max Tr R  s.t. ||R - R_hat||_F <= eps, R >= 0.
[[nodiscard]] DroSolution solve_fnorm_trace_max(const CMatrix &r_hat, double epsilon, const SolverConfig &cfg = {});

/// max Tr R  s.t. Bures(R, R_hat)^2 <= eps^2, R >= 0.
///
/// Every R in the ball is Y Y^H for some Y with ||Y - R_hat^{1/2}||_F <= eps, so
/// the ascent runs on Y where the feasible set is a plain Frobenius ball.
[[nodiscard]] DroSolution solve_wasserstein_trace_max(const CMatrix &r_hat, double epsilon,
                                                      const SolverConfig &cfg = {});

/// Tr[R_s - R_s H^H (H R_s H^H + R_v)^{-1} H R_s].
[[nodiscard]] double blocks_objective(const CMatrix &h, const CMatrix &r_s, const CMatrix &r_v);

/// Hermitian gradients G_s, G_v with d f = Re Tr(G_s dR_s) + Re Tr(G_v dR_v).
struct BlockGradient {
    CMatrix g_s;
    CMatrix g_v;
};
[[nodiscard]] BlockGradient blocks_gradient(const CMatrix &h, const CMatrix &r_s, const CMatrix &r_v);

/// Maximizes blocks_objective over two Bures balls around (R_s_hat, R_v_hat).
[[nodiscard]] DroSolution solve_wasserstein_blocks(const CMatrix &r_s_hat, const CMatrix &r_v_hat, const CMatrix &h,
                                                   double eps1, double eps2, const SolverConfig &cfg = {});

enum class DroBall { joint_fnorm, joint_wasserstein, blocks_wasserstein };

/// Robust beamformer at the numerically found worst case. The block ball uses
/// the channel and noise estimates implied by the moments,
/// H = R_xs R_s^{-1} and R_v = R_x - H R_s H^H; eps_noise defaults to epsilon.
[[nodiscard]] BeamformerWeights dr_wasserstein_beamformer(const JointMoments &m, double epsilon,
                                                          const SolverConfig &cfg, DroBall ball,
                                                          std::optional<double> eps_noise = std::nullopt);

}  // namespace drbf
