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
#include <optional>
#include <string>
#include <vector>

#include "drbf/core_types.hpp"

namespace drbf {

/// A linear receive beamformer s_hat = W x together with its provenance.
struct BeamformerWeights {
    CMatrix w;  ///< M x N
    std::string method;
    std::map<std::string, double> params;
    /// Non-fatal diagnostics, e.g. an uncertainty set whose lower bound is not PSD.
    std::vector<std::string> warnings;

    [[nodiscard]] CMatrix apply(const CMatrix &x_block) const { return w * x_block; }
    [[nodiscard]] bool finite() const { return w.allFinite(); }
};

enum class UncertaintyKind {
    additive_moment,          ///< R_hat - eps E <= R <= R_hat + eps E, E is (N+M) x (N+M)
    diag_loading,             ///< E = I
    generalized_dl,           ///< E = blkdiag(F, G); only F (N x N) affects W
    multiplicative,           ///< theta1 R_hat <= R <= theta2 R_hat
    modified_multiplicative,  ///< scales only the diagonal blocks by theta
    fnorm_ball,               ///< solved numerically, see dro.hpp
    wasserstein_ball,         ///< solved numerically, see dro.hpp
};

struct UncertaintySpec {
    UncertaintyKind kind = UncertaintyKind::diag_loading;
    double epsilon = 0.0;
    std::optional<CMatrix> e_matrix;  ///< E (additive_moment) or F (generalized_dl)
    std::optional<double> theta1;
    std::optional<double> theta2;

    void validate() const;
};

/// Wiener objective Tr[W R_x W^H - W R_xs - R_xs^H W^H + R_s] (real part).
[[nodiscard]] double estimation_error(const CMatrix &w, const JointMoments &m);

/// Worst-case objective after minimizing over W: Tr[R_s - R_xs^H R_x^{-1} R_xs].
[[nodiscard]] double f1(const CMatrix &joint, Eigen::Index n_rx);
[[nodiscard]] double f2(const CMatrix &r_x, const CMatrix &r_xs, const CMatrix &r_s);

/// W = R_xs^H R_x^{-1}.
[[nodiscard]] BeamformerWeights wiener(const JointMoments &m);

/// W = R_s H^H (H R_s H^H + R_v)^{-1}.
[[nodiscard]] BeamformerWeights wiener_ce(const CMatrix &h_hat, const CMatrix &r_s, const CMatrix &r_v);

/// Closed-form robust beamformers: the worst case over a moment-based set sits
/// at its upper bound, so W is the Wiener solution at that bound.
[[nodiscard]] BeamformerWeights dr_beamformer(const JointMoments &m, const UncertaintySpec &u);

/// Diagonally-loaded Capon (MVDR) beamformer
/// W = [H^H (R_x + eps I)^{-1} H]^{-1} H^H (R_x + eps I)^{-1}; satisfies W H = I.
[[nodiscard]] BeamformerWeights capon(const CMatrix &h, const CMatrix &r_x, double epsilon);

/// W = (H^H H)^{-1} H^H.
[[nodiscard]] BeamformerWeights zero_forcing(const CMatrix &h_hat);

/// Lifts every eigenvalue to at least mu * lambda_max, keeping the eigenvectors.
[[nodiscard]] CMatrix eigen_threshold_cov(const CMatrix &r_x, double mu);

/// W = R_xs^H R_x,thr^{-1}.
[[nodiscard]] BeamformerWeights eigen_threshold_bf(const JointMoments &m, double mu);

enum class RsRvVariant {
    rs_identity,          ///< R_s uncertain within +-eps1 I
    rs_channel_weighted,  ///< R_s uncertain within +-eps1 H^H (H H^H)^{-2} H
    rv_identity,          ///< R_v uncertain within +-eps2 I
};

/// Channel-model beamformers robust to transmit-power and noise-covariance uncertainty.
[[nodiscard]] BeamformerWeights dr_rs_rv_beamformer(const CMatrix &h, const CMatrix &r_s_hat, const CMatrix &r_v_hat,
                                                    double eps1, double eps2, RsRvVariant variant);

/// Wiener beamformer regularized toward the previous frame's weights:
/// W = (R_xs + lambda W_prev^H)^H (R_x + (lambda + eps0) I)^{-1}.
[[nodiscard]] BeamformerWeights multi_frame_wiener(const JointMoments &m, const BeamformerWeights &w_prev,
                                                   double lambda, double epsilon0);

/// Weights as a CSV container (matrix "W", meta method and params).
void save_weights(const std::string &path, const BeamformerWeights &w);
[[nodiscard]] BeamformerWeights load_weights(const std::string &path);

}  // namespace drbf
