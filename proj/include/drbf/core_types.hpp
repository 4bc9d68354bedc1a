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

#include "drbf/linalg.hpp"
#include "drbf/types.hpp"

namespace drbf {

// Real-space lifting. A complex vector x maps to [Re x; Im x]; a complex matrix H
// maps to [[Re H, -Im H], [Im H, Re H]] so that lift(H x) = lift(H) lift(x).

[[nodiscard]] RVector lift_vector(const CVector &x);

/// Column-wise lift_vector: N x L complex -> 2N x L real.
[[nodiscard]] RMatrix lift_columns(const CMatrix &x);

[[nodiscard]] RMatrix lift_matrix_double(const CMatrix &h);

/// Inverse of lift_vector: y[0..M) + j y[M..2M).
[[nodiscard]] CVector gamma_unlift(const RVector &y);

/// Column-wise gamma_unlift: 2M x L real -> M x L complex.
[[nodiscard]] CMatrix gamma_unlift_columns(const RMatrix &y);

/// Second moment of the lifted vector given the complex covariance R and
/// pseudo-covariance C (zero when omitted).
[[nodiscard]] RMatrix lift_covariance(const CMatrix &r, const std::optional<CMatrix> &c = std::nullopt);

/// Second-order statistics of the stacked vector [x; s]:
///   R = [[r_x, r_xs], [r_xs^H, r_s]].
struct JointMoments {
    CMatrix r_x;   ///< N x N
    CMatrix r_xs;  ///< N x M
    CMatrix r_s;   ///< M x M

    [[nodiscard]] Eigen::Index n_rx() const { return r_x.rows(); }
    [[nodiscard]] Eigen::Index n_tx() const { return r_s.rows(); }

    /// Throws InvalidArgument on inconsistent block shapes.
    void validate() const;

    /// Slices a (N+M) x (N+M) block matrix with leading block size n_rx.
    [[nodiscard]] static JointMoments split(const CMatrix &joint, Eigen::Index n_rx);

    /// Model-built moments: r_x = H R_s H^H + R_v, r_xs = H R_s.
    [[nodiscard]] static JointMoments from_model(const CMatrix &h, const CMatrix &r_s, const CMatrix &r_v);
};

[[nodiscard]] CMatrix assemble_joint(const JointMoments &m);

}  // namespace drbf
