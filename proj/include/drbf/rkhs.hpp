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

#include "drbf/scene.hpp"
#include "drbf/types.hpp"

namespace drbf {

enum class KernelKind { gaussian, laplacian, linear, polynomial, matern };

[[nodiscard]] std::string to_string(KernelKind kind);
[[nodiscard]] KernelKind kernel_kind_from_string(const std::string &name);

struct KernelSpec {
    KernelKind kind = KernelKind::gaussian;
    double bandwidth = 1.0;   ///< length scale for gaussian, laplacian and matern
    int degree = 2;           ///< polynomial
    double offset = 1.0;      ///< polynomial
    double smoothness = 1.5;  ///< matern nu

    void validate() const;
};

/// Median of the pairwise Euclidean distances between columns; 1 when undefined.
[[nodiscard]] double median_pairwise_distance(const RMatrix &points);

/// Gaussian kernel whose bandwidth is `scale` times the median pairwise distance.
[[nodiscard]] KernelSpec median_heuristic_kernel(const RMatrix &points, double scale = 1.0);

[[nodiscard]] double kernel_eval(const KernelSpec &spec, const RVector &a, const RVector &b);

/// K(i, j) = k(a_i, a_j) over the columns of `anchors`; exactly symmetric.
[[nodiscard]] RMatrix kernel_matrix(const KernelSpec &spec, const RMatrix &anchors);

/// L x P matrix whose column p is [k(points_p, a_1); ...; k(points_p, a_L)].
[[nodiscard]] RMatrix kernel_features(const KernelSpec &spec, const RMatrix &anchors, const RMatrix &points);

enum class KernelMethod {
    nominal,          ///< W = S K^{-1}
    kdl_k2,           ///< W = (1/L) S K ((1/L) K^2 + eps I)^{-1}
    kdl_k,            ///< W = S (K + eps I)^{-1}
    eigen_threshold,  ///< W = (1/L) S K thr(K^2 / L, mu)^{-1}
};

[[nodiscard]] std::string to_string(KernelMethod method);
[[nodiscard]] KernelMethod kernel_method_from_string(const std::string &name);

/// Nonlinear estimator s = Gamma(W phi(lift(x))) with anchors at the lifted pilot inputs.
struct KernelEstimator {
    RMatrix anchors;  ///< 2N x L
    RMatrix weights;  ///< 2M x L
    KernelSpec kernel;
    std::string method;
    std::map<std::string, double> params;

    [[nodiscard]] Eigen::Index n_rx() const { return anchors.rows() / 2; }
    [[nodiscard]] Eigen::Index n_tx() const { return weights.rows() / 2; }
    [[nodiscard]] Eigen::Index size() const { return anchors.cols(); }
};

/// `param` is epsilon for the loading methods and mu for eigen_threshold.
/// Throws SingularMatrix when the matrix to invert is near-singular.
[[nodiscard]] KernelEstimator fit_kernel_estimator(const PilotFrame &frame, const KernelSpec &spec,
                                                   KernelMethod method, double param);

[[nodiscard]] CVector predict(const KernelEstimator &est, const CVector &x);
/// Column-wise predict over an N x P block.
[[nodiscard]] CMatrix predict_block(const KernelEstimator &est, const CMatrix &x_block);

/// W = ((1/L) S K + lambda W_prev) ((1/L) K^2 + lambda I)^{-1} on the current
/// frame's anchors; W_prev must be 2M x L.
[[nodiscard]] KernelEstimator fit_multi_frame_kernel(const PilotFrame &frame, const KernelSpec &spec,
                                                     const RMatrix &w_prev, double lambda);

/// Estimator as a CSV container (matrices "anchors" and "weights", kernel and
/// method in meta).
void save_estimator(const std::string &path, const KernelEstimator &est);
[[nodiscard]] KernelEstimator load_estimator(const std::string &path);

}  // namespace drbf
