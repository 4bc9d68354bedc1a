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

#include "drbf/rkhs.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "drbf/core_types.hpp"
#include "drbf/csv_io.hpp"
#include "drbf/linalg.hpp"

namespace drbf {

namespace {

double matern(double r, double length, double nu) {
    if (r == 0.0) { return 1.0; }
    if (nu == 0.5) { return std::exp(-r / length); }
    if (nu == 1.5) {
        const double z = std::sqrt(3.0) * r / length;
        return (1.0 + z) * std::exp(-z);
    }
    if (nu == 2.5) {
        const double z = std::sqrt(5.0) * r / length;
        return (1.0 + z + z * z / 3.0) * std::exp(-z);
    }
    const double z = std::sqrt(2.0 * nu) * r / length;
    return std::pow(2.0, 1.0 - nu) / std::tgamma(nu) * std::pow(z, nu) * std::cyl_bessel_k(nu, z);
}

// Targets S = [Re S; Im S] and anchors X = [Re X; Im X] of a frame.
struct LiftedFrame {
    RMatrix anchors;
    RMatrix targets;
};

LiftedFrame lift_frame(const PilotFrame &frame) {
    frame.validate();
    require(frame.length() >= 1, "kernel estimator: need at least one pilot");
    return {lift_columns(frame.x_block), lift_columns(frame.s_block)};
}

// B A^{-1} for symmetric PSD A.
RMatrix right_solve(const RMatrix &b, const RMatrix &a, const std::string &what) {
    return b * linalg::inv_psd(a, what);
}

KernelEstimator make(const LiftedFrame &lf, RMatrix weights, const KernelSpec &spec, std::string method,
                     std::map<std::string, double> params) {
    return {lf.anchors, std::move(weights), spec, std::move(method), std::move(params)};
}

}  // namespace

std::string to_string(KernelKind kind) {
    switch (kind) {
    case KernelKind::gaussian: return "gaussian";
    case KernelKind::laplacian: return "laplacian";
    case KernelKind::linear: return "linear";
    case KernelKind::polynomial: return "polynomial";
    case KernelKind::matern: return "matern";
    }
    return "unknown";
}

KernelKind kernel_kind_from_string(const std::string &name) {
    for (auto k : {KernelKind::gaussian, KernelKind::laplacian, KernelKind::linear, KernelKind::polynomial,
                   KernelKind::matern}) {
        if (to_string(k) == name) { return k; }
    }
    throw InvalidArgument("unknown kernel kind '" + name + "'");
}

std::string to_string(KernelMethod method) {
    switch (method) {
    case KernelMethod::nominal: return "nominal";
    case KernelMethod::kdl_k2: return "kdl_k2";
    case KernelMethod::kdl_k: return "kdl_k";
    case KernelMethod::eigen_threshold: return "eigen_threshold";
    }
    return "unknown";
}

KernelMethod kernel_method_from_string(const std::string &name) {
    for (auto m : {KernelMethod::nominal, KernelMethod::kdl_k2, KernelMethod::kdl_k, KernelMethod::eigen_threshold}) {
        if (to_string(m) == name) { return m; }
    }
    throw InvalidArgument("unknown kernel method '" + name + "'");
}

void KernelSpec::validate() const {
    switch (kind) {
    case KernelKind::gaussian:
    case KernelKind::laplacian:
        require(bandwidth > 0.0 && std::isfinite(bandwidth), "KernelSpec: bandwidth must be > 0");
        break;
    case KernelKind::matern:
        require(bandwidth > 0.0 && std::isfinite(bandwidth), "KernelSpec: bandwidth must be > 0");
        require(smoothness > 0.0, "KernelSpec: matern smoothness must be > 0");
        break;
    case KernelKind::polynomial:
        require(degree >= 1, "KernelSpec: polynomial degree must be >= 1");
        break;
    case KernelKind::linear: break;
    }
}

double median_pairwise_distance(const RMatrix &points) {
    const auto n = points.cols();
    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) { dists.push_back((points.col(i) - points.col(j)).norm()); }
    }
    if (dists.empty()) { return 1.0; }
    const auto mid = dists.begin() + static_cast<std::ptrdiff_t>(dists.size() / 2);
    std::nth_element(dists.begin(), mid, dists.end());
    double med = *mid;
    if (dists.size() % 2 == 0) { med = 0.5 * (med + *std::max_element(dists.begin(), mid)); }
    return med > 0.0 ? med : 1.0;
}

KernelSpec median_heuristic_kernel(const RMatrix &points, double scale) {
    require(scale > 0.0, "median_heuristic_kernel: scale must be > 0");
    KernelSpec spec;
    spec.kind = KernelKind::gaussian;
    spec.bandwidth = scale * median_pairwise_distance(points);
    return spec;
}

double kernel_eval(const KernelSpec &spec, const RVector &a, const RVector &b) {
    require(a.size() == b.size(), "kernel_eval: vectors must have equal length");
    switch (spec.kind) {
    case KernelKind::gaussian:
        return std::exp(-(a - b).squaredNorm() / (2.0 * spec.bandwidth * spec.bandwidth));
    case KernelKind::laplacian: return std::exp(-(a - b).lpNorm<1>() / spec.bandwidth);
    case KernelKind::linear: return a.dot(b);
    case KernelKind::polynomial: return std::pow(a.dot(b) + spec.offset, spec.degree);
    case KernelKind::matern: return matern((a - b).norm(), spec.bandwidth, spec.smoothness);
    }
    throw InvalidArgument("kernel_eval: unknown kernel");
}

RMatrix kernel_matrix(const KernelSpec &spec, const RMatrix &anchors) {
    spec.validate();
    const auto l = anchors.cols();
    RMatrix k(l, l);
    for (Eigen::Index i = 0; i < l; ++i) {
        for (Eigen::Index j = i; j < l; ++j) {
            k(i, j) = kernel_eval(spec, anchors.col(i), anchors.col(j));
            k(j, i) = k(i, j);
        }
    }
    return k;
}

RMatrix kernel_features(const KernelSpec &spec, const RMatrix &anchors, const RMatrix &points) {
    spec.validate();
    require(anchors.rows() == points.rows(), "kernel_features: dimension mismatch");
    RMatrix phi(anchors.cols(), points.cols());
    for (Eigen::Index p = 0; p < points.cols(); ++p) {
        for (Eigen::Index i = 0; i < anchors.cols(); ++i) { phi(i, p) = kernel_eval(spec, points.col(p), anchors.col(i)); }
    }
    return phi;
}

KernelEstimator fit_kernel_estimator(const PilotFrame &frame, const KernelSpec &spec, KernelMethod method,
                                     double param) {
    require(param >= 0.0 && std::isfinite(param), "fit_kernel_estimator: parameter must be finite and >= 0");
    const auto lf = lift_frame(frame);
    const RMatrix k = kernel_matrix(spec, lf.anchors);
    const auto l = k.rows();
    const double inv_l = 1.0 / static_cast<double>(l);
    const RMatrix eye = RMatrix::Identity(l, l);

    switch (method) {
    case KernelMethod::nominal:
        return make(lf, right_solve(lf.targets, k, "kernel matrix K (use a loaded variant)"), spec, "nominal", {});
    case KernelMethod::kdl_k2: {
        const RMatrix inner = inv_l * k * k + param * eye;
        return make(lf, right_solve(inv_l * lf.targets * k, inner, "K^2/L + eps I"), spec, "kdl_k2",
                    {{"epsilon", param}});
    }
    case KernelMethod::kdl_k:
        return make(lf, right_solve(lf.targets, k + param * eye, "K + eps I"), spec, "kdl_k", {{"epsilon", param}});
    case KernelMethod::eigen_threshold: {
        require(param <= 1.0, "fit_kernel_estimator: mu must lie in [0,1]");
        Eigen::SelfAdjointEigenSolver<RMatrix> es(linalg::symmetrize(RMatrix(inv_l * k * k)));
        const RVector values = es.eigenvalues().cwiseMax(param * es.eigenvalues().maxCoeff());
        const RMatrix thr = es.eigenvectors() * values.asDiagonal() * es.eigenvectors().transpose();
        return make(lf, right_solve(inv_l * lf.targets * k, thr, "thresholded K^2/L"), spec, "eigen_threshold",
                    {{"mu", param}});
    }
    }
    throw InvalidArgument("fit_kernel_estimator: unknown method");
}

CMatrix predict_block(const KernelEstimator &est, const CMatrix &x_block) {
    require(x_block.rows() == est.n_rx(), "predict: input length must equal N");
    require(est.weights.cols() == est.anchors.cols(), "predict: weights and anchors disagree on L");
    return gamma_unlift_columns(est.weights * kernel_features(est.kernel, est.anchors, lift_columns(x_block)));
}

CVector predict(const KernelEstimator &est, const CVector &x) { return predict_block(est, CMatrix(x)).col(0); }

KernelEstimator fit_multi_frame_kernel(const PilotFrame &frame, const KernelSpec &spec, const RMatrix &w_prev,
                                       double lambda) {
    require(lambda >= 0.0 && std::isfinite(lambda), "fit_multi_frame_kernel: lambda must be finite and >= 0");
    const auto lf = lift_frame(frame);
    require(w_prev.rows() == lf.targets.rows() && w_prev.cols() == lf.anchors.cols(),
            "fit_multi_frame_kernel: previous weights must be 2M x L for the current frame");
    const RMatrix k = kernel_matrix(spec, lf.anchors);
    const auto l = k.rows();
    const double inv_l = 1.0 / static_cast<double>(l);
    const RMatrix inner = inv_l * k * k + lambda * RMatrix::Identity(l, l);
    return make(lf, right_solve(inv_l * lf.targets * k + lambda * w_prev, inner, "K^2/L + lambda I"), spec,
                "multi_frame", {{"lambda", lambda}});
}

void save_estimator(const std::string &path, const KernelEstimator &est) {
    csv::Container c;
    c.set_meta("kind", "kernel_estimator");
    c.set_meta("kernel", to_string(est.kernel.kind));
    c.set_meta("bandwidth", csv::format_double(est.kernel.bandwidth));
    c.set_meta("degree", std::to_string(est.kernel.degree));
    c.set_meta("offset", csv::format_double(est.kernel.offset));
    c.set_meta("smoothness", csv::format_double(est.kernel.smoothness));
    c.set_meta("method", est.method);
    for (const auto &[key, value] : est.params) { c.set_meta("param." + key, csv::format_double(value)); }
    c.add("anchors", est.anchors);
    c.add("weights", est.weights);
    csv::write_file(path, c);
}

KernelEstimator load_estimator(const std::string &path) {
    const auto c = csv::read_file(path);
    if (c.meta_value("kind") != "kernel_estimator") { throw InvalidArgument(path + ": not a kernel estimator file"); }
    KernelEstimator est;
    est.kernel.kind = kernel_kind_from_string(c.meta_value("kernel"));
    est.kernel.bandwidth = csv::parse_double(c.meta_value("bandwidth"));
    est.kernel.degree = std::stoi(c.meta_value("degree"));
    est.kernel.offset = csv::parse_double(c.meta_value("offset"));
    est.kernel.smoothness = csv::parse_double(c.meta_value("smoothness"));
    est.kernel.validate();
    est.method = c.meta_value("method");
    for (const auto &[key, value] : c.meta) {
        if (key.rfind("param.", 0) == 0) { est.params[key.substr(6)] = csv::parse_double(value); }
    }
    est.anchors = c.real("anchors");
    est.weights = c.real("weights");
    require(est.anchors.cols() == est.weights.cols(), path + ": anchors and weights disagree on L");
    return est;
}

}  // namespace drbf
