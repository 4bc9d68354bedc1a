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

#include "drbf/core_types.hpp"

namespace drbf {

RVector lift_vector(const CVector &x) {
    RVector out(2 * x.size());
    out << x.real(), x.imag();
    return out;
}

RMatrix lift_columns(const CMatrix &x) {
    RMatrix out(2 * x.rows(), x.cols());
    out << x.real(), x.imag();
    return out;
}

RMatrix lift_matrix_double(const CMatrix &h) {
    const RMatrix re = h.real();
    const RMatrix im = h.imag();
    RMatrix out(2 * h.rows(), 2 * h.cols());
    out << re, -im, im, re;
    return out;
}

CVector gamma_unlift(const RVector &y) {
    require(y.size() % 2 == 0, "gamma_unlift: input length must be even");
    const Eigen::Index m = y.size() / 2;
    CVector out(m);
    out.real() = y.head(m);
    out.imag() = y.tail(m);
    return out;
}

CMatrix gamma_unlift_columns(const RMatrix &y) {
    require(y.rows() % 2 == 0, "gamma_unlift_columns: row count must be even");
    const Eigen::Index m = y.rows() / 2;
    CMatrix out(m, y.cols());
    out.real() = y.topRows(m);
    out.imag() = y.bottomRows(m);
    return out;
}

RMatrix lift_covariance(const CMatrix &r, const std::optional<CMatrix> &c) {
    require(r.rows() == r.cols(), "lift_covariance: R must be square");
    if (!linalg::is_hermitian(r)) { throw InvalidArgument("lift_covariance: R must be Hermitian"); }
    const CMatrix pseudo = c.value_or(CMatrix::Zero(r.rows(), r.cols()));
    require(pseudo.rows() == r.rows() && pseudo.cols() == r.cols(), "lift_covariance: C must match R");
    const CMatrix plus = r + pseudo;
    const CMatrix minus = r - pseudo;
    RMatrix out(2 * r.rows(), 2 * r.cols());
    out << plus.real(), (pseudo - r).imag(), plus.imag(), minus.real();
    return 0.5 * out;
}

void JointMoments::validate() const {
    const auto n = r_x.rows();
    const auto m = r_s.rows();
    require(r_x.cols() == n, "JointMoments: r_x must be square");
    require(r_s.cols() == m, "JointMoments: r_s must be square");
    require(r_xs.rows() == n && r_xs.cols() == m, "JointMoments: r_xs must be N x M");
}

JointMoments JointMoments::split(const CMatrix &joint, Eigen::Index n_rx) {
    require(joint.rows() == joint.cols(), "JointMoments::split: matrix must be square");
    require(n_rx >= 0 && n_rx <= joint.rows(), "JointMoments::split: bad block size");
    const auto m = joint.rows() - n_rx;
    return {joint.topLeftCorner(n_rx, n_rx), joint.topRightCorner(n_rx, m), joint.bottomRightCorner(m, m)};
}

JointMoments JointMoments::from_model(const CMatrix &h, const CMatrix &r_s, const CMatrix &r_v) {
    require(r_s.rows() == h.cols() && r_s.cols() == h.cols(), "from_model: R_s must be M x M");
    require(r_v.rows() == h.rows() && r_v.cols() == h.rows(), "from_model: R_v must be N x N");
    return {linalg::symmetrize(CMatrix(h * r_s * h.adjoint() + r_v)), h * r_s, r_s};
}

CMatrix assemble_joint(const JointMoments &m) {
    m.validate();
    const auto n = m.n_rx();
    const auto k = m.n_tx();
    CMatrix out(n + k, n + k);
    out << m.r_x, m.r_xs, m.r_xs.adjoint(), m.r_s;
    return out;
}

}  // namespace drbf
