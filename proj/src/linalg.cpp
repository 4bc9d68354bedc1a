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

#include "drbf/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace drbf::linalg {

CMatrix HermitianEig::reconstruct() const {
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

CMatrix symmetrize(const CMatrix &a) {
    require(a.rows() == a.cols(), "symmetrize: matrix must be square");
    return (a + a.adjoint()) * 0.5;
}

RMatrix symmetrize(const RMatrix &a) {
    require(a.rows() == a.cols(), "symmetrize: matrix must be square");
    return (a + a.transpose()) * 0.5;
}

double hermitian_defect(const CMatrix &a) {
    if (a.rows() != a.cols()) { return INFINITY; }
    if (a.size() == 0) { return 0.0; }
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix &a, double tolerance) { return hermitian_defect(a) <= tolerance; }

HermitianEig eig(const CMatrix &a) {
    require(a.rows() == a.cols(), "eig: matrix must be square");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(symmetrize(a));
    if (solver.info() != Eigen::Success) { throw Error("eig: Hermitian eigensolver failed"); }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const CMatrix &a) { return eig(a).min(); }

double min_eigenvalue(const RMatrix &a) {
    require(a.rows() == a.cols(), "min_eigenvalue: matrix must be square");
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(symmetrize(a), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().size() ? solver.eigenvalues()(0) : 0.0;
}

bool is_psd(const CMatrix &a, double floor) {
    if (!is_hermitian(a)) { return false; }
    return min_eigenvalue(a) >= floor;
}

namespace {

template<typename Vec>
void check_invertible(const Vec &values, const std::string &what) {
    const double lo = values.size() ? values(0) : 0.0;
    const double hi = values.size() ? values(values.size() - 1) : 0.0;
    if (!(hi > 0.0) || lo < tol::kSingularRel * hi) {
        throw SingularMatrix(what + " is near-singular (min eigenvalue " + std::to_string(lo) +
                             ", max eigenvalue " + std::to_string(hi) + ")");
    }
}

}  // namespace

CMatrix inv_psd(const CMatrix &a, const std::string &what) {
    const auto d = eig(a);
    check_invertible(d.values, what);
    return d.vectors * d.values.cwiseInverse().cast<Complex>().asDiagonal() * d.vectors.adjoint();
}

RMatrix inv_psd(const RMatrix &a, const std::string &what) {
    require(a.rows() == a.cols(), "inv_psd: matrix must be square");
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(symmetrize(a));
    check_invertible(solver.eigenvalues(), what);
    return solver.eigenvectors() * solver.eigenvalues().cwiseInverse().asDiagonal() *
           solver.eigenvectors().transpose();
}

CMatrix sqrt_psd(const CMatrix &a) {
    const auto d = eig(a);
    const RVector root = d.values.cwiseMax(0.0).cwiseSqrt();
    return d.vectors * root.cast<Complex>().asDiagonal() * d.vectors.adjoint();
}

CMatrix psd_project(const CMatrix &a) { return psd_floor(a, 0.0); }

CMatrix psd_floor(const CMatrix &a, double floor) {
    auto d = eig(a);
    d.values = d.values.cwiseMax(floor);
    return symmetrize(d.reconstruct());
}

}  // namespace drbf::linalg
