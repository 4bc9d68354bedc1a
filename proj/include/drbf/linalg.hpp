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

#include "drbf/types.hpp"

namespace drbf::linalg {

/// Eigendecomposition A = Q diag(values) Q^H of a Hermitian matrix,
/// eigenvalues in ascending order.
struct HermitianEig {
    RVector values;
    CMatrix vectors;

    [[nodiscard]] CMatrix reconstruct() const;
    [[nodiscard]] double min() const { return values.size() ? values(0) : 0.0; }
    [[nodiscard]] double max() const { return values.size() ? values(values.size() - 1) : 0.0; }
};

/// (A + A^H) / 2
[[nodiscard]] CMatrix symmetrize(const CMatrix &a);
[[nodiscard]] RMatrix symmetrize(const RMatrix &a);

/// Max absolute entry of A - A^H.
[[nodiscard]] double hermitian_defect(const CMatrix &a);
[[nodiscard]] bool is_hermitian(const CMatrix &a, double tolerance = tol::kHermitian);

/// Decomposes the Hermitian part of `a`.
[[nodiscard]] HermitianEig eig(const CMatrix &a);
[[nodiscard]] double min_eigenvalue(const CMatrix &a);
[[nodiscard]] double min_eigenvalue(const RMatrix &a);

/// Hermitian within tol::kHermitian and min eigenvalue >= floor.
[[nodiscard]] bool is_psd(const CMatrix &a, double floor = tol::kPsdFloor);

/// Inverse of a Hermitian PSD matrix through its eigendecomposition.
/// Throws SingularMatrix when min eigenvalue < 1e-12 * max eigenvalue.
[[nodiscard]] CMatrix inv_psd(const CMatrix &a, const std::string &what = "matrix");
[[nodiscard]] RMatrix inv_psd(const RMatrix &a, const std::string &what = "matrix");

/// Principal square root with eigenvalues floored at 0.
[[nodiscard]] CMatrix sqrt_psd(const CMatrix &a);

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clipped to 0.
[[nodiscard]] CMatrix psd_project(const CMatrix &a);

/// Eigenvalues of the Hermitian matrix floored at `floor`.
[[nodiscard]] CMatrix psd_floor(const CMatrix &a, double floor);

/// Real part of the trace.
[[nodiscard]] inline double rtrace(const CMatrix &a) { return a.trace().real(); }

}  // namespace drbf::linalg
