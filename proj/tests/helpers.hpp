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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "drbf/core_types.hpp"
#include "drbf/scene.hpp"

namespace drbf::testing {

using Rng = std::mt19937_64;

inline CMatrix random_complex(Rng &rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix a(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) { a(i, j) = Complex(g(rng), g(rng)); }
    }
    return a;
}

inline RMatrix random_real(Rng &rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> g(0.0, 1.0);
    RMatrix a(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) { a(i, j) = g(rng); }
    }
    return a;
}

inline CMatrix random_hermitian(Rng &rng, Eigen::Index n) {
    const CMatrix a = random_complex(rng, n, n);
    return (a + a.adjoint()) / 2.0;
}

/// A A^H / k with A n x k: full rank when k >= n.
inline CMatrix random_psd(Rng &rng, Eigen::Index n, Eigen::Index k = -1) {
    if (k < 0) { k = n + 2; }
    const CMatrix a = random_complex(rng, n, k);
    CMatrix r = a * a.adjoint() / static_cast<double>(k);
    return (r + r.adjoint()) / 2.0;
}

template <typename A, typename B>
double rel_err(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
    const double scale = std::max(b.norm(), 1e-300);
    return (a - b).norm() / scale;
}

template <typename A>
double max_abs(const Eigen::MatrixBase<A> &a) {
    return a.size() ? static_cast<double>(a.cwiseAbs().maxCoeff()) : 0.0;
}

/// Pilot frame x = H s + v with Gaussian s ~ CN(0, I) and v ~ CN(0, sigma2 I).
inline PilotFrame random_frame(Rng &rng, Eigen::Index n, Eigen::Index m, Eigen::Index l, double sigma2) {
    PilotFrame f;
    f.true_h = random_complex(rng, n, m) / std::sqrt(2.0);
    f.s_block = random_complex(rng, m, l) / std::sqrt(2.0);
    f.x_block = f.true_h * f.s_block + std::sqrt(sigma2 / 2.0) * random_complex(rng, n, l);
    f.true_r_v = sigma2 * CMatrix::Identity(n, n);
    return f;
}

}  // namespace drbf::testing
