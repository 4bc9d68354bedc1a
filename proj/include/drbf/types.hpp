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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace drbf {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Tolerances shared by every module.
namespace tol {
inline constexpr double kHermitian = 1e-10;    ///< max |A - A^H| entry
inline constexpr double kPsdFloor = -1e-8;     ///< smallest admissible eigenvalue of a "PSD" matrix
inline constexpr double kSingularRel = 1e-12;  ///< min/max eigenvalue ratio below which inversion is refused
}  // namespace tol

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad shapes, out-of-range parameters, malformed inputs.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A matrix that had to be inverted is (numerically) singular.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// An iterative solver stopped before meeting its tolerance.
class NotConverged : public Error {
public:
    using Error::Error;
};

inline void require(bool cond, const std::string &what) {
    if (!cond) { throw InvalidArgument(what); }
}

}  // namespace drbf
