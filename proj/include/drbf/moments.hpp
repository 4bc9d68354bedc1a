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

#include "drbf/core_types.hpp"
#include "drbf/scene.hpp"

namespace drbf {

/// Everything the beamformers need, estimated from one pilot frame.
struct NominalEstimates {
    JointMoments moments;
    CMatrix h_hat;    ///< N x M
    CMatrix r_v_hat;  ///< N x N
    Eigen::Index sample_count = 0;
};

/// R_x = X X^H / L, R_xs = X S^H / L, R_s = S S^H / L (Hermitian blocks symmetrized).
[[nodiscard]] JointMoments estimate_moments(const PilotFrame &frame);

/// H = X S^H (S S^H)^{-1}. Throws SingularMatrix ("insufficient pilot excitation")
/// when S S^H is rank deficient, including L < M.
[[nodiscard]] CMatrix estimate_channel(const PilotFrame &frame);

/// R_v = (X - H S)(X - H S)^H / L.
[[nodiscard]] CMatrix estimate_noise_cov(const PilotFrame &frame, const CMatrix &h_hat);

/// All of the above. The channel and noise estimates are left empty when the
/// pilots do not excite every transmit stream.
[[nodiscard]] NominalEstimates estimate_all(const PilotFrame &frame);

}  // namespace drbf
