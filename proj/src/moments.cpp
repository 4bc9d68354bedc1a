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

#include "drbf/moments.hpp"

#include "drbf/linalg.hpp"

namespace drbf {

JointMoments estimate_moments(const PilotFrame &frame) {
    frame.validate();
    const auto l = frame.length();
    require(l >= 1, "estimate_moments: need at least one pilot");
    const double inv_l = 1.0 / static_cast<double>(l);
    const CMatrix &x = frame.x_block;
    const CMatrix &s = frame.s_block;
    return {linalg::symmetrize(CMatrix(x * x.adjoint() * inv_l)), x * s.adjoint() * inv_l,
            linalg::symmetrize(CMatrix(s * s.adjoint() * inv_l))};
}

CMatrix estimate_channel(const PilotFrame &frame) {
    frame.validate();
    const auto m = frame.s_block.rows();
    if (frame.length() < m) {
        throw SingularMatrix("insufficient pilot excitation: L = " + std::to_string(frame.length()) + " < M = " +
                             std::to_string(m));
    }
    const CMatrix gram = frame.s_block * frame.s_block.adjoint();
    try {
        return frame.x_block * frame.s_block.adjoint() * linalg::inv_psd(gram, "S S^H");
    } catch (const SingularMatrix &) {
        throw SingularMatrix("insufficient pilot excitation: S S^H is rank deficient");
    }
}

CMatrix estimate_noise_cov(const PilotFrame &frame, const CMatrix &h_hat) {
    frame.validate();
    require(h_hat.rows() == frame.x_block.rows() && h_hat.cols() == frame.s_block.rows(),
            "estimate_noise_cov: H must be N x M");
    require(frame.length() >= 1, "estimate_noise_cov: need at least one pilot");
    const CMatrix residual = frame.x_block - h_hat * frame.s_block;
    return linalg::symmetrize(CMatrix(residual * residual.adjoint() / static_cast<double>(frame.length())));
}

NominalEstimates estimate_all(const PilotFrame &frame) {
    NominalEstimates out;
    out.moments = estimate_moments(frame);
    out.sample_count = frame.length();
    try {
        out.h_hat = estimate_channel(frame);
        out.r_v_hat = estimate_noise_cov(frame, out.h_hat);
    } catch (const SingularMatrix &) {
        out.h_hat.resize(0, 0);
        out.r_v_hat.resize(0, 0);
    }
    return out;
}

}  // namespace drbf
