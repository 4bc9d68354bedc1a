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

#include "drbf/linear_bf.hpp"

#include <cmath>

#include "drbf/csv_io.hpp"
#include "drbf/linalg.hpp"

namespace drbf {

namespace {

// W = R_xs^H R_x^{-1} for the given (possibly loaded) moments.
CMatrix wiener_weights(const CMatrix &r_xs, const CMatrix &r_x, const char *what) {
    return r_xs.adjoint() * linalg::inv_psd(r_x, what);
}

BeamformerWeights make(CMatrix w, std::string method, std::map<std::string, double> params = {}) {
    return {std::move(w), std::move(method), std::move(params), {}};
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

}  // namespace

void UncertaintySpec::validate() const {
    require(epsilon >= 0.0 && std::isfinite(epsilon), "UncertaintySpec: epsilon must be finite and >= 0");
    if (e_matrix) {
        require(linalg::is_psd(*e_matrix), "UncertaintySpec: e_matrix must be Hermitian PSD");
    }
    if (theta2) { require(*theta2 >= 1.0, "UncertaintySpec: theta2 must be >= 1"); }
    if (theta1) { require(*theta1 >= 0.0 && *theta1 <= 1.0, "UncertaintySpec: theta1 must lie in [0,1]"); }
}

double estimation_error(const CMatrix &w, const JointMoments &m) {
    m.validate();
    require(w.rows() == m.n_tx() && w.cols() == m.n_rx(), "estimation_error: W must be M x N");
    const CMatrix cross = w * m.r_xs;
    return (w * m.r_x * w.adjoint()).trace().real() - 2.0 * cross.trace().real() + m.r_s.trace().real();
}

double f2(const CMatrix &r_x, const CMatrix &r_xs, const CMatrix &r_s) {
    return linalg::rtrace(r_s) - linalg::rtrace(r_xs.adjoint() * linalg::inv_psd(r_x, "R_x") * r_xs);
}

double f1(const CMatrix &joint, Eigen::Index n_rx) {
    const auto m = JointMoments::split(joint, n_rx);
    return f2(m.r_x, m.r_xs, m.r_s);
}

BeamformerWeights wiener(const JointMoments &m) {
    m.validate();
    return make(wiener_weights(m.r_xs, m.r_x, "R_x"), "wiener");
}

BeamformerWeights wiener_ce(const CMatrix &h_hat, const CMatrix &r_s, const CMatrix &r_v) {
    const auto m = JointMoments::from_model(h_hat, r_s, r_v);
    return make(wiener_weights(m.r_xs, m.r_x, "H R_s H^H + R_v"), "wiener_ce");
}

BeamformerWeights dr_beamformer(const JointMoments &m, const UncertaintySpec &u) {
    m.validate();
    u.validate();
    const auto n = m.n_rx();
    const auto k = m.n_tx();
    const double eps = u.epsilon;
    const CMatrix r_hat = assemble_joint(m);

    // Lower bound of the set; only checked, the beamformer uses the upper bound.
    auto check_lower = [&](const CMatrix &lower, const char *name) -> std::vector<std::string> {
        if (linalg::min_eigenvalue(lower) < tol::kPsdFloor) {
            return {std::string(name) + ": lower bound of the uncertainty set is not PSD for epsilon = " +
                    std::to_string(eps)};
        }
        return {};
    };

    BeamformerWeights out;
    switch (u.kind) {
    case UncertaintyKind::additive_moment: {
        if (!u.e_matrix) { throw InvalidArgument("dr_beamformer: additive_moment requires e_matrix (N+M square)"); }
        const CMatrix &e = *u.e_matrix;
        require(e.rows() == n + k && e.cols() == n + k, "dr_beamformer: additive_moment E must be (N+M) x (N+M)");
        const auto eb = JointMoments::split(e, n);
        out = make(wiener_weights(m.r_xs + eps * eb.r_xs, m.r_x + eps * eb.r_x, "R_x + eps E_x"), "dr_additive_moment",
                   {{"epsilon", eps}});
        out.warnings = check_lower(r_hat - eps * e, "additive_moment");
        break;
    }
    case UncertaintyKind::diag_loading:
        out = make(wiener_weights(m.r_xs, m.r_x + eps * identity(n), "R_x + eps I"), "dr_diag_loading",
                   {{"epsilon", eps}});
        out.warnings = check_lower(r_hat - eps * identity(n + k), "diag_loading");
        break;
    case UncertaintyKind::generalized_dl: {
        if (!u.e_matrix) { throw InvalidArgument("dr_beamformer: generalized_dl requires e_matrix F (N x N)"); }
        const CMatrix &f = *u.e_matrix;
        require(f.rows() == n && f.cols() == n, "dr_beamformer: generalized_dl F must be N x N");
        out = make(wiener_weights(m.r_xs, m.r_x + eps * f, "R_x + eps F"), "dr_generalized_dl", {{"epsilon", eps}});
        out.warnings = check_lower(m.r_x - eps * f, "generalized_dl");
        break;
    }
    case UncertaintyKind::multiplicative:
        out = make(wiener_weights(m.r_xs, m.r_x, "R_x"), "dr_multiplicative");
        if (u.theta1) { out.params["theta1"] = *u.theta1; }
        if (u.theta2) { out.params["theta2"] = *u.theta2; }
        break;
    case UncertaintyKind::modified_multiplicative: {
        if (!u.theta2) { throw InvalidArgument("dr_beamformer: modified_multiplicative requires theta2"); }
        const double theta2 = *u.theta2;
        out = make(wiener_weights(m.r_xs, theta2 * m.r_x, "theta2 R_x"), "dr_modified_multiplicative",
                   {{"theta2", theta2}});
        if (u.theta1) {
            const double theta1 = *u.theta1;
            out.params["theta1"] = theta1;
            JointMoments lower{theta1 * m.r_x, m.r_xs, theta1 * m.r_s};
            out.warnings = check_lower(assemble_joint(lower), "modified_multiplicative");
        }
        break;
    }
    case UncertaintyKind::fnorm_ball:
    case UncertaintyKind::wasserstein_ball:
        throw InvalidArgument("dr_beamformer: F-norm and Wasserstein balls have no closed form; use "
                              "dr_wasserstein_beamformer");
    }
    return out;
}

BeamformerWeights capon(const CMatrix &h, const CMatrix &r_x, double epsilon) {
    require(epsilon >= 0.0, "capon: epsilon must be >= 0");
    require(r_x.rows() == h.rows() && r_x.cols() == h.rows(), "capon: R_x must be N x N");
    if (h.rows() < h.cols()) { throw SingularMatrix("capon: rank-deficient H (N < M)"); }
    const CMatrix loaded_inv = linalg::inv_psd(CMatrix(r_x + epsilon * identity(h.rows())), "R_x + eps I");
    const CMatrix proj = h.adjoint() * loaded_inv;
    CMatrix inner_inv;
    try {
        inner_inv = linalg::inv_psd(CMatrix(proj * h), "H^H (R_x + eps I)^{-1} H");
    } catch (const SingularMatrix &) {
        throw SingularMatrix("capon: rank-deficient H");
    }
    return make(inner_inv * proj, epsilon > 0.0 ? "capon_dl" : "capon", {{"epsilon", epsilon}});
}

BeamformerWeights zero_forcing(const CMatrix &h_hat) {
    if (h_hat.rows() < h_hat.cols()) { throw SingularMatrix("zero_forcing: rank-deficient H (N < M)"); }
    try {
        return make(linalg::inv_psd(CMatrix(h_hat.adjoint() * h_hat), "H^H H") * h_hat.adjoint(), "zf");
    } catch (const SingularMatrix &) {
        throw SingularMatrix("zero_forcing: rank-deficient H");
    }
}

CMatrix eigen_threshold_cov(const CMatrix &r_x, double mu) {
    require(mu >= 0.0 && mu <= 1.0, "eigen_threshold_cov: mu must lie in [0,1]");
    auto d = linalg::eig(r_x);
    if (d.values.size() == 0) { return r_x; }
    d.values = d.values.cwiseMax(mu * d.max());
    return linalg::symmetrize(d.reconstruct());
}

BeamformerWeights eigen_threshold_bf(const JointMoments &m, double mu) {
    m.validate();
    return make(wiener_weights(m.r_xs, eigen_threshold_cov(m.r_x, mu), "thresholded R_x"), "eigen_threshold",
                {{"mu", mu}});
}

BeamformerWeights dr_rs_rv_beamformer(const CMatrix &h, const CMatrix &r_s_hat, const CMatrix &r_v_hat, double eps1,
                                      double eps2, RsRvVariant variant) {
    require(eps1 >= 0.0 && eps2 >= 0.0, "dr_rs_rv_beamformer: epsilons must be >= 0");
    const auto n = h.rows();
    const auto k = h.cols();
    require(r_s_hat.rows() == k && r_s_hat.cols() == k, "dr_rs_rv_beamformer: R_s must be M x M");
    require(r_v_hat.rows() == n && r_v_hat.cols() == n, "dr_rs_rv_beamformer: R_v must be N x N");
    const CMatrix signal = h * r_s_hat * h.adjoint();

    switch (variant) {
    case RsRvVariant::rs_identity: {
        const CMatrix rs_up = r_s_hat + eps1 * identity(k);
        const CMatrix inner = signal + r_v_hat + eps1 * h * h.adjoint();
        return make(rs_up * h.adjoint() * linalg::inv_psd(inner, "H R_s H^H + R_v + eps1 H H^H"), "dr_rs_identity",
                    {{"eps1", eps1}});
    }
    case RsRvVariant::rs_channel_weighted: {
        CMatrix numerator = r_s_hat * h.adjoint();
        if (eps1 > 0.0) {
            CMatrix hh_inv;
            try {
                hh_inv = linalg::inv_psd(CMatrix(h * h.adjoint()), "H H^H");
            } catch (const SingularMatrix &) {
                throw SingularMatrix("dr_rs_rv_beamformer: channel-weighted set needs an invertible H H^H");
            }
            numerator += eps1 * h.adjoint() * hh_inv;
        }
        const CMatrix inner = signal + r_v_hat + eps1 * identity(n);
        return make(numerator * linalg::inv_psd(inner, "H R_s H^H + R_v + eps1 I"), "dr_rs_channel_weighted",
                    {{"eps1", eps1}});
    }
    case RsRvVariant::rv_identity: {
        const CMatrix inner = signal + r_v_hat + eps2 * identity(n);
        return make(r_s_hat * h.adjoint() * linalg::inv_psd(inner, "H R_s H^H + R_v + eps2 I"), "dr_rv_identity",
                    {{"eps2", eps2}});
    }
    }
    throw InvalidArgument("dr_rs_rv_beamformer: unknown variant");
}

BeamformerWeights multi_frame_wiener(const JointMoments &m, const BeamformerWeights &w_prev, double lambda,
                                     double epsilon0) {
    m.validate();
    require(lambda >= 0.0 && epsilon0 >= 0.0, "multi_frame_wiener: lambda and epsilon0 must be >= 0");
    require(w_prev.w.rows() == m.n_tx() && w_prev.w.cols() == m.n_rx(),
            "multi_frame_wiener: previous weights must be M x N");
    const CMatrix cross = m.r_xs + lambda * w_prev.w.adjoint();
    const CMatrix loaded = m.r_x + (lambda + epsilon0) * identity(m.n_rx());
    return make(wiener_weights(cross, loaded, "R_x + (lambda + eps0) I"), "multi_frame_wiener",
                {{"lambda", lambda}, {"epsilon0", epsilon0}});
}

void save_weights(const std::string &path, const BeamformerWeights &w) {
    csv::Container c;
    c.set_meta("kind", "beamformer");
    c.set_meta("method", w.method);
    for (const auto &[key, value] : w.params) { c.set_meta("param." + key, csv::format_double(value)); }
    c.add("W", w.w);
    csv::write_file(path, c);
}

BeamformerWeights load_weights(const std::string &path) {
    const auto c = csv::read_file(path);
    BeamformerWeights w;
    w.w = c.complex("W");
    w.method = c.meta_value("method");
    for (const auto &[key, value] : c.meta) {
        if (key.rfind("param.", 0) == 0) { w.params[key.substr(6)] = csv::parse_double(value); }
    }
    return w;
}

}  // namespace drbf
