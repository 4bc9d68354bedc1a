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

#include "drbf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <thread>

#include "drbf/csv_io.hpp"
#include "drbf/dro.hpp"
#include "drbf/linalg.hpp"
#include "drbf/linear_bf.hpp"
#include "drbf/rkhs.hpp"

namespace drbf {

namespace {

const std::vector<double> kLoadGrid{0.0, 0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0, 3000.0};
const std::vector<double> kKernelLoadGrid{1e-3, 3e-3, 0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0};
const std::vector<double> kBandwidthGrid{0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
const std::vector<double> kMuGrid{0.0, 0.001, 0.003, 0.01, 0.03, 0.1, 0.3};

std::vector<MethodInfo> build_registry() {
    return {
        {"wiener", "sample Wiener beamformer", {}, {}},
        {"wiener_dl", "Wiener with diagonal loading eps", {{"eps", 1.0}}, {{"eps", kLoadGrid}}},
        {"wiener_dr", "Wiener at the worst case of an F-norm ball of radius eps", {{"eps", 1.0}},
         {{"eps", kLoadGrid}}},
        {"wiener_ce", "channel-estimate Wiener beamformer", {}, {}},
        {"wiener_ce_dl", "channel-estimate Wiener with noise loading eps", {{"eps", 1.0}}, {{"eps", kLoadGrid}}},
        {"wiener_ce_dr", "channel-estimate Wiener robust to R_s within +-eps I", {{"eps", 0.1}},
         {{"eps", kLoadGrid}}},
        {"capon", "Capon (MVDR) beamformer on the estimated channel", {}, {}},
        {"capon_dl", "Capon with diagonal loading eps", {{"eps", 1.0}}, {{"eps", kLoadGrid}}},
        {"zf", "zero forcing on the estimated channel", {}, {}},
        {"kernel", "nominal Gaussian-kernel receiver, bandwidth bw x median distance", {{"bw", 1.0}},
         {{"bw", kBandwidthGrid}}},
        {"kernel_dl", "kernel receiver S (K + eps I)^{-1}", {{"eps", 0.1}, {"bw", 1.0}},
         {{"eps", kKernelLoadGrid}, {"bw", kBandwidthGrid}}},
        {"kernel_dl2", "kernel ridge receiver (1/L) S K (K^2/L + eps I)^{-1}", {{"eps", 0.1}, {"bw", 1.0}},
         {{"eps", kKernelLoadGrid}, {"bw", kBandwidthGrid}}},
        {"kernel_thr", "kernel receiver with eigenvalue thresholding mu", {{"mu", 0.01}, {"bw", 1.0}},
         {{"mu", kMuGrid}, {"bw", kBandwidthGrid}}},
        {"wiener_thr", "Wiener with eigenvalue thresholding mu", {{"mu", 0.01}}, {{"mu", kMuGrid}}},
        {"wiener_dr_wass", "Wiener at the worst case of a joint Wasserstein ball", {{"eps", 0.1}},
         {{"eps", kLoadGrid}}},
        {"wiener_dr_blocks", "Wasserstein balls on R_s (eps) and R_v (eps_v) separately",
         {{"eps", 0.1}, {"eps_v", 0.1}},
         {{"eps", kLoadGrid}, {"eps_v", kLoadGrid}}},
        {"wiener_ce_dr_ch", "channel-estimate Wiener robust to channel-weighted R_s errors", {{"eps", 0.1}},
         {{"eps", kLoadGrid}}},
    };
}

std::string format_params(const std::map<std::string, double> &params) {
    std::string out;
    for (const auto &[k, v] : params) {
        if (!out.empty()) { out += ';'; }
        out += k + "=" + csv::format_double(v);
    }
    return out;
}

Receiver linear_receiver(const BeamformerWeights &w) {
    if (!w.finite()) { throw Error(w.method + ": non-finite weights"); }
    return [weights = w.w](const CMatrix &x) { return CMatrix(weights * x); };
}

struct ChannelEstimates {
    CMatrix h;
    CMatrix r_s;
    CMatrix r_v;
};

ChannelEstimates channel_estimates(const NominalEstimates &est, const PilotFrame &pilots, bool rv_known) {
    if (est.h_hat.size() == 0) {
        throw SingularMatrix("insufficient pilot excitation: channel cannot be estimated");
    }
    return {est.h_hat, est.moments.r_s, rv_known ? pilots.true_r_v : est.r_v_hat};
}

double nonnegative(const MethodSpec &m, const std::string &key, double fallback) {
    const double v = m.param(key, fallback);
    require(v >= 0.0 && std::isfinite(v), m.name + ": parameter " + key + " must be finite and >= 0");
    return v;
}

Receiver kernel_receiver(const MethodSpec &m, const PilotFrame &pilots, KernelMethod kind, double param) {
    const double scale = m.param("bw", 1.0);
    require(scale > 0.0, m.name + ": bw must be > 0");
    const KernelSpec spec = median_heuristic_kernel(lift_columns(pilots.x_block), scale);
    auto est = std::make_shared<const KernelEstimator>(fit_kernel_estimator(pilots, spec, kind, param));
    if (!est->weights.allFinite()) { throw Error(m.name + ": non-finite weights"); }
    return [est](const CMatrix &x) { return predict_block(*est, x); };
}

void run_parallel(int count, int jobs, const std::function<void(int)> &task) {
    if (jobs <= 0) { jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }
    jobs = std::min(jobs, count);
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) { task(i); }
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) { task(i); }
        });
    }
    for (auto &th : pool) { th.join(); }
}

std::vector<ResultRow> aggregate(const ExperimentConfig &cfg, int pilot_size,
                                 const std::vector<std::vector<ResultRow>> &per_episode) {
    std::vector<ResultRow> out;
    for (std::size_t k = 0; k < cfg.methods.size(); ++k) {
        ResultRow row;
        row.method = cfg.methods[k].display();
        row.params = format_params(cfg.methods[k].params);
        row.pilot_size = pilot_size;
        row.metric_name = cfg.metric_name();
        row.episodes_total = static_cast<int>(per_episode.size());
        double sum = 0.0;
        double sum_sq = 0.0;
        double time = 0.0;
        for (const auto &ep : per_episode) {
            const auto &r = ep[k];
            if (r.episodes_ok > 0) {
                ++row.episodes_ok;
                sum += r.metric_value;
                sum_sq += r.metric_value * r.metric_value;
                time += r.train_time_s;
            } else if (row.error.empty()) {
                row.error = r.error;
            }
        }
        if (row.episodes_ok > 0) {
            const double n = row.episodes_ok;
            row.metric_value = sum / n;
            row.train_time_s = time / n;
            const double var = n > 1 ? std::max(0.0, (sum_sq - n * row.metric_value * row.metric_value) / (n - 1)) : 0.0;
            row.metric_stderr = std::sqrt(var / n);
        } else {
            row.metric_value = std::numeric_limits<double>::quiet_NaN();
        }
        out.push_back(std::move(row));
    }
    return out;
}

// Product of the grids, each sorted ascending, in lexicographic order.
std::vector<std::map<std::string, double>> grid_product(const std::map<std::string, std::vector<double>> &grids) {
    std::vector<std::map<std::string, double>> points{{}};
    for (const auto &[key, values] : grids) {
        require(!values.empty(), "tune_parameter: empty grid for " + key);
        std::vector<double> sorted = values;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<std::map<std::string, double>> next;
        for (const auto &p : points) {
            for (double v : sorted) {
                auto q = p;
                q[key] = v;
                next.push_back(std::move(q));
            }
        }
        points = std::move(next);
    }
    return points;
}

}  // namespace

double MethodSpec::param(const std::string &key, double fallback) const {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

const std::vector<MethodInfo> &method_registry() {
    static const std::vector<MethodInfo> registry = build_registry();
    return registry;
}

const MethodInfo &method_info(const std::string &name) {
    for (const auto &m : method_registry()) {
        if (m.name == name) { return m; }
    }
    throw InvalidArgument("unknown method '" + name + "'");
}

MethodSpec parse_method(const std::string &spec_text) {
    MethodSpec m;
    std::string text = spec_text;
    const auto eq_pos = text.find('=');
    if (eq_pos != std::string::npos && eq_pos < text.find(':')) {
        m.label = text.substr(0, eq_pos);
        text = text.substr(eq_pos + 1);
    }
    const auto colon = text.find(':');
    m.name = text.substr(0, colon);
    const auto &info = method_info(m.name);
    if (colon == std::string::npos) { return m; }
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ';')) {
        if (item.empty()) { continue; }
        const auto eq = item.find('=');
        if (eq == std::string::npos) { throw InvalidArgument("method '" + text + "': expected key=value, got '" + item + "'"); }
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (!info.defaults.count(key)) {
            throw InvalidArgument("method '" + m.name + "' has no parameter '" + key + "'");
        }
        if (value == "auto") {
            m.tuned.push_back(key);
        } else {
            try {
                m.params[key] = csv::parse_double(value);
            } catch (const Error &) {
                throw InvalidArgument("method '" + m.name + "': bad value for " + key + ": '" + value + "'");
            }
        }
    }
    return m;
}

std::string format_method(const MethodSpec &m) {
    std::string out = m.label.empty() ? m.name : m.label + "=" + m.name;
    std::string args = format_params(m.params);
    for (const auto &k : m.tuned) { args += (args.empty() ? "" : ";") + k + "=auto"; }
    if (!args.empty()) { out += ":" + args; }
    return out;
}

void ExperimentConfig::validate() const {
    require(n_tx >= 1, "n_tx must be >= 1");
    require(n_rx >= 1, "n_rx must be >= 1");
    require(n_paths >= 1, "n_paths must be >= 1");
    require(!std::isnan(snr_db), "snr_db must be a number");
    require(!pilot_sizes.empty(), "pilot_sizes must be non-empty");
    for (int l : pilot_sizes) { require(l >= 1, "pilot_sizes entries must be >= 1"); }
    require(test_len >= 1, "test_len must be >= 1");
    require(episodes >= 1, "episodes must be >= 1");
    require(tune_episodes >= 1, "tune_episodes must be >= 1");
    noise().validate();
    require(!methods.empty(), "methods must be non-empty");
    for (const auto &m : methods) { (void)method_info(m.name); }
}

NoiseSpec ExperimentConfig::noise() const { return {snr_db, impulse_fraction, impulse_max_amplitude}; }

double mse_metric(const CMatrix &s_true, const CMatrix &s_hat) {
    require(s_true.rows() == s_hat.rows() && s_true.cols() == s_hat.cols(), "mse_metric: shape mismatch");
    require(s_true.size() > 0, "mse_metric: empty blocks");
    return (s_true - s_hat).squaredNorm() / static_cast<double>(s_true.size());
}

double ser_metric(const CMatrix &s_true_qpsk, const CMatrix &s_hat) {
    require(s_true_qpsk.rows() == s_hat.rows() && s_true_qpsk.cols() == s_hat.cols(), "ser_metric: shape mismatch");
    require(s_true_qpsk.size() > 0, "ser_metric: empty blocks");
    Eigen::Index errors = 0;
    for (Eigen::Index i = 0; i < s_true_qpsk.rows(); ++i) {
        const double amp = std::abs(s_true_qpsk(i, 0).real());
        for (Eigen::Index j = 0; j < s_true_qpsk.cols(); ++j) {
            const Complex s = s_true_qpsk(i, j);
            const double tol = 1e-9 * std::max(1.0, amp);
            if (amp == 0.0 || std::abs(std::abs(s.real()) - amp) > tol || std::abs(std::abs(s.imag()) - amp) > tol) {
                throw InvalidArgument("ser_metric: truth entry (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") is not a QPSK symbol");
            }
            // Nearest point of {+-a +- ja} is decided by the quadrant alone.
            const Complex e = s_hat(i, j);
            const bool same = (e.real() >= 0.0) == (s.real() > 0.0) && (e.imag() >= 0.0) == (s.imag() > 0.0);
            errors += same ? 0 : 1;
        }
    }
    return static_cast<double>(errors) / static_cast<double>(s_true_qpsk.size());
}

EpisodeData generate_episode(const ExperimentConfig &cfg, int pilot_size, std::uint64_t episode_seed) {
    const auto scene = generate_scene(cfg.n_tx, cfg.n_rx, cfg.n_paths, derive_seed(episode_seed, 1));
    const CMatrix h = synthesize_channel(scene);
    const CMatrix r_s = CMatrix::Identity(cfg.n_tx, cfg.n_tx);
    const NoiseSpec noise = cfg.noise();
    const double sigma2 = noise_variance_for_snr(h, r_s, cfg.snr_db);

    EpisodeData ep;
    ep.noise_variance = sigma2;
    ep.pilots.s_block = generate_signals(cfg.signal_kind, cfg.n_tx, pilot_size, r_s, derive_seed(episode_seed, 2));
    auto pilot_tx = transmit_with_variance(h, ep.pilots.s_block, sigma2, noise, derive_seed(episode_seed, 3));
    ep.pilots.x_block = std::move(pilot_tx.x_block);
    ep.pilots.true_h = h;
    ep.pilots.true_r_v = pilot_tx.r_v;
    ep.s_test = generate_signals(cfg.signal_kind, cfg.n_tx, cfg.test_len, r_s, derive_seed(episode_seed, 4));
    ep.x_test = transmit_with_variance(h, ep.s_test, sigma2, noise, derive_seed(episode_seed, 5)).x_block;
    return ep;
}

Receiver fit_method(const MethodSpec &m, const PilotFrame &pilots, const ExperimentConfig &cfg) {
    const auto &name = m.name;
    const auto est = estimate_all(pilots);
    const auto &mom = est.moments;

    if (name == "wiener") { return linear_receiver(wiener(mom)); }
    if (name == "wiener_dl") {
        return linear_receiver(dr_beamformer(mom, {UncertaintyKind::diag_loading, nonnegative(m, "eps", 1.0), {}, {}, {}}));
    }
    if (name == "wiener_dr" || name == "wiener_dr_wass") {
        const auto ball = name == "wiener_dr" ? DroBall::joint_fnorm : DroBall::joint_wasserstein;
        return linear_receiver(dr_wasserstein_beamformer(mom, nonnegative(m, "eps", 1.0), SolverConfig{}, ball));
    }
    if (name == "wiener_dr_blocks") {
        return linear_receiver(dr_wasserstein_beamformer(mom, nonnegative(m, "eps", 0.1), SolverConfig{},
                                                         DroBall::blocks_wasserstein, nonnegative(m, "eps_v", 0.1)));
    }
    if (name == "wiener_thr") { return linear_receiver(eigen_threshold_bf(mom, nonnegative(m, "mu", 0.01))); }
    if (name == "wiener_ce") {
        const auto ce = channel_estimates(est, pilots, cfg.rv_known);
        return linear_receiver(wiener_ce(ce.h, ce.r_s, ce.r_v));
    }
    if (name == "wiener_ce_dl") {
        const auto ce = channel_estimates(est, pilots, cfg.rv_known);
        return linear_receiver(
            dr_rs_rv_beamformer(ce.h, ce.r_s, ce.r_v, 0.0, nonnegative(m, "eps", 1.0), RsRvVariant::rv_identity));
    }
    if (name == "wiener_ce_dr" || name == "wiener_ce_dr_ch") {
        const auto ce = channel_estimates(est, pilots, cfg.rv_known);
        const auto variant = name == "wiener_ce_dr" ? RsRvVariant::rs_identity : RsRvVariant::rs_channel_weighted;
        return linear_receiver(dr_rs_rv_beamformer(ce.h, ce.r_s, ce.r_v, nonnegative(m, "eps", 0.1), 0.0, variant));
    }
    if (name == "capon" || name == "capon_dl") {
        const auto ce = channel_estimates(est, pilots, cfg.rv_known);
        const double eps = name == "capon" ? 0.0 : nonnegative(m, "eps", 1.0);
        return linear_receiver(capon(ce.h, mom.r_x, eps));
    }
    if (name == "zf") { return linear_receiver(zero_forcing(channel_estimates(est, pilots, cfg.rv_known).h)); }
    if (name == "kernel") { return kernel_receiver(m, pilots, KernelMethod::nominal, 0.0); }
    if (name == "kernel_dl") { return kernel_receiver(m, pilots, KernelMethod::kdl_k, nonnegative(m, "eps", 0.1)); }
    if (name == "kernel_dl2") { return kernel_receiver(m, pilots, KernelMethod::kdl_k2, nonnegative(m, "eps", 0.1)); }
    if (name == "kernel_thr") {
        return kernel_receiver(m, pilots, KernelMethod::eigen_threshold, nonnegative(m, "mu", 0.01));
    }
    throw InvalidArgument("unknown method '" + name + "'");
}

std::vector<ResultRow> run_episode(const ExperimentConfig &cfg, int pilot_size, std::uint64_t episode_seed) {
    const auto data = generate_episode(cfg, pilot_size, episode_seed);
    std::vector<ResultRow> rows;
    rows.reserve(cfg.methods.size());
    for (const auto &m : cfg.methods) {
        ResultRow row;
        row.method = m.display();
        row.params = format_params(m.params);
        row.pilot_size = pilot_size;
        row.metric_name = cfg.metric_name();
        row.episodes_total = 1;
        try {
            const auto t0 = std::chrono::steady_clock::now();
            const Receiver rx = fit_method(m, data.pilots, cfg);
            const auto t1 = std::chrono::steady_clock::now();
            const CMatrix s_hat = rx(data.x_test);
            const double value = cfg.signal_kind == SignalKind::qpsk ? ser_metric(data.s_test, s_hat)
                                                                     : mse_metric(data.s_test, s_hat);
            if (!std::isfinite(value)) { throw Error(m.name + ": non-finite metric"); }
            row.metric_value = value;
            row.train_time_s = std::chrono::duration<double>(t1 - t0).count();
            row.episodes_ok = 1;
        } catch (const std::exception &e) {
            row.metric_value = std::numeric_limits<double>::quiet_NaN();
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::uint64_t evaluation_seed(std::uint64_t master_seed, int index) {
    return derive_seed(master_seed, static_cast<std::uint64_t>(index), 0);
}

std::uint64_t tuning_seed(std::uint64_t master_seed, int index) {
    return derive_seed(master_seed, static_cast<std::uint64_t>(index), 1);
}

std::vector<ResultRow> run_episodes(const ExperimentConfig &cfg, int pilot_size,
                                    const std::vector<std::uint64_t> &seeds) {
    std::vector<std::vector<ResultRow>> per_episode(seeds.size());
    run_parallel(static_cast<int>(seeds.size()), cfg.jobs,
                 [&](int i) { per_episode[static_cast<std::size_t>(i)] = run_episode(cfg, pilot_size, seeds[static_cast<std::size_t>(i)]); });
    return aggregate(cfg, pilot_size, per_episode);
}

TuneResult tune_parameter(const ExperimentConfig &cfg, const MethodSpec &method, int pilot_size,
                          const std::map<std::string, std::vector<double>> &grids) {
    require(!grids.empty(), "tune_parameter: no grid given");
    const auto points = grid_product(grids);
    ExperimentConfig tcfg = cfg;
    tcfg.methods.clear();
    for (const auto &p : points) {
        MethodSpec variant = method;
        variant.tuned.clear();
        variant.label.clear();
        for (const auto &[k, v] : p) { variant.params[k] = v; }
        tcfg.methods.push_back(std::move(variant));
    }
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < cfg.tune_episodes; ++i) { seeds.push_back(tuning_seed(cfg.master_seed, i)); }
    const auto rows = run_episodes(tcfg, pilot_size, seeds);

    // Prefer grid points that never failed; fall back to partial successes.
    int best_ok = 0;
    for (const auto &r : rows) { best_ok = std::max(best_ok, r.episodes_ok); }
    if (best_ok == 0) {
        throw Error("tune_parameter: every grid point failed for " + method.name + " at pilot size " +
                    std::to_string(pilot_size) + (rows.empty() ? "" : ": " + rows.front().error));
    }
    TuneResult out;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.evaluated.emplace_back(points[i], rows[i].metric_value);
        if (rows[i].episodes_ok != best_ok) { continue; }
        if (!best || rows[i].metric_value < rows[*best].metric_value) { best = i; }
    }
    out.best = points[*best];
    out.best_metric = rows[*best].metric_value;
    return out;
}

double tune_parameter(const ExperimentConfig &cfg, const MethodSpec &method, int pilot_size, const std::string &key,
                      const std::vector<double> &grid) {
    return tune_parameter(cfg, method, pilot_size, {{key, grid}}).best.at(key);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig &cfg) {
    cfg.validate();
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < cfg.episodes; ++i) { seeds.push_back(evaluation_seed(cfg.master_seed, i)); }
    std::vector<ResultRow> out;
    for (int l : cfg.pilot_sizes) {
        ExperimentConfig run = cfg;
        for (auto &m : run.methods) {
            if (m.tuned.empty()) { continue; }
            const auto &info = method_info(m.name);
            std::map<std::string, std::vector<double>> grids;
            for (const auto &key : m.tuned) { grids[key] = info.tuning_grid.at(key); }
            try {
                const auto tuned = tune_parameter(cfg, m, l, grids);
                for (const auto &[k, v] : tuned.best) { m.params[k] = v; }
            } catch (const Error &) {
                // Left at defaults; evaluation reports the failures.
            }
            m.tuned.clear();
        }
        auto rows = run_episodes(run, l, seeds);
        out.insert(out.end(), rows.begin(), rows.end());
    }
    return out;
}

void write_results_csv(const std::string &path, const std::vector<ResultRow> &rows,
                       const std::map<std::pair<std::string, int>, double> &reference) {
    std::ofstream os(path);
    if (!os) { throw Error("cannot write " + path); }
    os << "method,pilot_size,metric_name,metric_value,train_time_s,episodes_ok,episodes_total,metric_stderr,params";
    if (!reference.empty()) { os << ",published_value"; }
    os << '\n';
    for (const auto &r : rows) {
        os << r.method << ',' << r.pilot_size << ',' << r.metric_name << ',' << csv::format_double(r.metric_value) << ','
           << csv::format_double(r.train_time_s) << ',' << r.episodes_ok << ',' << r.episodes_total << ','
           << csv::format_double(r.metric_stderr) << ',' << r.params;
        if (!reference.empty()) {
            const auto it = reference.find({r.method, r.pilot_size});
            os << ',';
            if (it != reference.end()) { os << csv::format_double(it->second); }
        }
        os << '\n';
    }
    if (!os) { throw Error("failed writing " + path); }
}

void write_plot_script(const std::string &path, const std::string &csv_name, const std::vector<ResultRow> &rows) {
    std::ofstream os(path);
    if (!os) { throw Error("cannot write " + path); }
    std::vector<std::string> methods;
    for (const auto &r : rows) {
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) { methods.push_back(r.method); }
    }
    const std::string metric = rows.empty() ? "mse" : rows.front().metric_name;
    os << "# gnuplot script generated from " << csv_name << "\n";
    os << "set terminal pngcairo size 800,600\n";
    os << "set output '" << csv_name.substr(0, csv_name.rfind('.')) << ".png'\n";
    os << "set xlabel 'pilot size'\nset ylabel '" << metric << "'\nset key outside right\nset grid\n";
    if (metric == "ser") { os << "set logscale y\n"; }
    for (std::size_t i = 0; i < methods.size(); ++i) {
        os << "$m" << i << " << EOD\n";
        for (const auto &r : rows) {
            if (r.method == methods[i] && r.episodes_ok > 0) {
                os << r.pilot_size << ' ' << csv::format_double(r.metric_value) << '\n';
            }
        }
        os << "EOD\n";
    }
    os << "plot ";
    for (std::size_t i = 0; i < methods.size(); ++i) {
        os << (i ? ", \\\n     " : "") << "$m" << i << " using 1:2 with linespoints title '" << methods[i] << "'";
    }
    os << '\n';
}

}  // namespace drbf
