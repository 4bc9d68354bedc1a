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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "drbf/config.hpp"
#include "drbf/harness.hpp"
#include "drbf/linear_bf.hpp"
#include "drbf/moments.hpp"
#include "drbf/version.hpp"

namespace py = pybind11;
using namespace drbf;

namespace {

ExperimentConfig config_from(const std::string &text, const std::vector<std::string> &overrides) {
    return parse_config_text(text, "<python>", overrides);
}

py::dict row_to_dict(const ResultRow &r) {
    py::dict d;
    d["method"] = r.method;
    d["params"] = r.params;
    d["pilot_size"] = r.pilot_size;
    d["metric_name"] = r.metric_name;
    d["metric_value"] = r.metric_value;
    d["metric_stderr"] = r.metric_stderr;
    d["train_time_s"] = r.train_time_s;
    d["episodes_ok"] = r.episodes_ok;
    d["episodes_total"] = r.episodes_total;
    d["error"] = r.error;
    return d;
}

PilotFrame frame_from(const CMatrix &s_pilot, const CMatrix &x_pilot) {
    PilotFrame f;
    f.s_block = s_pilot;
    f.x_block = x_pilot;
    f.true_h = CMatrix::Zero(x_pilot.rows(), s_pilot.rows());
    f.true_r_v = CMatrix::Identity(x_pilot.rows(), x_pilot.rows());
    f.validate();
    return f;
}

}  // namespace

PYBIND11_MODULE(_drbf, m) {
    m.doc() = "Distributionally robust receive beamforming";
    m.attr("__version__") = kVersion;

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<SingularMatrix>(m, "SingularMatrix", base.ptr());
    py::register_exception<NotConverged>(m, "NotConverged", base.ptr());

    m.def("method_names", [] {
        std::vector<std::string> names;
        for (const auto &info : method_registry()) { names.push_back(info.name); }
        return names;
    });
    m.def("preset_names", &preset_names);
    m.def("preset_config", [](const std::string &name) { return config_to_text(make_preset(name).config); },
          py::arg("name"));
    m.def(
        "normalize_config",
        [](const std::string &text, const std::vector<std::string> &overrides) {
            return config_to_text(config_from(text, overrides));
        },
        py::arg("text") = "", py::arg("overrides") = std::vector<std::string>{});

    m.def(
        "run_experiment",
        [](const std::string &text, const std::vector<std::string> &overrides) {
            const auto cfg = config_from(text, overrides);
            std::vector<ResultRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_experiment(cfg);
            }
            py::list out;
            for (const auto &r : rows) { out.append(row_to_dict(r)); }
            return out;
        },
        py::arg("text") = "", py::arg("overrides") = std::vector<std::string>{},
        "Runs the configured Monte-Carlo experiment and returns one dict per (method, pilot size).");

    m.def(
        "generate_episode",
        [](int pilot_size, std::uint64_t seed, const std::string &text, const std::vector<std::string> &overrides) {
            const auto ep = generate_episode(config_from(text, overrides), pilot_size, seed);
            py::dict d;
            d["s_pilot"] = ep.pilots.s_block;
            d["x_pilot"] = ep.pilots.x_block;
            d["h"] = ep.pilots.true_h;
            d["r_v"] = ep.pilots.true_r_v;
            d["s_test"] = ep.s_test;
            d["x_test"] = ep.x_test;
            d["noise_variance"] = ep.noise_variance;
            return d;
        },
        py::arg("pilot_size"), py::arg("seed"), py::arg("text") = "",
        py::arg("overrides") = std::vector<std::string>{});

    m.def(
        "fit",
        [](const std::string &method, const CMatrix &s_pilot, const CMatrix &x_pilot) {
            ExperimentConfig cfg;
            cfg.n_tx = static_cast<int>(s_pilot.rows());
            cfg.n_rx = static_cast<int>(x_pilot.rows());
            const auto spec = parse_method(method);
            if (!spec.tuned.empty()) { throw InvalidArgument("fit: \"auto\" parameters need an experiment to tune on"); }
            return fit_method(spec, frame_from(s_pilot, x_pilot), cfg);
        },
        py::arg("method"), py::arg("s_pilot"), py::arg("x_pilot"),
        "Fits a registered method on pilots; returns a callable mapping an N x P block to M x P estimates.");

    m.def("mse", &mse_metric, py::arg("s_true"), py::arg("s_hat"));
    m.def("ser", &ser_metric, py::arg("s_true"), py::arg("s_hat"));
    m.def(
        "wiener", [](const CMatrix &s_pilot, const CMatrix &x_pilot) {
            return wiener(estimate_moments(frame_from(s_pilot, x_pilot))).w;
        },
        py::arg("s_pilot"), py::arg("x_pilot"));
    m.def(
        "capon", [](const CMatrix &h, const CMatrix &r_x, double eps) { return capon(h, r_x, eps).w; }, py::arg("h"),
        py::arg("r_x"), py::arg("epsilon") = 0.0);
    m.def(
        "zero_forcing", [](const CMatrix &h) { return zero_forcing(h).w; }, py::arg("h"));
}
