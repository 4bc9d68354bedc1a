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

#include "drbf/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace drbf::csv {

namespace {

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) { out.push_back(field); }
    if (!line.empty() && line.back() == sep) { out.emplace_back(); }
    return out;
}

Eigen::Index parse_index(const std::string &text, int line_no) {
    long long v = 0;
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end || v < 0) {
        throw InvalidArgument("csv line " + std::to_string(line_no) + ": bad dimension '" + text + "'");
    }
    return static_cast<Eigen::Index>(v);
}

bool next_line(std::istream &is, std::string &line, int &line_no) {
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') { line.pop_back(); }
        if (!line.empty()) { return true; }
    }
    return false;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

double parse_double(const std::string &text) {
    double v = 0.0;
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) { throw InvalidArgument("not a number: '" + text + "'"); }
    return v;
}

const CMatrix &Container::complex(const std::string &name) const {
    for (const auto &[key, value] : matrices) {
        if (key != name) { continue; }
        if (const auto *m = std::get_if<CMatrix>(&value)) { return *m; }
        throw InvalidArgument("csv: matrix '" + name + "' is real, expected complex");
    }
    throw InvalidArgument("csv: missing matrix '" + name + "'");
}

const RMatrix &Container::real(const std::string &name) const {
    for (const auto &[key, value] : matrices) {
        if (key != name) { continue; }
        if (const auto *m = std::get_if<RMatrix>(&value)) { return *m; }
        throw InvalidArgument("csv: matrix '" + name + "' is complex, expected real");
    }
    throw InvalidArgument("csv: missing matrix '" + name + "'");
}

bool Container::has_meta(const std::string &key) const {
    for (const auto &kv : meta) {
        if (kv.first == key) { return true; }
    }
    return false;
}

std::string Container::meta_value(const std::string &key) const {
    for (const auto &kv : meta) {
        if (kv.first == key) { return kv.second; }
    }
    throw InvalidArgument("csv: missing meta key '" + key + "'");
}

void write(std::ostream &os, const Container &c) {
    os << "drbf-csv,1\n";
    for (const auto &[key, value] : c.meta) {
        require(key.find_first_of(",\n") == std::string::npos && value.find('\n') == std::string::npos,
                "csv: meta entries may not contain separators");
        os << "meta," << key << ',' << value << '\n';
    }
    for (const auto &[name, value] : c.matrices) {
        require(name.find_first_of(",\n") == std::string::npos, "csv: matrix names may not contain separators");
        std::visit(
            [&](const auto &m) {
                using M = std::decay_t<decltype(m)>;
                constexpr bool is_complex = std::is_same_v<M, CMatrix>;
                os << "matrix," << name << ',' << m.rows() << ',' << m.cols() << ','
                   << (is_complex ? "complex" : "real") << '\n';
                for (Eigen::Index i = 0; i < m.rows(); ++i) {
                    for (Eigen::Index j = 0; j < m.cols(); ++j) {
                        if (j) { os << ','; }
                        if constexpr (is_complex) {
                            os << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag());
                        } else {
                            os << format_double(m(i, j));
                        }
                    }
                    os << '\n';
                }
            },
            value);
    }
}

Container read(std::istream &is) {
    Container c;
    std::string line;
    int line_no = 0;
    if (!next_line(is, line, line_no) || line != "drbf-csv,1") {
        throw InvalidArgument("csv: missing 'drbf-csv,1' header");
    }
    while (next_line(is, line, line_no)) {
        const auto fields = split(line, ',');
        if (fields.at(0) == "meta") {
            if (fields.size() < 3) { throw InvalidArgument("csv line " + std::to_string(line_no) + ": bad meta row"); }
            // value may itself contain commas
            c.set_meta(fields[1], line.substr(fields[0].size() + fields[1].size() + 2));
            continue;
        }
        if (fields.at(0) != "matrix" || fields.size() != 5) {
            throw InvalidArgument("csv line " + std::to_string(line_no) + ": expected a matrix header");
        }
        const auto rows = parse_index(fields[2], line_no);
        const auto cols = parse_index(fields[3], line_no);
        const bool is_complex = fields[4] == "complex";
        if (!is_complex && fields[4] != "real") {
            throw InvalidArgument("csv line " + std::to_string(line_no) + ": unknown scalar type '" + fields[4] + "'");
        }
        CMatrix cm(is_complex ? rows : 0, is_complex ? cols : 0);
        RMatrix rm(is_complex ? 0 : rows, is_complex ? 0 : cols);
        const auto per_row = static_cast<std::size_t>(is_complex ? 2 * cols : cols);
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (!next_line(is, line, line_no)) {
                throw InvalidArgument("csv: matrix '" + fields[1] + "' is truncated");
            }
            const auto values = split(line, ',');
            if (values.size() != per_row) {
                throw InvalidArgument("csv line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(per_row) + " values");
            }
            for (Eigen::Index j = 0; j < cols; ++j) {
                if (is_complex) {
                    cm(i, j) = {parse_double(values[2 * j]), parse_double(values[2 * j + 1])};
                } else {
                    rm(i, j) = parse_double(values[j]);
                }
            }
        }
        if (is_complex) {
            c.add(fields[1], cm);
        } else {
            c.add(fields[1], rm);
        }
    }
    return c;
}

void write_file(const std::string &path, const Container &c) {
    std::ofstream os(path, std::ios::binary);
    if (!os) { throw Error("cannot open '" + path + "' for writing"); }
    write(os, c);
    if (!os) { throw Error("write to '" + path + "' failed"); }
}

Container read_file(const std::string &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) { throw Error("cannot open '" + path + "' for reading"); }
    return read(is);
}

}  // namespace drbf::csv
