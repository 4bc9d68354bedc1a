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

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "drbf/types.hpp"

namespace drbf::csv {

// Text container for named matrices, used for frames, beamformer weights and
// kernel estimators:
//
//   drbf-csv,1
//   meta,<key>,<value>
//   matrix,<name>,<rows>,<cols>,complex
//   re,im,re,im,...          <- one line per matrix row, 2*cols numbers
//   matrix,<name>,<rows>,<cols>,real
//   v,v,...                  <- one line per matrix row, cols numbers
//
// Numbers use the shortest round-trip decimal form, so write/read is bit-exact.

struct Container {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::pair<std::string, std::variant<CMatrix, RMatrix>>> matrices;

    void add(const std::string &name, const CMatrix &m) { matrices.emplace_back(name, m); }
    void add(const std::string &name, const RMatrix &m) { matrices.emplace_back(name, m); }
    void set_meta(const std::string &key, const std::string &value) { meta.emplace_back(key, value); }

    /// Throws InvalidArgument when missing or stored with the other scalar type.
    [[nodiscard]] const CMatrix &complex(const std::string &name) const;
    [[nodiscard]] const RMatrix &real(const std::string &name) const;
    [[nodiscard]] std::string meta_value(const std::string &key) const;
    [[nodiscard]] bool has_meta(const std::string &key) const;
};

void write(std::ostream &os, const Container &c);
[[nodiscard]] Container read(std::istream &is);

void write_file(const std::string &path, const Container &c);
[[nodiscard]] Container read_file(const std::string &path);

/// Shortest representation that parses back to the same double.
[[nodiscard]] std::string format_double(double v);
[[nodiscard]] double parse_double(const std::string &text);

}  // namespace drbf::csv
