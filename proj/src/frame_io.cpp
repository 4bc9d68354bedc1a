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
#include "drbf/scene.hpp"

namespace drbf {

void save_frame(const std::string &path, const PilotFrame &frame) {
    frame.validate();
    csv::Container c;
    c.set_meta("kind", "pilot_frame");
    c.add("S", frame.s_block);
    c.add("X", frame.x_block);
    c.add("H", frame.true_h);
    c.add("R_v", frame.true_r_v);
    csv::write_file(path, c);
}

PilotFrame load_frame(const std::string &path) {
    const auto c = csv::read_file(path);
    PilotFrame frame{c.complex("S"), c.complex("X"), c.complex("H"), c.complex("R_v")};
    frame.validate();
    return frame;
}

}  // namespace drbf
