// SPDX-License-Identifier: Apache-2.0
//
// bendbeam: near-field bending beam synthesis for uniform linear arrays
// Copyright (C) 2026 The bendbeam authors
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

#ifndef BENDBEAM_IO_HPP
#define BENDBEAM_IO_HPP

#include "bendbeam/channel.hpp"
#include "bendbeam/fieldmap.hpp"
#include "bendbeam/tangent.hpp"

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

/*!MD
# Artifact formats

All text artifacts use '\n' line endings and printf "%.12e" for reals, so that
the same run produces byte-identical files.

- Beamformer CSV: header `index,re,im`, then one row per antenna (0-based index).
  A comment line `# scheme=<abf|dbf>` precedes the header.
- Phase profile CSV: header `index,x,phase_rad`.
- Field grid CSV: first line `z\x,<x_0>,...,<x_{nx-1}>` (the x axis), then one line per
  z row: `<z_i>,<p_i0>,...,<p_i,nx-1>` with linear power values, rows ordered by increasing z.
- Field PGM: binary P5, width nx, height nz, maxval 255. The top image row is the largest z.
  Gray level g = round(255 (L + floor) / floor) with L = 10 log10(p / p_max) clamped to
  [-floor, 0] dB (default floor 80 dB); p_max is the map maximum, so the map is normalized.
- Profiles CSV: header `index,x,z,<label_1>,...` with linear powers per scheme.
- Metrics JSON: array of objects {scheme, p_min, p_user, p_max, ripple_db}.
MD!*/

namespace bendbeam
{
    std::string format_real(double v);

    void write_beamformer_csv(std::ostream &os, const Beamformer &w);
    Beamformer read_beamformer_csv(std::istream &is);

    void write_phase_profile_csv(std::ostream &os, const PhaseProfile &p, const ArrayGeometry &geom);

    void write_grid_csv(std::ostream &os, const FieldGrid &grid);
    void write_grid_pgm(std::ostream &os, const FieldGrid &grid, double floor_db = 80.0);

    void write_profiles_csv(std::ostream &os, const std::vector<TrajectoryProfile> &profiles);

    nlohmann::json metrics_to_json(const std::vector<ComparisonMetrics> &metrics);

    void write_text_file(const std::string &path, const std::string &content);
    std::string read_text_file(const std::string &path);
}

#endif
