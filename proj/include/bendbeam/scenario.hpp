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

#ifndef BENDBEAM_SCENARIO_HPP
#define BENDBEAM_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

// Scenario files are JSON; the grammar is documented in docs/config.md.

namespace bendbeam
{
    struct TrajectoryConfig
    {
        std::string kind = "parabola"; // "parabola" or "tabulated"
        double beta = 0.0008;
        std::array<double, 2> z_range{0.5, 15.0};
        std::vector<double> z; // tabulated nodes
        std::vector<double> x;

        bool operator==(const TrajectoryConfig &) const = default;
    };

    struct ObstacleConfig
    {
        std::array<double, 2> x{0.0, 0.0};
        std::array<double, 2> z{0.0, 0.0};

        bool operator==(const ObstacleConfig &) const = default;
    };

    struct GridConfig
    {
        int nx = 400;
        int nz = 400;
        double x_margin = 0.05;
        double z_extent = 1.1;

        bool operator==(const GridConfig &) const = default;
    };

    struct SolverOverrides
    {
        double rho_init = 0.0;
        double rho_first_penalty = 1e-2;
        double rho_growth = 3.0;
        double rank_gap_tol = 1e-4;
        double obj_tol = 1e-6;
        int max_sca_iters = 100;
        int max_penalty_rounds = 12;
        int sdp_max_iterations = 200;
        std::string warm_start = "auto"; // "auto" (tangent for parabolas), "tangent" or "identity"

        bool operator==(const SolverOverrides &) const = default;
    };

    struct ScenarioConfig
    {
        double carrier_frequency_hz = 300e9;
        int num_antennas = 400;
        std::optional<double> spacing; // meters; empty means half a wavelength
        TrajectoryConfig trajectory;
        int num_samples = 200;
        std::string scheme = "abf";
        std::vector<std::string> schemes{"abf", "dbf", "tangent"};
        std::vector<ObstacleConfig> obstacles;
        SolverOverrides solver;
        GridConfig grid;
        std::string tangent_integrand = "paraxial"; // or "exact"
        std::string output_dir = "out";
        std::uint64_t seed = 0;

        bool operator==(const ScenarioConfig &) const = default;

        // Throws ConfigError naming the first offending field
        void validate() const;
    };

    inline const std::vector<std::string> &known_schemes()
    {
        static const std::vector<std::string> names{"abf", "dbf", "tangent"};
        return names;
    }

    // Unknown keys and type mismatches raise ConfigError; missing keys take defaults
    ScenarioConfig config_from_json(const nlohmann::json &j);
    nlohmann::json config_to_json(const ScenarioConfig &cfg);

    ScenarioConfig parse_config(const std::string &text);
    ScenarioConfig load_config(const std::string &path);
    std::string dump_config(const ScenarioConfig &cfg);

    // FNV-1a 64 of the canonical serialization, as 16 hex digits
    std::string config_hash(const ScenarioConfig &cfg);

    // Sweep parameter names: "beta", "N", "M"
    ScenarioConfig with_parameter(ScenarioConfig cfg, const std::string &param, double value);
}

#endif
