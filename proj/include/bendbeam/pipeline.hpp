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

#ifndef BENDBEAM_PIPELINE_HPP
#define BENDBEAM_PIPELINE_HPP

#include "bendbeam/channel.hpp"
#include "bendbeam/fieldmap.hpp"
#include "bendbeam/geometry.hpp"
#include "bendbeam/maxmin.hpp"
#include "bendbeam/scenario.hpp"
#include "bendbeam/tangent.hpp"

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#define BENDBEAM_VERSION "0.1.0"

namespace bendbeam
{
    struct Scenario
    {
        ArrayGeometry geom;
        Trajectory traj;
        SamplePoints samples;
        std::vector<Obstacle> obstacles;
        ChannelMatrix H;
    };

    Scenario build_scenario(const ScenarioConfig &cfg);

    SolverConfig solver_config_for(const ScenarioConfig &cfg, Scheme scheme);
    GridSpec grid_spec_for(const ScenarioConfig &cfg, const Trajectory &traj);

    struct SchemeRun
    {
        std::string scheme;
        bool ok = false;        // a beamformer was produced
        bool converged = false; // solver reached rank one (always true for tangent)
        std::string error;
        std::optional<Beamformer> w;
        std::optional<SolverState> state;  // abf/dbf only
        std::optional<PhaseProfile> phases; // tangent only
        double seconds = 0.0;
    };

    // Failures are captured in the result, never thrown (config errors excepted)
    SchemeRun run_scheme(const Scenario &sc, const ScenarioConfig &cfg, const std::string &scheme);

    struct Comparison
    {
        std::vector<SchemeRun> runs;                // one per requested scheme, in order
        std::vector<TrajectoryProfile> profiles;    // successful runs only
        std::vector<ComparisonMetrics> metrics;
    };

    Comparison compare_run(const Scenario &sc, const ScenarioConfig &cfg, const std::vector<std::string> &schemes);

    struct SweepRow
    {
        double value = 0.0;
        std::string scheme;
        bool ok = false;
        bool converged = false;
        std::string error;
        ComparisonMetrics metrics;
        double seconds = 0.0;
    };

    // Rows ordered by value (as given) then scheme (as configured), independent of jobs
    std::vector<SweepRow> run_sweep(const ScenarioConfig &cfg, const std::string &param,
                                    const std::vector<double> &values, int jobs = 1);

    // Columns: <param>,scheme,status,p_min,p_user,p_max,ripple_db (timings go to the manifest)
    std::string sweep_to_csv(const std::string &param, const std::vector<SweepRow> &rows);

    // Reproducibility record: version, config echo and hash, seed, obstacle geometry
    nlohmann::json base_manifest(const ScenarioConfig &cfg, const std::string &command);
}

#endif
