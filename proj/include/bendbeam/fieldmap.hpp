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

#ifndef BENDBEAM_FIELDMAP_HPP
#define BENDBEAM_FIELDMAP_HPP

#include "bendbeam/channel.hpp"
#include "bendbeam/geometry.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace bendbeam
{
    // Uniform evaluation grid. x runs over [x_min, x_max] inclusive; z over (0, z_max] as
    // z_i = z_min + (i + 1) (z_max - z_min) / nz, so z_min itself is never evaluated.
    struct GridSpec
    {
        int nx = 400;
        int nz = 400;
        double x_min = 0.0, x_max = 0.0;
        double z_min = 0.0, z_max = 0.0;

        // x in [-margin, max f + margin], z in (0, z_extent * z_max]
        static GridSpec around(const Trajectory &traj, int nx = 400, int nz = 400, double x_margin = 0.05,
                               double z_extent = 1.1);

        std::vector<double> x_axis() const;
        std::vector<double> z_axis() const;
        void validate() const;
    };

    struct FieldGrid
    {
        std::vector<double> x_axis;
        std::vector<double> z_axis;
        Eigen::MatrixXd power; // rows follow z, columns follow x
    };

    struct TrajectoryProfile
    {
        std::string label;
        std::vector<double> x;
        std::vector<double> z;
        std::vector<double> power;
    };

    struct ComparisonMetrics
    {
        std::string label;
        double p_min = 0.0;
        double p_user = 0.0; // power at the last sample (the user position)
        double p_max = 0.0;
        double ripple_db = 0.0; // 10 log10(p_max / p_min)
    };

    // Power |w^H h(x_j, z_i)|^2 over the grid; rows are split across `workers` threads
    FieldGrid evaluate_grid(const CVector &w, const ArrayGeometry &geom, const GridSpec &spec,
                            const std::vector<Obstacle> &obstacles = {}, int workers = 1);

    TrajectoryProfile profile_along_trajectory(const CVector &w, const ArrayGeometry &geom,
                                               const SamplePoints &samples,
                                               const std::vector<Obstacle> &obstacles = {},
                                               std::string label = {});

    ComparisonMetrics metrics_of(const TrajectoryProfile &profile);

    // Throws ContractViolation unless all profiles share the same sample points
    std::vector<ComparisonMetrics> compare_schemes(const std::vector<TrajectoryProfile> &profiles);

    /*!
    Fraction of grid rows with trajectory_z_min <= z <= trajectory_z_max whose
    power maximum lies within `cells` grid cells (in x) of f(z).
    */
    double ridge_tracking_fraction(const FieldGrid &grid, const Trajectory &traj, double cells = 1.0);
}

#endif
