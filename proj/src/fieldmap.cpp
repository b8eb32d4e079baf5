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

#include "bendbeam/fieldmap.hpp"
#include "bendbeam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace bendbeam
{
    GridSpec GridSpec::around(const Trajectory &traj, int nx, int nz, double x_margin, double z_extent)
    {
        double f_lo = traj.value(traj.z_min()), f_hi = f_lo;
        constexpr int n = 1024;
        for (int i = 0; i <= n; ++i)
        {
            const double v = traj.value(traj.z_min() + (traj.z_max() - traj.z_min()) * i / n);
            f_lo = std::min(f_lo, v);
            f_hi = std::max(f_hi, v);
        }
        GridSpec g;
        g.nx = nx;
        g.nz = nz;
        g.x_min = std::min(f_lo, 0.0) - x_margin;
        g.x_max = f_hi + x_margin;
        g.z_min = 0.0;
        g.z_max = z_extent * traj.z_max();
        return g;
    }

    void GridSpec::validate() const
    {
        if (nx < 1 || nz < 1)
            throw ContractViolation("GridSpec: nx and nz must be >= 1");
        if (!(x_max > x_min) && nx > 1)
            throw ContractViolation("GridSpec: need x_min < x_max");
        if (!(z_max > z_min) || z_min < 0.0)
            throw ContractViolation("GridSpec: need 0 <= z_min < z_max");
    }

    std::vector<double> GridSpec::x_axis() const
    {
        std::vector<double> xs(static_cast<std::size_t>(nx));
        for (int j = 0; j < nx; ++j)
            xs[static_cast<std::size_t>(j)] = nx == 1 ? x_min : x_min + (x_max - x_min) * j / (nx - 1);
        return xs;
    }

    std::vector<double> GridSpec::z_axis() const
    {
        std::vector<double> zs(static_cast<std::size_t>(nz));
        for (int i = 0; i < nz; ++i)
            zs[static_cast<std::size_t>(i)] = z_min + (z_max - z_min) * (i + 1) / nz;
        return zs;
    }

    namespace
    {
        // w^H h(target) without materializing h
        double point_power(const CVector &w, const ArrayGeometry &geom, Point2 target,
                           const std::vector<Obstacle> &obstacles)
        {
            const double lambda = geom.wavelength();
            const double k = geom.wavenumber();
            const auto &xs = geom.antenna_x();
            cdouble acc(0.0, 0.0);
            for (std::size_t n = 0; n < xs.size(); ++n)
            {
                const double d = std::hypot(target.x - xs[n], target.z);
                if (!(d > 0.0))
                    throw DegenerateGeometry("evaluate_grid: grid point coincides with an antenna");
                if (!obstacles.empty() && segment_blocked({xs[n], 0.0}, target, obstacles))
                    continue;
                acc += std::conj(w(static_cast<Eigen::Index>(n))) * std::polar(lambda / (4.0 * pi * d), k * d);
            }
            return std::norm(acc);
        }
    }

    FieldGrid evaluate_grid(const CVector &w, const ArrayGeometry &geom, const GridSpec &spec,
                            const std::vector<Obstacle> &obstacles, int workers)
    {
        spec.validate();
        if (w.size() != geom.num_antennas())
            throw ContractViolation("evaluate_grid: beamformer size does not match the array");

        FieldGrid g;
        g.x_axis = spec.x_axis();
        g.z_axis = spec.z_axis();
        g.power.resize(spec.nz, spec.nx);

        auto fill_rows = [&](int r0, int r1)
        {
            for (int i = r0; i < r1; ++i)
                for (int j = 0; j < spec.nx; ++j)
                    g.power(i, j) = point_power(w, geom, {g.x_axis[static_cast<std::size_t>(j)], g.z_axis[static_cast<std::size_t>(i)]}, obstacles);
        };

        workers = std::clamp(workers, 1, spec.nz);
        if (workers == 1)
        {
            fill_rows(0, spec.nz);
            return g;
        }

        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t)
        {
            const int r0 = spec.nz * t / workers, r1 = spec.nz * (t + 1) / workers;
            pool.emplace_back([&, t, r0, r1]
                              {
                                  try { fill_rows(r0, r1); }
                                  catch (...) { errors[static_cast<std::size_t>(t)] = std::current_exception(); } });
        }
        for (auto &th : pool)
            th.join();
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
        return g;
    }

    TrajectoryProfile profile_along_trajectory(const CVector &w, const ArrayGeometry &geom, const SamplePoints &samples,
                                               const std::vector<Obstacle> &obstacles, std::string label)
    {
        if (w.size() != geom.num_antennas())
            throw ContractViolation("profile_along_trajectory: beamformer size does not match the array");

        TrajectoryProfile p;
        p.label = std::move(label);
        for (const auto &pt : samples.points)
        {
            p.x.push_back(pt.x);
            p.z.push_back(pt.z);
            p.power.push_back(point_power(w, geom, pt, obstacles));
        }
        return p;
    }

    ComparisonMetrics metrics_of(const TrajectoryProfile &profile)
    {
        if (profile.power.empty())
            throw ContractViolation("metrics_of: empty profile");
        ComparisonMetrics m;
        m.label = profile.label;
        const auto [lo, hi] = std::minmax_element(profile.power.begin(), profile.power.end());
        m.p_min = *lo;
        m.p_max = *hi;
        m.p_user = profile.power.back();
        m.ripple_db = (m.p_min > 0.0) ? 10.0 * std::log10(m.p_max / m.p_min) : std::numeric_limits<double>::infinity();
        return m;
    }

    std::vector<ComparisonMetrics> compare_schemes(const std::vector<TrajectoryProfile> &profiles)
    {
        std::vector<ComparisonMetrics> out;
        for (const auto &p : profiles)
        {
            if (p.z.size() != p.power.size() || p.x.size() != p.power.size())
                throw ContractViolation("compare_schemes: malformed profile '" + p.label + "'");
            if (!profiles.empty() && (p.z != profiles.front().z || p.x != profiles.front().x))
                throw ContractViolation("compare_schemes: profile '" + p.label + "' uses different sample points");
            out.push_back(metrics_of(p));
        }
        return out;
    }

    double ridge_tracking_fraction(const FieldGrid &grid, const Trajectory &traj, double cells)
    {
        if (grid.x_axis.size() < 2)
            throw ContractViolation("ridge_tracking_fraction: need at least two x columns");
        const double dx = grid.x_axis[1] - grid.x_axis[0];

        int rows = 0, hits = 0;
        for (std::size_t i = 0; i < grid.z_axis.size(); ++i)
        {
            const double z = grid.z_axis[i];
            if (z < traj.z_min() || z > traj.z_max())
                continue;
            Eigen::Index j;
            grid.power.row(static_cast<Eigen::Index>(i)).maxCoeff(&j);
            ++rows;
            if (std::abs(grid.x_axis[static_cast<std::size_t>(j)] - traj.value(z)) <= cells * dx * (1.0 + 1e-9))
                ++hits;
        }
        return rows == 0 ? 0.0 : static_cast<double>(hits) / rows;
    }
}
