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

#include "bendbeam/geometry.hpp"
#include "bendbeam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <math.h> // boost pchip calls unqualified isnan
#include <boost/math/interpolators/pchip.hpp>

namespace bendbeam
{
    ArrayGeometry::ArrayGeometry(int num_antennas, double spacing, double wavelength)
        : spacing_(spacing), wavelength_(wavelength)
    {
        if (num_antennas < 1)
            throw ContractViolation("ArrayGeometry: num_antennas must be >= 1");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw ContractViolation("ArrayGeometry: spacing must be positive");
        if (!(wavelength > 0.0) || !std::isfinite(wavelength))
            throw ContractViolation("ArrayGeometry: wavelength must be positive");

        antenna_x_.resize(static_cast<std::size_t>(num_antennas));
        for (int n = 0; n < num_antennas; ++n)
            antenna_x_[static_cast<std::size_t>(n)] = n * spacing;
    }

    ArrayGeometry ArrayGeometry::half_wavelength(int num_antennas, double carrier_frequency_hz)
    {
        if (!(carrier_frequency_hz > 0.0))
            throw ContractViolation("ArrayGeometry: carrier frequency must be positive");
        const double lambda = speed_of_light / carrier_frequency_hz;
        return ArrayGeometry(num_antennas, 0.5 * lambda, lambda);
    }

    double ArrayGeometry::aperture(ApertureConvention conv) const
    {
        const double n = static_cast<double>(num_antennas());
        return conv == ApertureConvention::physical ? (n - 1.0) * spacing_ : n * spacing_;
    }

    double ArrayGeometry::rayleigh_distance(ApertureConvention conv) const
    {
        const double L = aperture(conv);
        return 2.0 * L * L / wavelength_;
    }

    // ------------------------------------------------------------------------

    Trajectory Trajectory::parabola(double beta, double z_min, double z_max)
    {
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw ContractViolation("Trajectory: beta must be positive");
        if (!(z_min >= 0.0) || !(z_max > z_min) || !std::isfinite(z_max))
            throw ContractViolation("Trajectory: need 0 <= z_min < z_max");

        Trajectory t;
        t.kind_ = Kind::parabola;
        t.beta_ = beta;
        t.z_min_ = z_min;
        t.z_max_ = z_max;
        t.f_ = [beta](double z) { return beta * z * z; };
        t.df_ = [beta](double z) { return 2.0 * beta * z; };
        return t;
    }

    Trajectory Trajectory::tabulated(std::vector<double> z, std::vector<double> x)
    {
        if (z.size() != x.size())
            throw ContractViolation("Trajectory: z and x tables differ in length");
        if (z.size() < 4)
            throw ContractViolation("Trajectory: a tabulated curve needs at least 4 nodes");
        for (std::size_t i = 0; i < z.size(); ++i)
            if (!std::isfinite(z[i]) || !std::isfinite(x[i]))
                throw InvalidTrajectory("Trajectory: non-finite tabulated node");
        for (std::size_t i = 1; i < z.size(); ++i)
            if (!(z[i] > z[i - 1]))
                throw ContractViolation("Trajectory: tabulated z must be strictly increasing");
        if (z.front() < 0.0)
            throw ContractViolation("Trajectory: z_min must be >= 0");

        Trajectory t;
        t.kind_ = Kind::tabulated;
        t.z_min_ = z.front();
        t.z_max_ = z.back();
        t.nodes_z_ = z;
        t.nodes_x_ = x;

        auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(z), std::move(x));
        t.f_ = [spline](double zz) { return (*spline)(zz); };
        t.df_ = [spline](double zz) { return spline->prime(zz); };
        return t;
    }

    std::optional<double> Trajectory::beta() const
    {
        if (kind_ == Kind::parabola)
            return beta_;
        return std::nullopt;
    }

    double Trajectory::value(double z) const
    {
        return kind_ == Kind::parabola ? f_(z) : f_(std::clamp(z, z_min_, z_max_));
    }

    double Trajectory::slope(double z) const
    {
        return kind_ == Kind::parabola ? df_(z) : df_(std::clamp(z, z_min_, z_max_));
    }

    double Trajectory::max_abs_slope() const
    {
        constexpr int n = 4096;
        double m = 0.0;
        for (int i = 0; i <= n; ++i)
        {
            const double z = z_min_ + (z_max_ - z_min_) * i / n;
            m = std::max(m, std::abs(slope(z)));
        }
        return m;
    }

    bool Trajectory::is_convex() const
    {
        if (kind_ == Kind::parabola)
            return true;

        // Second differences of the tabulation plus a dense check of the interpolant
        constexpr int n = 2048;
        const double h = (z_max_ - z_min_) / n;
        double scale = 0.0;
        for (double xv : nodes_x_)
            scale = std::max(scale, std::abs(xv));
        const double tol = 1e-9 * std::max(scale, 1e-300);
        for (int i = 1; i < n; ++i)
        {
            const double z = z_min_ + i * h;
            const double d2 = value(z - h) - 2.0 * value(z) + value(z + h);
            if (d2 < -tol)
                return false;
        }
        return true;
    }

    // ------------------------------------------------------------------------

    Obstacle::Obstacle(double x_lo, double x_hi, double z_lo, double z_hi)
        : x_lo_(x_lo), x_hi_(x_hi), z_lo_(z_lo), z_hi_(z_hi)
    {
        if (!std::isfinite(x_lo) || !std::isfinite(x_hi) || !std::isfinite(z_lo) || !std::isfinite(z_hi))
            throw ContractViolation("Obstacle: non-finite bounds");
        if (!(x_lo < x_hi) || !(z_lo < z_hi))
            throw ContractViolation("Obstacle: need x_lo < x_hi and z_lo < z_hi");
        if (!(z_lo > 0.0))
            throw ContractViolation("Obstacle: z_lo must be > 0 (obstacle may not overlap the array)");
    }

    SamplePoints sample_trajectory(const Trajectory &traj, int num_samples)
    {
        if (num_samples < 2)
            throw ContractViolation("sample_trajectory: need at least 2 samples");

        SamplePoints out;
        out.points.reserve(static_cast<std::size_t>(num_samples));
        const double z0 = traj.z_min(), z1 = traj.z_max();
        for (int m = 0; m < num_samples; ++m)
        {
            // Last sample is pinned to z_max exactly
            const double z = (m == num_samples - 1) ? z1 : z0 + (z1 - z0) * m / (num_samples - 1);
            const double x = traj.value(z);
            if (!std::isfinite(x))
                throw InvalidTrajectory("sample_trajectory: f(z) is not finite at z = " + std::to_string(z));
            out.points.push_back({x, z});
        }
        return out;
    }

    bool segment_blocked(Point2 a, Point2 b, const Obstacle &obs)
    {
        // Liang-Barsky: clip the parameter interval [0,1] of a + u (b - a) against the slabs
        double u0 = 0.0, u1 = 1.0;
        const double dx = b.x - a.x, dz = b.z - a.z;

        auto clip = [&](double p, double q) -> bool
        {
            // p * u <= q must hold
            if (p == 0.0)
                return q >= 0.0;
            const double r = q / p;
            if (p < 0.0)
            {
                if (r > u1)
                    return false;
                u0 = std::max(u0, r);
            }
            else
            {
                if (r < u0)
                    return false;
                u1 = std::min(u1, r);
            }
            return true;
        };

        return clip(-dx, a.x - obs.x_lo()) && clip(dx, obs.x_hi() - a.x) &&
               clip(-dz, a.z - obs.z_lo()) && clip(dz, obs.z_hi() - a.z) && u0 <= u1;
    }

    bool segment_blocked(Point2 a, Point2 b, const std::vector<Obstacle> &obstacles)
    {
        return std::any_of(obstacles.begin(), obstacles.end(),
                           [&](const Obstacle &o) { return segment_blocked(a, b, o); });
    }
}
