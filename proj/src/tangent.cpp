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

#include "bendbeam/tangent.hpp"
#include "bendbeam/errors.hpp"
#include "bendbeam/log.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace bendbeam
{
    namespace
    {
        // x-intercept of the tangent line at z: f(z) - z f'(z). Non-increasing for convex f.
        double tangent_foot(const Trajectory &traj, double z)
        {
            return traj.value(z) - z * traj.slope(z);
        }

        // Bisection on the monotone foot function; the caller guarantees a bracket
        double bisect_tangent(const Trajectory &traj, double x_a, double lo, double hi)
        {
            for (int it = 0; it < 200; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                const double r = tangent_foot(traj, mid) - x_a;
                if (r == 0.0)
                    return mid;
                if (r > 0.0)
                    lo = mid; // foot still right of x_a: move further along the curve
                else
                    hi = mid;
                if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi))
                    break;
            }
            return 0.5 * (lo + hi);
        }

        double integrand_value(double slope, PhaseIntegrand kind)
        {
            return kind == PhaseIntegrand::paraxial ? slope : slope / std::sqrt(1.0 + slope * slope);
        }
    }

    void PhaseProfile::canonicalize()
    {
        if (phases.empty())
            return;
        const double p0 = phases.front();
        for (auto &p : phases)
            p -= p0;
    }

    double tangent_point(const Trajectory &traj, double x_a)
    {
        if (!std::isfinite(x_a))
            throw ContractViolation("tangent_point: non-finite array coordinate");

        const double z_lo = traj.curve_start(), z_hi = traj.z_max();
        const double tol = 1e-10 * std::max(1.0, std::abs(x_a));
        const double r_lo = tangent_foot(traj, z_lo) - x_a;
        const double r_hi = tangent_foot(traj, z_hi) - x_a;

        if (std::abs(r_lo) <= tol)
            return z_lo;
        if (std::abs(r_hi) <= tol)
            return z_hi;
        if (r_lo < 0.0 || r_hi > 0.0)
            throw TangentUnreachable("tangent_point: no tangent of the trajectory meets x = " + std::to_string(x_a));
        return bisect_tangent(traj, x_a, z_lo, z_hi);
    }

    PhaseProfile tangent_phase_profile(const Trajectory &traj, const ArrayGeometry &geom, PhaseIntegrand integrand)
    {
        if (!traj.is_convex())
            log_warning("tangent method: trajectory is not convex over its range; tangent points may be ambiguous");

        const int N = geom.num_antennas();
        const double k = geom.wavenumber();
        const double x_launch = tangent_foot(traj, traj.curve_start());
        const double foot_end = tangent_foot(traj, traj.z_max());
        const double slope_end = traj.slope(traj.z_max());

        // Local phase gradient magnitude at mirrored distance u from the launch element
        auto gradient = [&](double u) -> double
        {
            const double x_a = x_launch - u;
            double slope;
            if (x_a <= foot_end)
                slope = slope_end; // boundary tangent past z_max
            else if (u <= 0.0)
                slope = traj.slope(traj.curve_start());
            else
                slope = traj.slope(bisect_tangent(traj, x_a, traj.curve_start(), traj.z_max()));
            return k * integrand_value(slope, integrand);
        };

        constexpr int substeps = 64;
        PhaseProfile out;
        out.phases.assign(static_cast<std::size_t>(N), 0.0);

        const auto &xs = geom.antenna_x();
        double phi = 0.0;
        double g_prev = gradient(0.0);
        for (int n = 1; n < N; ++n)
        {
            const double u0 = xs[static_cast<std::size_t>(n - 1)] - xs.front();
            const double u1 = xs[static_cast<std::size_t>(n)] - xs.front();
            const double h = (u1 - u0) / substeps;
            for (int s = 1; s <= substeps; ++s)
            {
                const double g = gradient(u0 + s * h);
                phi -= 0.5 * h * (g_prev + g);
                g_prev = g;
            }
            out.phases[static_cast<std::size_t>(n)] = phi;
        }
        out.canonicalize();
        return out;
    }

    PhaseProfile parabola_phase_closed_form(double beta, const ArrayGeometry &geom)
    {
        if (!(beta > 0.0))
            throw ContractViolation("parabola_phase_closed_form: beta must be positive");

        const double k = geom.wavenumber();
        const double c = -(4.0 / 3.0) * std::sqrt(beta) * k;
        const auto &xs = geom.antenna_x();

        PhaseProfile out;
        out.phases.reserve(xs.size());
        for (double x : xs)
        {
            const double u = x - xs.front();
            out.phases.push_back(c * u * std::sqrt(u));
        }
        out.canonicalize();
        return out;
    }

    Beamformer tm_beamformer(const PhaseProfile &profile, int num_antennas)
    {
        if (static_cast<int>(profile.size()) != num_antennas)
            throw ContractViolation("tm_beamformer: profile has " + std::to_string(profile.size()) +
                                    " entries, expected " + std::to_string(num_antennas));
        return Beamformer::from_phases(profile.phases);
    }
}
