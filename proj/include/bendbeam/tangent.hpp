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

#ifndef BENDBEAM_TANGENT_HPP
#define BENDBEAM_TANGENT_HPP

#include "bendbeam/channel.hpp"
#include "bendbeam/geometry.hpp"

#include <vector>

/*!SECTION
Tangent-method baseline
SECTION!*/

/*!MD
The tangent method treats the aperture as a continuum of small sub-arrays and
steers each one along the line through it that is tangent to the desired
trajectory x = f(z). With the tangent point z_b(x) the phase gradient is

    dphi/dx = k f'(z_b) / sqrt(1 + f'(z_b)^2)     (exact ray angle)
    dphi/dx = k f'(z_b)                           (paraxial, small angles)

Orientation: the tangent through array coordinate x_a touches the convex curve
where x_a = f(z_b) - z_b f'(z_b), which for a curve launched at the origin puts
every tangent foot at x_a <= 0. The profile is therefore built in the mirrored
coordinate u = x_n - x_1 >= 0 (distance from the launch element), the foot of
antenna n is taken at x_launch - u_n, and the phase decreases along u. With the
channel convention exp(+j k d) and received power |w^H h|^2, a decreasing phase
steers towards +x, so the beam bends in the same direction as the trajectory.
For the parabola this reproduces phi(u) = -(4/3) sqrt(beta) k u^(3/2).
MD!*/

namespace bendbeam
{
    // Per-antenna phases in radians, canonicalized so that the first entry is 0
    struct PhaseProfile
    {
        std::vector<double> phases;

        std::size_t size() const { return phases.size(); }
        void canonicalize();
    };

    enum class PhaseIntegrand
    {
        paraxial, // k f'
        exact     // k f' / sqrt(1 + f'^2)
    };

    // z_b in the trajectory's domain whose tangent line meets the x-axis at x_a.
    // Throws TangentUnreachable when no such z_b exists in [curve_start, z_max].
    double tangent_point(const Trajectory &traj, double x_a);

    // Numerical phase profile (composite trapezoid, 64 subintervals per element spacing).
    // Elements whose tangent point would lie past z_max use the tangent at z_max.
    PhaseProfile tangent_phase_profile(const Trajectory &traj, const ArrayGeometry &geom,
                                       PhaseIntegrand integrand = PhaseIntegrand::paraxial);

    inline PhaseProfile paraxial_phase_profile(const Trajectory &traj, const ArrayGeometry &geom)
    {
        return tangent_phase_profile(traj, geom, PhaseIntegrand::paraxial);
    }

    // phi(u) = -(4/3) sqrt(beta) k u^(3/2), u = distance from the first element
    PhaseProfile parabola_phase_closed_form(double beta, const ArrayGeometry &geom);

    // ABF beamformer w_n = exp(j phi_n) / sqrt(N)
    Beamformer tm_beamformer(const PhaseProfile &profile, int num_antennas);
}

#endif
