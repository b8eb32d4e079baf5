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

#ifndef BENDBEAM_GEOMETRY_HPP
#define BENDBEAM_GEOMETRY_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace bendbeam
{
    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double pi = 3.14159265358979323846;

    // A point in the x-z plane (the array lies on the x-axis, z is the boresight)
    struct Point2
    {
        double x = 0.0;
        double z = 0.0;
    };

    // Which aperture length enters the Rayleigh distance
    enum class ApertureConvention
    {
        physical, // L = (N-1) * spacing, the span of the element positions
        nominal   // L = N * spacing
    };

    /*!
    Uniform linear array on the x-axis.

    Element n (0-based) sits at x = n * spacing, y = z = 0, so the first
    element is at the origin and the array extends along +x.
    */
    class ArrayGeometry
    {
    public:
        ArrayGeometry(int num_antennas, double spacing, double wavelength);

        // Half-wavelength spaced array for a carrier frequency in Hz
        static ArrayGeometry half_wavelength(int num_antennas, double carrier_frequency_hz);

        int num_antennas() const { return static_cast<int>(antenna_x_.size()); }
        double spacing() const { return spacing_; }
        double wavelength() const { return wavelength_; }
        double wavenumber() const { return 2.0 * pi / wavelength_; }

        const std::vector<double> &antenna_x() const { return antenna_x_; }
        Point2 antenna(int n) const { return {antenna_x_.at(static_cast<std::size_t>(n)), 0.0}; }

        double aperture(ApertureConvention conv = ApertureConvention::physical) const;
        double rayleigh_distance(ApertureConvention conv = ApertureConvention::physical) const;

    private:
        double spacing_;
        double wavelength_;
        std::vector<double> antenna_x_;
    };

    /*!
    Desired beam trajectory x = f(z) over [z_min, z_max].

    Two kinds exist: the parabola f(z) = beta * z^2, and a tabulated curve
    interpolated with a monotone piecewise-cubic Hermite (PCHIP) scheme.
    */
    class Trajectory
    {
    public:
        enum class Kind
        {
            parabola,
            tabulated
        };

        static Trajectory parabola(double beta, double z_min, double z_max);

        // Needs at least four nodes with strictly increasing z. The z range is the table span.
        static Trajectory tabulated(std::vector<double> z, std::vector<double> x);

        Kind kind() const { return kind_; }
        double z_min() const { return z_min_; }
        double z_max() const { return z_max_; }

        // Curvature parameter of the parabola kind; empty for tabulated curves
        std::optional<double> beta() const;

        // f(z) and f'(z). A tabulated curve is clamped to its table; the parabola is analytic everywhere.
        double value(double z) const;
        double slope(double z) const;

        // Lowest z at which the curve is defined: 0 for the parabola, z_min for a table
        double curve_start() const { return kind_ == Kind::parabola ? 0.0 : z_min_; }

        // Largest |f'(z)| over the range, sampled on a fine uniform grid
        double max_abs_slope() const;

        // Convexity over the z range, checked on second differences with a relative tolerance
        bool is_convex() const;

        // Tabulation nodes (empty for the parabola)
        const std::vector<double> &nodes_z() const { return nodes_z_; }
        const std::vector<double> &nodes_x() const { return nodes_x_; }

    private:
        Trajectory() = default;

        Kind kind_ = Kind::parabola;
        double beta_ = 0.0;
        double z_min_ = 0.0;
        double z_max_ = 0.0;
        std::vector<double> nodes_z_, nodes_x_;
        std::function<double(double)> f_, df_;
    };

    struct SamplePoints
    {
        std::vector<Point2> points;

        std::size_t size() const { return points.size(); }
        const Point2 &operator[](std::size_t m) const { return points[m]; }
    };

    // Axis-aligned rectangle in the x-z plane
    class Obstacle
    {
    public:
        Obstacle(double x_lo, double x_hi, double z_lo, double z_hi);

        double x_lo() const { return x_lo_; }
        double x_hi() const { return x_hi_; }
        double z_lo() const { return z_lo_; }
        double z_hi() const { return z_hi_; }

    private:
        double x_lo_, x_hi_, z_lo_, z_hi_;
    };

    // M points uniformly spaced in z over [z_min, z_max], both ends included
    SamplePoints sample_trajectory(const Trajectory &traj, int num_samples);

    // True iff the closed segment a-b touches the closed rectangle (Liang-Barsky clipping)
    bool segment_blocked(Point2 a, Point2 b, const Obstacle &obs);

    // True iff any of the obstacles blocks a-b
    bool segment_blocked(Point2 a, Point2 b, const std::vector<Obstacle> &obstacles);
}

#endif
