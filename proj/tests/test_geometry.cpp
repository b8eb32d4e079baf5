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

#include "bendbeam/errors.hpp"
#include "bendbeam/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bendbeam;

TEST_CASE("array positions start at the origin and follow the spacing")
{
    const ArrayGeometry g(5, 0.25, 1.0);
    REQUIRE(g.num_antennas() == 5);
    for (int n = 0; n < 5; ++n)
        CHECK(g.antenna_x()[static_cast<std::size_t>(n)] == doctest::Approx(0.25 * n).epsilon(1e-15));
    CHECK(g.aperture(ApertureConvention::physical) == doctest::Approx(1.0));
    CHECK(g.aperture(ApertureConvention::nominal) == doctest::Approx(1.25));
    CHECK(g.wavenumber() == doctest::Approx(2.0 * pi));
}

TEST_CASE("rayleigh distance under both aperture conventions")
{
    // 1 mm wavelength, half-wavelength spacing
    const ArrayGeometry g(400, 0.0005, 0.001);
    CHECK(std::abs(g.rayleigh_distance(ApertureConvention::nominal) - 80.0) <= 1e-12 * 80.0);
    const double physical = 2.0 * (399 * 0.0005) * (399 * 0.0005) / 0.001;
    CHECK(g.rayleigh_distance(ApertureConvention::physical) == doctest::Approx(physical).epsilon(1e-14));
    CHECK(g.rayleigh_distance(ApertureConvention::physical) == doctest::Approx(79.6).epsilon(1e-3));

    const auto g300 = ArrayGeometry::half_wavelength(400, 300e9);
    CHECK(g300.wavelength() == doctest::Approx(speed_of_light / 300e9).epsilon(1e-15));
    CHECK(g300.spacing() == doctest::Approx(0.5 * g300.wavelength()).epsilon(1e-15));
}

TEST_CASE("array geometry rejects invalid parameters")
{
    CHECK_THROWS_AS(ArrayGeometry(0, 0.5, 1.0), ContractViolation);
    CHECK_THROWS_AS(ArrayGeometry(4, 0.0, 1.0), ContractViolation);
    CHECK_THROWS_AS(ArrayGeometry(4, 0.5, -1.0), ContractViolation);
    CHECK_THROWS_AS(ArrayGeometry::half_wavelength(4, 0.0), ContractViolation);
}

TEST_CASE("parabola evaluator and derivative")
{
    const auto t = Trajectory::parabola(0.0008, 0.0, 15.0);
    CHECK(t.kind() == Trajectory::Kind::parabola);
    REQUIRE(t.beta().has_value());
    CHECK(t.value(15.0) == doctest::Approx(0.18).epsilon(1e-14));
    CHECK(t.slope(10.0) == doctest::Approx(0.016).epsilon(1e-14));
    CHECK(t.is_convex());
    CHECK(t.max_abs_slope() == doctest::Approx(2 * 0.0008 * 15.0).epsilon(1e-12));

    CHECK_THROWS(Trajectory::parabola(0.0, 0.0, 1.0));
    CHECK_THROWS(Trajectory::parabola(-1.0, 0.0, 1.0));
    CHECK_THROWS(Trajectory::parabola(1.0, 2.0, 1.0));
    CHECK_THROWS(Trajectory::parabola(1.0, -1.0, 1.0));
}

TEST_CASE("sample_trajectory endpoints and monotonicity")
{
    SUBCASE("two samples hit both ends")
    {
        const auto s = sample_trajectory(Trajectory::parabola(0.001, 0.0, 15.0), 2);
        REQUIRE(s.size() == 2);
        CHECK(s[0].x == 0.0);
        CHECK(s[0].z == 0.0);
        CHECK(s[1].x == doctest::Approx(0.225).epsilon(1e-14));
        CHECK(s[1].z == 15.0);
    }
    SUBCASE("user position is the last sample")
    {
        for (int M : {2, 7, 200})
        {
            const auto s = sample_trajectory(Trajectory::parabola(0.0008, 0.0, 15.0), M);
            REQUIRE(static_cast<int>(s.size()) == M);
            CHECK(s[s.size() - 1].x == doctest::Approx(0.18).epsilon(1e-14));
            CHECK(s[s.size() - 1].z == 15.0);
            for (std::size_t m = 1; m < s.size(); ++m)
                CHECK(s[m].z > s[m - 1].z);
        }
    }
    SUBCASE("deterministic")
    {
        const auto t = Trajectory::parabola(0.0005, 0.1, 3.0);
        const auto a = sample_trajectory(t, 31), b = sample_trajectory(t, 31);
        for (std::size_t m = 0; m < a.size(); ++m)
        {
            CHECK(a[m].x == b[m].x);
            CHECK(a[m].z == b[m].z);
        }
    }
    CHECK_THROWS_AS(sample_trajectory(Trajectory::parabola(0.001, 0.0, 1.0), 1), ContractViolation);
}

TEST_CASE("tabulated trajectory interpolates a parabola closely")
{
    std::vector<double> z, x;
    // PCHIP is not exact on a quadratic; its error shrinks with the node spacing
    for (int i = 0; i <= 1500; ++i)
    {
        z.push_back(15.0 * i / 1500);
        x.push_back(0.0005 * z.back() * z.back());
    }
    const auto t = Trajectory::tabulated(z, x);
    CHECK(t.kind() == Trajectory::Kind::tabulated);
    CHECK_FALSE(t.beta().has_value());
    CHECK(t.z_min() == 0.0);
    CHECK(t.z_max() == 15.0);
    CHECK(t.is_convex());

    const auto s = sample_trajectory(t, 50);
    double worst = 0.0;
    for (const auto &p : s.points)
        worst = std::max(worst, std::abs(p.x - 0.0005 * p.z * p.z));
    CHECK(worst <= 1e-9);
    for (std::size_t i = 0; i < z.size(); ++i)
        CHECK(t.value(z[i]) == doctest::Approx(x[i]).epsilon(1e-14));
}

TEST_CASE("tabulated trajectory validation")
{
    CHECK_THROWS_AS(Trajectory::tabulated({0, 1, 2}, {0, 1, 2}), ContractViolation);
    CHECK_THROWS_AS(Trajectory::tabulated({0, 1, 1, 2}, {0, 1, 2, 3}), ContractViolation);
    CHECK_THROWS_AS(Trajectory::tabulated({0, 1, 2, 3}, {0, 1, 2}), ContractViolation);
    CHECK_THROWS_AS(Trajectory::tabulated({0, 1, 2, 3}, {0, 1, NAN, 3}), InvalidTrajectory);
    const auto concave = Trajectory::tabulated({1, 2, 3, 4, 5}, {0, 1, 1.5, 1.75, 1.8});
    CHECK_FALSE(concave.is_convex());
}

TEST_CASE("obstacle contract")
{
    CHECK_NOTHROW(Obstacle(0, 1, 1, 2));
    CHECK_THROWS_AS(Obstacle(1, 0, 1, 2), ContractViolation);
    CHECK_THROWS_AS(Obstacle(0, 1, 2, 1), ContractViolation);
    CHECK_THROWS_AS(Obstacle(0, 1, 0, 1), ContractViolation);
}

TEST_CASE("segment_blocked reference cases")
{
    CHECK(segment_blocked({0, 0}, {0, 10}, Obstacle(-1, 1, 4, 5)));
    CHECK_FALSE(segment_blocked({0, 0}, {5, 10}, Obstacle(6, 7, 0.5, 10)));
    CHECK(segment_blocked({0, 0}, {2, 2}, Obstacle(1, 3, 1, 3)));
    // touching a corner counts (closed sets)
    CHECK(segment_blocked({0, 0}, {1, 1}, Obstacle(1, 2, 1, 2)));
    // segment ending just short of the box
    CHECK_FALSE(segment_blocked({0, 0}, {0.99, 0.99}, Obstacle(1, 2, 1, 2)));
    // degenerate segment inside / outside
    CHECK(segment_blocked({1.5, 1.5}, {1.5, 1.5}, Obstacle(1, 2, 1, 2)));
    CHECK_FALSE(segment_blocked({0.5, 1.5}, {0.5, 1.5}, Obstacle(1, 2, 1, 2)));
}

namespace
{
    // Dense point sampling along the segment; resolution 1e-4 of its length
    bool sampled_blocked(Point2 a, Point2 b, const Obstacle &o)
    {
        constexpr int n = 10000;
        for (int i = 0; i <= n; ++i)
        {
            const double s = static_cast<double>(i) / n;
            const double x = a.x + s * (b.x - a.x), z = a.z + s * (b.z - a.z);
            if (x >= o.x_lo() && x <= o.x_hi() && z >= o.z_lo() && z <= o.z_hi())
                return true;
        }
        return false;
    }
}

TEST_CASE("segment_blocked agrees with dense sampling and is symmetric")
{
    std::mt19937_64 rng(20261018);
    std::uniform_real_distribution<double> u(-3.0, 3.0), pos(0.1, 3.0), size(0.05, 1.5);
    int disagreements = 0, checked = 0;
    for (int trial = 0; trial < 3000; ++trial)
    {
        const double xl = u(rng), zl = pos(rng);
        const Obstacle o(xl, xl + size(rng), zl, zl + size(rng));
        const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
        const bool exact = segment_blocked(a, b, o);
        CHECK(exact == segment_blocked(b, a, o));
        // sampling can only miss grazing hits, never invent one
        const bool sampled = sampled_blocked(a, b, o);
        if (sampled)
            CHECK(exact);
        if (exact != sampled)
            ++disagreements;
        ++checked;
    }
    CHECK(disagreements <= checked / 200);
}

TEST_CASE("segment_blocked over a list")
{
    const std::vector<Obstacle> obs{Obstacle(5, 6, 1, 2), Obstacle(-1, 1, 4, 5)};
    CHECK(segment_blocked({0, 0}, {0, 10}, obs));
    CHECK_FALSE(segment_blocked({0, 0}, {-3, 10}, obs));
    CHECK_FALSE(segment_blocked({0, 0}, {0, 10}, std::vector<Obstacle>{}));
}
