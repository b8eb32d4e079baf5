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
#include "bendbeam/fieldmap.hpp"
#include "bendbeam/maxmin.hpp"
#include "bendbeam/tangent.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bendbeam;
using bendbeam::testing::random_cvector;

TEST_CASE("grid axes")
{
    GridSpec s;
    s.nx = 5;
    s.nz = 4;
    s.x_min = -1.0;
    s.x_max = 1.0;
    s.z_min = 0.0;
    s.z_max = 2.0;
    const auto xs = s.x_axis(), zs = s.z_axis();
    CHECK(xs == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
    CHECK(zs == std::vector<double>{0.5, 1.0, 1.5, 2.0});

    const auto around = GridSpec::around(Trajectory::parabola(0.0008, 0.0, 15.0));
    CHECK(around.nx == 400);
    CHECK(around.nz == 400);
    CHECK(around.x_min == doctest::Approx(-0.05));
    CHECK(around.x_max == doctest::Approx(0.23));
    CHECK(around.z_min == 0.0);
    CHECK(around.z_max == doctest::Approx(16.5));

    s.z_min = -1.0;
    CHECK_THROWS_AS(s.validate(), ContractViolation);
    s.z_min = 0.0;
    s.nx = 0;
    CHECK_THROWS_AS(s.validate(), ContractViolation);
}

TEST_CASE("single element field decays radially")
{
    const ArrayGeometry g(1, 0.5, 0.001);
    CVector w(1);
    w << cdouble(0.6, 0.8);
    GridSpec s{7, 9, -0.01, 0.01, 0.0, 0.05};
    const auto grid = evaluate_grid(w, g, s);
    for (std::size_t i = 0; i < grid.z_axis.size(); ++i)
        for (std::size_t j = 0; j < grid.x_axis.size(); ++j)
        {
            const double d = std::hypot(grid.x_axis[j], grid.z_axis[i]);
            const double expected = std::pow(0.001 / (4 * pi * d), 2);
            CHECK(grid.power(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
}

TEST_CASE("matched filter focuses within one grid cell")
{
    // Cauchy-Schwarz: |w^H h(p)|^2 / |h(p)|^2 peaks where h(p) is parallel to w
    const auto g = ArrayGeometry::half_wavelength(64, 300e9);
    GridSpec s{81, 80, 0.0, 0.04, 0.0, 0.12};
    const auto xs = s.x_axis(), zs = s.z_axis();
    for (auto [jx, iz] : {std::pair{40, 29}, std::pair{30, 19}, std::pair{50, 39}})
    {
        const Point2 focus{xs[static_cast<std::size_t>(jx)], zs[static_cast<std::size_t>(iz)]};
        const CVector w = channel_at(g, focus).gains.normalized();
        const auto grid = evaluate_grid(w, g, s);
        Eigen::MatrixXd gain(grid.power.rows(), grid.power.cols());
        for (Eigen::Index i = 0; i < gain.rows(); ++i)
            for (Eigen::Index j = 0; j < gain.cols(); ++j)
                gain(i, j) = grid.power(i, j) /
                             channel_at(g, {xs[static_cast<std::size_t>(j)], zs[static_cast<std::size_t>(i)]})
                                 .gains.squaredNorm();
        Eigen::Index i, j;
        gain.maxCoeff(&i, &j);
        CAPTURE(jx);
        CAPTURE(iz);
        CHECK(std::abs(j - jx) <= 1);
        CHECK(std::abs(i - iz) <= 1);
        CHECK(gain(iz, jx) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("full nulling behind a wide obstacle")
{
    const auto g = ArrayGeometry::half_wavelength(16, 300e9);
    const std::vector<Obstacle> wall{Obstacle(-1.0, 1.0, 0.02, 0.021)};
    std::mt19937_64 rng(61);
    const CVector w = random_cvector(rng, 16).normalized();
    GridSpec s{20, 40, -0.01, 0.02, 0.0, 0.04};
    const auto grid = evaluate_grid(w, g, s, wall);
    for (std::size_t i = 0; i < grid.z_axis.size(); ++i)
        for (Eigen::Index j = 0; j < grid.power.cols(); ++j)
        {
            if (grid.z_axis[i] >= 0.02)
                CHECK(grid.power(static_cast<Eigen::Index>(i), j) == 0.0);
            else
                CHECK(grid.power(static_cast<Eigen::Index>(i), j) > 0.0);
        }
}

TEST_CASE("grid is invariant under global phase and worker count")
{
    const auto g = ArrayGeometry::half_wavelength(24, 300e9);
    std::mt19937_64 rng(67);
    const CVector w = random_cvector(rng, 24).normalized();
    GridSpec s{33, 29, -0.01, 0.02, 0.0, 0.08};
    const std::vector<Obstacle> obs{Obstacle(0.004, 0.006, 0.03, 0.035)};
    const auto a = evaluate_grid(w, g, s, obs, 1);
    const auto b = evaluate_grid(w, g, s, obs, 4);
    CHECK((a.power - b.power).cwiseAbs().maxCoeff() == 0.0);
    const auto c = evaluate_grid(CVector(std::polar(1.0, 1.1) * w), g, s, obs, 3);
    CHECK((a.power - c.power).cwiseAbs().maxCoeff() <= 1e-12 * a.power.maxCoeff());
    CHECK(a.power.minCoeff() >= 0.0);
}

TEST_CASE("trajectory profile matches grid rows on shared nodes")
{
    const auto g = ArrayGeometry::half_wavelength(16, 300e9);
    std::mt19937_64 rng(71);
    const CVector w = random_cvector(rng, 16).normalized();
    GridSpec s{11, 10, 0.0, 0.01, 0.0, 0.05};
    const auto grid = evaluate_grid(w, g, s);
    SamplePoints pts;
    std::vector<std::pair<int, int>> idx{{0, 0}, {3, 7}, {9, 10}, {5, 2}};
    for (auto [i, j] : idx)
        pts.points.push_back({grid.x_axis[static_cast<std::size_t>(j)], grid.z_axis[static_cast<std::size_t>(i)]});
    const auto prof = profile_along_trajectory(w, g, pts, {}, "x");
    CHECK(prof.label == "x");
    for (std::size_t k = 0; k < idx.size(); ++k)
        CHECK(std::abs(prof.power[k] - grid.power(idx[k].first, idx[k].second)) <=
              1e-12 * grid.power.maxCoeff());
    CHECK_THROWS_AS(profile_along_trajectory(CVector::Ones(3), g, pts), ContractViolation);
}

TEST_CASE("comparison metrics")
{
    TrajectoryProfile flat{"flat", {0, 1, 2}, {1, 2, 3}, {2.0, 2.0, 2.0}};
    TrajectoryProfile bumpy{"bumpy", {0, 1, 2}, {1, 2, 3}, {1.0, 10.0, 5.0}};
    const auto m = compare_schemes({flat, bumpy, flat});
    REQUIRE(m.size() == 3);
    CHECK(m[0].label == "flat");
    CHECK(m[0].ripple_db == 0.0);
    CHECK(m[1].p_min == 1.0);
    CHECK(m[1].p_max == 10.0);
    CHECK(m[1].p_user == 5.0);
    CHECK(m[1].ripple_db == doctest::Approx(10.0));
    CHECK(m[0].p_min == m[2].p_min);
    CHECK(m[0].ripple_db == m[2].ripple_db);
    for (const auto &x : m)
    {
        CHECK(x.p_min <= x.p_user);
        CHECK(x.p_user <= x.p_max);
    }

    TrajectoryProfile shifted = flat;
    shifted.z[1] = 2.5;
    CHECK_THROWS_AS(compare_schemes({flat, shifted}), ContractViolation);
    TrajectoryProfile blocked{"zero", {0, 1}, {1, 2}, {0.0, 1.0}};
    CHECK(std::isinf(metrics_of(blocked).ripple_db));
}

TEST_CASE("ridge tracking fraction")
{
    const auto t = Trajectory::parabola(1.0, 0.1, 1.0);
    GridSpec s{201, 100, -0.5, 1.5, 0.0, 1.0};
    FieldGrid grid{s.x_axis(), s.z_axis(), Eigen::MatrixXd::Zero(100, 201)};
    const double dx = grid.x_axis[1] - grid.x_axis[0];
    int rows_in_range = 0;
    for (int i = 0; i < 100; ++i)
    {
        const double z = grid.z_axis[static_cast<std::size_t>(i)];
        const bool in_range = z >= 0.1 && z <= 1.0;
        rows_in_range += in_range;
        // peak on the curve for even rows, far away for odd ones
        const double x_peak = (i % 2 == 0) ? t.value(z) : t.value(z) + 5 * dx;
        for (int j = 0; j < 201; ++j)
            grid.power(i, j) = std::exp(-std::pow((grid.x_axis[static_cast<std::size_t>(j)] - x_peak) / dx, 2));
    }
    const double f = ridge_tracking_fraction(grid, t, 1.0);
    CHECK(f == doctest::Approx(0.5).epsilon(0.05));
    CHECK(ridge_tracking_fraction(grid, t, 6.0) == 1.0);
    CHECK(rows_in_range > 0);
}

TEST_CASE("proposed analog design beats the tangent method at desk scale")
{
    // beta = 0.001 analogue of the 15 m trajectory on a 32-element array
    const auto g = ArrayGeometry::half_wavelength(32, 300e9);
    const double z_max = 0.096;
    const auto t = Trajectory::parabola(0.001 * 15.0 / z_max, z_max / 40, z_max);
    const auto samples = sample_trajectory(t, 40);
    const auto H = build_channel_matrix(g, samples);

    SolverConfig cfg;
    cfg.scheme = Scheme::abf;
    const auto abf = solve_maxmin(H, cfg);
    cfg.scheme = Scheme::dbf;
    const auto dbf = solve_maxmin(H, cfg);
    const auto tm = tm_beamformer(paraxial_phase_profile(t, g), 32);

    const auto m = compare_schemes({profile_along_trajectory(abf.w.weights(), g, samples, {}, "abf"),
                                    profile_along_trajectory(dbf.w.weights(), g, samples, {}, "dbf"),
                                    profile_along_trajectory(tm.weights(), g, samples, {}, "tangent")});
    CHECK(m[0].p_min >= m[2].p_min);
    const double gap_db = 10 * std::log10(m[1].p_min / m[0].p_min);
    MESSAGE("DBF vs ABF p_min gap: " << gap_db << " dB");
    if (std::abs(gap_db) > 1.0)
        MESSAGE("warning: DBF and ABF differ by more than 1 dB");
}
