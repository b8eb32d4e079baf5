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

#include "bendbeam/pipeline.hpp"
#include "bendbeam/errors.hpp"
#include "bendbeam/io.hpp"
#include "bendbeam/log.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include <Eigen/Core>

using nlohmann::json;

namespace bendbeam
{
    namespace
    {
        Trajectory make_trajectory(const TrajectoryConfig &t)
        {
            if (t.kind == "tabulated")
                return Trajectory::tabulated(t.z, t.x);
            return Trajectory::parabola(t.beta, t.z_range[0], t.z_range[1]);
        }

        ArrayGeometry make_geometry(const ScenarioConfig &cfg)
        {
            if (!cfg.spacing)
                return ArrayGeometry::half_wavelength(cfg.num_antennas, cfg.carrier_frequency_hz);
            return ArrayGeometry(cfg.num_antennas, *cfg.spacing, speed_of_light / cfg.carrier_frequency_hz);
        }

        PhaseIntegrand integrand_of(const ScenarioConfig &cfg)
        {
            return cfg.tangent_integrand == "exact" ? PhaseIntegrand::exact : PhaseIntegrand::paraxial;
        }

        double seconds_since(std::chrono::steady_clock::time_point t0)
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    }

    Scenario build_scenario(const ScenarioConfig &cfg)
    {
        cfg.validate();
        ArrayGeometry geom = make_geometry(cfg);
        Trajectory traj = make_trajectory(cfg.trajectory);
        SamplePoints samples = sample_trajectory(traj, cfg.num_samples);
        std::vector<Obstacle> obstacles;
        for (const auto &o : cfg.obstacles)
            obstacles.emplace_back(o.x[0], o.x[1], o.z[0], o.z[1]);
        ChannelMatrix H = build_channel_matrix(geom, samples, obstacles);
        return {std::move(geom), std::move(traj), std::move(samples), std::move(obstacles), std::move(H)};
    }

    SolverConfig solver_config_for(const ScenarioConfig &cfg, Scheme scheme)
    {
        SolverConfig s;
        s.scheme = scheme;
        s.rho_init = cfg.solver.rho_init;
        s.rho_first_penalty = cfg.solver.rho_first_penalty;
        s.rho_growth = cfg.solver.rho_growth;
        s.rank_gap_tol = cfg.solver.rank_gap_tol;
        s.obj_tol = cfg.solver.obj_tol;
        s.max_sca_iters = cfg.solver.max_sca_iters;
        s.max_penalty_rounds = cfg.solver.max_penalty_rounds;
        s.sdp.max_iterations = cfg.solver.sdp_max_iterations;
        return s;
    }

    GridSpec grid_spec_for(const ScenarioConfig &cfg, const Trajectory &traj)
    {
        return GridSpec::around(traj, cfg.grid.nx, cfg.grid.nz, cfg.grid.x_margin, cfg.grid.z_extent);
    }

    SchemeRun run_scheme(const Scenario &sc, const ScenarioConfig &cfg, const std::string &scheme)
    {
        SchemeRun run;
        run.scheme = scheme;
        const auto t0 = std::chrono::steady_clock::now();
        try
        {
            if (scheme == "tangent")
            {
                PhaseProfile p = tangent_phase_profile(sc.traj, sc.geom, integrand_of(cfg));
                run.w = tm_beamformer(p, sc.geom.num_antennas());
                run.phases = std::move(p);
                run.converged = true;
            }
            else if (scheme == "abf" || scheme == "dbf")
            {
                const Scheme s = scheme == "abf" ? Scheme::abf : Scheme::dbf;
                std::optional<CMatrix> V0;
                const bool parabola = sc.traj.kind() == Trajectory::Kind::parabola;
                if (cfg.solver.warm_start == "tangent" || (cfg.solver.warm_start == "auto" && parabola))
                {
                    try
                    {
                        const CVector w = tm_beamformer(tangent_phase_profile(sc.traj, sc.geom, integrand_of(cfg)),
                                                        sc.geom.num_antennas())
                                              .weights();
                        V0 = w * w.adjoint();
                    }
                    catch (const TangentUnreachable &e)
                    {
                        log_warning(std::string("tangent warm start unavailable, using identity: ") + e.what());
                    }
                }
                MaxMinResult r = solve_maxmin(sc.H, solver_config_for(cfg, s), V0);
                run.converged = r.state.status == SolveStatus::optimal;
                if (!run.converged)
                    run.error = std::string("solver status ") + to_string(r.state.status);
                run.w = std::move(r.w);
                run.state = std::move(r.state);
            }
            else
                throw ConfigError("scheme", "unknown scheme '" + scheme + "'");
            run.ok = true;
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const std::exception &e)
        {
            run.ok = false;
            run.error = e.what();
        }
        run.seconds = seconds_since(t0);
        return run;
    }

    Comparison compare_run(const Scenario &sc, const ScenarioConfig &cfg, const std::vector<std::string> &schemes)
    {
        Comparison c;
        for (const auto &s : schemes)
        {
            SchemeRun run = run_scheme(sc, cfg, s);
            if (run.ok)
                c.profiles.push_back(profile_along_trajectory(run.w->weights(), sc.geom, sc.samples, sc.obstacles, s));
            c.runs.push_back(std::move(run));
        }
        c.metrics = compare_schemes(c.profiles);
        return c;
    }

    std::vector<SweepRow> run_sweep(const ScenarioConfig &cfg, const std::string &param,
                                    const std::vector<double> &values, int jobs)
    {
        if (values.empty())
            throw ConfigError("sweep.values", "need at least one value");
        if (param != "beta" && param != "N" && param != "M")
            throw ConfigError("sweep.param", "expected beta, N or M");
        // Validate every point up front so that a bad value is a config error, not a runtime one
        std::vector<ScenarioConfig> points;
        for (double v : values)
            points.push_back(with_parameter(cfg, param, v));

        const std::size_t per = cfg.schemes.size();
        std::vector<SweepRow> rows(values.size() * per);

        auto run_point = [&](std::size_t i)
        {
            const auto t0 = std::chrono::steady_clock::now();
            std::vector<SweepRow> out(per);
            for (std::size_t k = 0; k < per; ++k)
            {
                out[k].value = values[i];
                out[k].scheme = cfg.schemes[k];
            }
            try
            {
                const Scenario sc = build_scenario(points[i]);
                const Comparison c = compare_run(sc, points[i], cfg.schemes);
                std::size_t next_metric = 0;
                for (std::size_t k = 0; k < per; ++k)
                {
                    const SchemeRun &r = c.runs[k];
                    out[k].ok = r.ok;
                    out[k].converged = r.converged;
                    out[k].error = r.error;
                    out[k].seconds = r.seconds;
                    if (r.ok)
                        out[k].metrics = c.metrics[next_metric++];
                }
            }
            catch (const std::exception &e)
            {
                for (auto &r : out)
                {
                    r.ok = false;
                    r.error = e.what();
                    r.seconds = seconds_since(t0);
                }
            }
            std::copy(out.begin(), out.end(), rows.begin() + static_cast<std::ptrdiff_t>(i * per));
        };

        const int workers = std::clamp(jobs, 1, static_cast<int>(values.size()));
        if (workers == 1)
        {
            for (std::size_t i = 0; i < values.size(); ++i)
                run_point(i);
            return rows;
        }

        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&]
                              {
                                  for (std::size_t i = next++; i < values.size(); i = next++)
                                      run_point(i); });
        for (auto &t : pool)
            t.join();
        return rows;
    }

    std::string sweep_to_csv(const std::string &param, const std::vector<SweepRow> &rows)
    {
        std::ostringstream os;
        os << param << ",scheme,status,p_min,p_user,p_max,ripple_db\n";
        for (const auto &r : rows)
        {
            os << format_real(r.value) << ',' << r.scheme << ',';
            if (!r.ok)
                os << "failed,,,,\n";
            else
                os << (r.converged ? "ok" : "not_converged") << ',' << format_real(r.metrics.p_min) << ','
                   << format_real(r.metrics.p_user) << ',' << format_real(r.metrics.p_max) << ','
                   << format_real(r.metrics.ripple_db) << '\n';
        }
        return os.str();
    }

    json base_manifest(const ScenarioConfig &cfg, const std::string &command)
    {
        json m;
        m["tool"] = "bendbeam";
        m["version"] = BENDBEAM_VERSION;
        m["command"] = command;
        m["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                             std::to_string(EIGEN_MINOR_VERSION);
        m["compiler"] = __VERSION__;
        m["config_hash"] = config_hash(cfg);
        m["seed"] = cfg.seed;
        m["config"] = config_to_json(cfg);
        json obs = json::array();
        for (const auto &o : cfg.obstacles)
            obs.push_back({{"x", o.x}, {"z", o.z}});
        m["obstacles"] = obs;
        return m;
    }
}
