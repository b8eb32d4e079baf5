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
#include "bendbeam/io.hpp"
#include "bendbeam/log.hpp"
#include "bendbeam/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bendbeam;

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_runtime = 1;
    constexpr int exit_config = 2;

    struct Options
    {
        std::string config_path;
        std::string out_dir;
        std::string scheme;
        int jobs = 1;
        std::string weights_path;
        std::string sweep_param;
        std::vector<double> sweep_values;
    };

    std::mutex warnings_mutex;
    std::vector<std::string> warnings;

    // Output directory: --out, then BENDBEAM_OUT_DIR, then the config file
    fs::path resolve_out_dir(const Options &opt, const ScenarioConfig &cfg)
    {
        if (!opt.out_dir.empty())
            return opt.out_dir;
        if (const char *env = std::getenv("BENDBEAM_OUT_DIR"); env && *env)
            return env;
        return cfg.output_dir;
    }

    class Run
    {
    public:
        Run(const std::string &command, const Options &opt)
            : command_(command), t0_(std::chrono::steady_clock::now())
        {
            cfg_ = load_config(opt.config_path);
            if (!opt.scheme.empty())
            {
                cfg_.scheme = opt.scheme;
                cfg_.validate();
            }
            out_ = resolve_out_dir(opt, cfg_);
            fs::create_directories(out_);
            manifest_ = base_manifest(cfg_, command);
            manifest_["artifacts"] = json::array();
            manifest_["timings_s"] = json::object();
        }

        const ScenarioConfig &cfg() const { return cfg_; }
        json &manifest() { return manifest_; }

        void write(const std::string &name, const std::string &content)
        {
            write_text_file((out_ / name).string(), content);
            manifest_["artifacts"].push_back(name);
        }

        void timing(const std::string &key, double seconds) { manifest_["timings_s"][key] = seconds; }

        int finish(bool complete)
        {
            timing("total", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count());
            manifest_["complete"] = complete;
            {
                std::lock_guard lock(warnings_mutex);
                manifest_["warnings"] = warnings;
            }
            write_text_file((out_ / ("manifest_" + command_ + ".json")).string(), manifest_.dump(2) + "\n");
            std::cout << "wrote " << manifest_["artifacts"].size() << " artifacts to " << out_.string() << '\n';
            return complete ? exit_ok : exit_runtime;
        }

    private:
        std::string command_;
        std::chrono::steady_clock::time_point t0_;
        ScenarioConfig cfg_;
        fs::path out_;
        json manifest_;
    };

    std::string to_text(const Beamformer &w)
    {
        std::ostringstream os;
        write_beamformer_csv(os, w);
        return os.str();
    }

    json run_record(const SchemeRun &r)
    {
        json j{{"scheme", r.scheme}, {"ok", r.ok}, {"converged", r.converged}, {"seconds", r.seconds}};
        if (!r.error.empty())
            j["error"] = r.error;
        if (r.state)
        {
            j["solver_status"] = std::string(to_string(r.state->status));
            j["t_normalized"] = r.state->t;
            j["power_scale"] = r.state->power_scale;
            j["min_power"] = r.state->t * r.state->power_scale;
            j["rank_gap"] = r.state->rank_gap;
            j["penalty_rounds"] = r.state->penalty_rounds;
            j["sdp_solves"] = r.state->sdp_solves;
            if (std::isfinite(r.state->relaxation_bound))
                j["relaxation_bound"] = r.state->relaxation_bound * r.state->power_scale;
        }
        return j;
    }

    // Writes the weights (and trace or phase profile); returns false when the run failed
    bool emit_scheme(Run &run, const Scenario &sc, const SchemeRun &r)
    {
        run.timing(r.scheme, r.seconds);
        run.manifest()["runs"].push_back(run_record(r));
        if (!r.ok)
        {
            std::cerr << "error: scheme " << r.scheme << " failed: " << r.error << '\n';
            return false;
        }
        run.write("weights_" + r.scheme + ".csv", to_text(*r.w));
        if (r.state)
            run.write("trace_" + r.scheme + ".csv", trace_to_csv(r.state->trace_log));
        if (r.phases)
        {
            std::ostringstream os;
            write_phase_profile_csv(os, *r.phases, sc.geom);
            run.write("phases_" + r.scheme + ".csv", os.str());
        }
        if (!r.converged)
            std::cerr << "error: scheme " << r.scheme << " did not converge: " << r.error << '\n';
        return r.converged;
    }

    int cmd_synthesize(const Options &opt)
    {
        Run run("synthesize", opt);
        const Scenario sc = build_scenario(run.cfg());
        const SchemeRun r = run_scheme(sc, run.cfg(), run.cfg().scheme);
        return run.finish(emit_scheme(run, sc, r));
    }

    // Beamformer from --weights, or synthesized with the configured scheme
    std::pair<Beamformer, std::string> obtain_weights(Run &run, const Options &opt, const Scenario &sc, bool &ok)
    {
        ok = true;
        if (!opt.weights_path.empty())
        {
            std::istringstream is(read_text_file(opt.weights_path));
            Beamformer w = read_beamformer_csv(is);
            if (w.size() != sc.geom.num_antennas())
                throw ConfigError("weights", "beamformer has " + std::to_string(w.size()) + " entries, config has " +
                                                 std::to_string(sc.geom.num_antennas()) + " antennas");
            run.manifest()["weights_input"] = opt.weights_path;
            return {std::move(w), run.cfg().scheme};
        }
        const SchemeRun r = run_scheme(sc, run.cfg(), run.cfg().scheme);
        ok = emit_scheme(run, sc, r);
        if (!r.ok)
            throw std::runtime_error("synthesis failed: " + r.error);
        return {*r.w, r.scheme};
    }

    int cmd_fieldmap(const Options &opt)
    {
        Run run("fieldmap", opt);
        const Scenario sc = build_scenario(run.cfg());
        bool ok = true;
        const auto [w, label] = obtain_weights(run, opt, sc, ok);

        const auto t0 = std::chrono::steady_clock::now();
        const GridSpec spec = grid_spec_for(run.cfg(), sc.traj);
        const FieldGrid grid = evaluate_grid(w.weights(), sc.geom, spec, sc.obstacles, opt.jobs);
        run.timing("grid", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

        std::ostringstream csv, pgm;
        write_grid_csv(csv, grid);
        write_grid_pgm(pgm, grid);
        run.write("fieldmap_" + label + ".csv", csv.str());
        run.write("fieldmap_" + label + ".pgm", pgm.str());
        run.manifest()["grid"] = {{"nx", spec.nx}, {"nz", spec.nz}, {"x_range", {spec.x_min, spec.x_max}},
                                  {"z_range", {spec.z_min, spec.z_max}}, {"pgm_floor_db", 80.0}};
        run.manifest()["ridge_tracking_fraction"] = ridge_tracking_fraction(grid, sc.traj, 1.0);
        return run.finish(ok);
    }

    int cmd_profile(const Options &opt)
    {
        Run run("profile", opt);
        const Scenario sc = build_scenario(run.cfg());
        bool ok = true;
        const auto [w, label] = obtain_weights(run, opt, sc, ok);

        const auto profile = profile_along_trajectory(w.weights(), sc.geom, sc.samples, sc.obstacles, label);
        std::ostringstream os;
        write_profiles_csv(os, {profile});
        run.write("profile_" + label + ".csv", os.str());
        run.write("metrics_" + label + ".json", metrics_to_json({metrics_of(profile)}).dump(2) + "\n");
        return run.finish(ok);
    }

    int cmd_compare(const Options &opt)
    {
        Run run("compare", opt);
        if (run.cfg().schemes.size() < 2)
            throw ConfigError("schemes", "compare needs at least two schemes");
        const Scenario sc = build_scenario(run.cfg());
        const Comparison c = compare_run(sc, run.cfg(), run.cfg().schemes);

        bool ok = true;
        for (const auto &r : c.runs)
            ok = emit_scheme(run, sc, r) && ok;
        if (!c.profiles.empty())
        {
            std::ostringstream os;
            write_profiles_csv(os, c.profiles);
            run.write("profiles.csv", os.str());
        }
        run.write("metrics.json", metrics_to_json(c.metrics).dump(2) + "\n");
        return run.finish(ok);
    }

    int cmd_sweep(const Options &opt)
    {
        Run run("sweep", opt);
        const auto rows = run_sweep(run.cfg(), opt.sweep_param, opt.sweep_values, opt.jobs);
        run.write("sweep_" + opt.sweep_param + ".csv", sweep_to_csv(opt.sweep_param, rows));

        bool ok = true;
        run.manifest()["sweep"] = {{"param", opt.sweep_param}, {"values", opt.sweep_values}, {"jobs", opt.jobs}};
        for (const auto &r : rows)
        {
            json rec{{"value", r.value}, {"scheme", r.scheme}, {"ok", r.ok}, {"converged", r.converged},
                     {"seconds", r.seconds}};
            if (!r.error.empty())
                rec["error"] = r.error;
            run.manifest()["runs"].push_back(rec);
            ok = ok && r.ok && r.converged;
        }
        return run.finish(ok);
    }
}

int main(int argc, char **argv)
{
    set_warning_sink([](const std::string &msg)
                     {
                         std::lock_guard lock(warnings_mutex);
                         warnings.push_back(msg);
                         std::cerr << "warning: " << msg << '\n'; });

    CLI::App app{"Near-field bending beam synthesis for uniform linear arrays"};
    app.set_version_flag("--version", BENDBEAM_VERSION);
    app.require_subcommand(1);

    Options opt;
    auto common = [&](CLI::App *sub)
    {
        sub->add_option("--config", opt.config_path, "Scenario file (JSON)")->required();
        sub->add_option("--out", opt.out_dir, "Output directory (overrides BENDBEAM_OUT_DIR and the config)");
        sub->add_option("--scheme", opt.scheme, "Override the configured scheme: abf, dbf or tangent");
        sub->add_option("--jobs", opt.jobs, "Worker threads for grids and sweeps")->check(CLI::PositiveNumber);
    };

    auto *synth = app.add_subcommand("synthesize", "Design a beamformer and write weights, trace and manifest");
    auto *fmap = app.add_subcommand("fieldmap", "Evaluate the power field on the x-z grid (CSV + PGM)");
    auto *prof = app.add_subcommand("profile", "Evaluate the power along the trajectory samples");
    auto *comp = app.add_subcommand("compare", "Run every configured scheme and compare trajectory metrics");
    auto *sweep = app.add_subcommand("sweep", "Repeat compare over values of beta, N or M");
    for (auto *s : {synth, fmap, prof, comp, sweep})
        common(s);
    for (auto *s : {fmap, prof})
        s->add_option("--weights", opt.weights_path, "Beamformer CSV to evaluate instead of synthesizing")
            ->check(CLI::ExistingFile);
    sweep->add_option("--param", opt.sweep_param, "Swept parameter")
        ->required()
        ->check(CLI::IsMember({"beta", "N", "M"}));
    sweep->add_option("--values", opt.sweep_values, "Parameter values")->required()->delimiter(',');

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*synth)
            return cmd_synthesize(opt);
        if (*fmap)
            return cmd_fieldmap(opt);
        if (*prof)
            return cmd_profile(opt);
        if (*comp)
            return cmd_compare(opt);
        return cmd_sweep(opt);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
}
