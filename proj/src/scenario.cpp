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

#include "bendbeam/scenario.hpp"
#include "bendbeam/errors.hpp"
#include "bendbeam/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

using nlohmann::json;

namespace bendbeam
{
    namespace
    {
        std::string join(const std::string &prefix, const std::string &key)
        {
            return prefix.empty() ? key : prefix + "." + key;
        }

        void reject_unknown(const json &obj, const std::string &prefix, const std::set<std::string> &allowed)
        {
            if (!obj.is_object())
                throw ConfigError(prefix.empty() ? "<root>" : prefix, "expected an object");
            for (const auto &item : obj.items())
                if (!allowed.count(item.key()))
                    throw ConfigError(join(prefix, item.key()), "unknown key");
        }

        double get_number(const json &obj, const std::string &prefix, const std::string &key, double def)
        {
            if (!obj.contains(key))
                return def;
            const auto &v = obj.at(key);
            if (!v.is_number())
                throw ConfigError(join(prefix, key), "expected a number");
            return v.get<double>();
        }

        long long get_integer(const json &obj, const std::string &prefix, const std::string &key, long long def)
        {
            if (!obj.contains(key))
                return def;
            const auto &v = obj.at(key);
            if (v.is_number_integer())
                return v.get<long long>();
            if (v.is_number_float())
            {
                const double d = v.get<double>();
                if (std::floor(d) == d && std::abs(d) < 9e15)
                    return static_cast<long long>(d);
            }
            throw ConfigError(join(prefix, key), "expected an integer");
        }

        int get_int(const json &obj, const std::string &prefix, const std::string &key, int def)
        {
            const long long v = get_integer(obj, prefix, key, def);
            if (v < -2147483647LL || v > 2147483647LL)
                throw ConfigError(join(prefix, key), "integer out of range");
            return static_cast<int>(v);
        }

        std::string get_string(const json &obj, const std::string &prefix, const std::string &key, const std::string &def)
        {
            if (!obj.contains(key))
                return def;
            const auto &v = obj.at(key);
            if (!v.is_string())
                throw ConfigError(join(prefix, key), "expected a string");
            return v.get<std::string>();
        }

        std::array<double, 2> get_pair(const json &obj, const std::string &prefix, const std::string &key,
                                       std::array<double, 2> def)
        {
            if (!obj.contains(key))
                return def;
            const auto &v = obj.at(key);
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                throw ConfigError(join(prefix, key), "expected [lo, hi]");
            return {v[0].get<double>(), v[1].get<double>()};
        }

        std::vector<double> get_reals(const json &obj, const std::string &prefix, const std::string &key)
        {
            if (!obj.contains(key))
                return {};
            const auto &v = obj.at(key);
            if (!v.is_array())
                throw ConfigError(join(prefix, key), "expected an array of numbers");
            std::vector<double> out;
            for (const auto &e : v)
            {
                if (!e.is_number())
                    throw ConfigError(join(prefix, key), "expected an array of numbers");
                out.push_back(e.get<double>());
            }
            return out;
        }

        void require_positive(double v, const std::string &field)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError(field, "must be a positive finite number");
        }

        void require_scheme(const std::string &s, const std::string &field)
        {
            const auto &k = known_schemes();
            if (std::find(k.begin(), k.end(), s) == k.end())
                throw ConfigError(field, "unknown scheme '" + s + "' (expected abf, dbf or tangent)");
        }
    }

    void ScenarioConfig::validate() const
    {
        require_positive(carrier_frequency_hz, "carrier_frequency_hz");
        if (num_antennas < 1)
            throw ConfigError("num_antennas", "must be >= 1");
        if (spacing)
            require_positive(*spacing, "spacing");

        if (trajectory.kind == "parabola")
        {
            require_positive(trajectory.beta, "trajectory.beta");
            if (!(trajectory.z_range[0] > 0.0) || !std::isfinite(trajectory.z_range[0]))
                throw ConfigError("trajectory.z_range", "lower end must be > 0 (the first antenna sits at z = 0)");
            if (!(trajectory.z_range[1] > trajectory.z_range[0]) || !std::isfinite(trajectory.z_range[1]))
                throw ConfigError("trajectory.z_range", "need lo < hi");
            if (!trajectory.z.empty() || !trajectory.x.empty())
                throw ConfigError("trajectory.z", "node tables are only valid for kind 'tabulated'");
        }
        else if (trajectory.kind == "tabulated")
        {
            if (trajectory.z.size() < 4)
                throw ConfigError("trajectory.z", "need at least 4 nodes");
            if (trajectory.x.size() != trajectory.z.size())
                throw ConfigError("trajectory.x", "must have as many entries as trajectory.z");
            if (!(trajectory.z.front() > 0.0))
                throw ConfigError("trajectory.z", "nodes must be > 0");
            for (std::size_t i = 1; i < trajectory.z.size(); ++i)
                if (!(trajectory.z[i] > trajectory.z[i - 1]))
                    throw ConfigError("trajectory.z", "nodes must be strictly increasing");
            for (double v : trajectory.x)
                if (!std::isfinite(v))
                    throw ConfigError("trajectory.x", "values must be finite");
        }
        else
            throw ConfigError("trajectory.kind", "expected 'parabola' or 'tabulated'");

        if (num_samples < 2)
            throw ConfigError("num_samples", "must be >= 2");
        require_scheme(scheme, "scheme");
        for (const auto &s : schemes)
            require_scheme(s, "schemes");
        if (std::set<std::string>(schemes.begin(), schemes.end()).size() != schemes.size())
            throw ConfigError("schemes", "duplicate entry");

        for (std::size_t i = 0; i < obstacles.size(); ++i)
        {
            const auto &o = obstacles[i];
            const std::string f = "obstacles[" + std::to_string(i) + "]";
            if (!(o.x[0] < o.x[1]))
                throw ConfigError(f + ".x", "need lo < hi");
            if (!(o.z[0] < o.z[1]))
                throw ConfigError(f + ".z", "need lo < hi");
            if (!(o.z[0] > 0.0))
                throw ConfigError(f + ".z", "obstacle must lie in front of the array (z > 0)");
        }

        if (!(solver.rho_init >= 0.0))
            throw ConfigError("solver.rho_init", "must be >= 0");
        require_positive(solver.rho_first_penalty, "solver.rho_first_penalty");
        if (!(solver.rho_growth > 1.0))
            throw ConfigError("solver.rho_growth", "must be > 1");
        require_positive(solver.rank_gap_tol, "solver.rank_gap_tol");
        require_positive(solver.obj_tol, "solver.obj_tol");
        if (solver.max_sca_iters < 1)
            throw ConfigError("solver.max_sca_iters", "must be >= 1");
        if (solver.max_penalty_rounds < 1)
            throw ConfigError("solver.max_penalty_rounds", "must be >= 1");
        if (solver.sdp_max_iterations < 1)
            throw ConfigError("solver.sdp_max_iterations", "must be >= 1");
        if (solver.warm_start != "auto" && solver.warm_start != "identity" && solver.warm_start != "tangent")
            throw ConfigError("solver.warm_start", "expected 'auto', 'identity' or 'tangent'");

        if (grid.nx < 2)
            throw ConfigError("grid.nx", "must be >= 2");
        if (grid.nz < 1)
            throw ConfigError("grid.nz", "must be >= 1");
        if (!(grid.x_margin >= 0.0) || !std::isfinite(grid.x_margin))
            throw ConfigError("grid.x_margin", "must be >= 0");
        require_positive(grid.z_extent, "grid.z_extent");

        if (tangent_integrand != "paraxial" && tangent_integrand != "exact")
            throw ConfigError("tangent_integrand", "expected 'paraxial' or 'exact'");
        if (output_dir.empty())
            throw ConfigError("output_dir", "must not be empty");
    }

    ScenarioConfig config_from_json(const json &j)
    {
        reject_unknown(j, "", {"carrier_frequency_hz", "num_antennas", "spacing", "trajectory", "num_samples", "scheme",
                               "schemes", "obstacles", "solver", "grid", "tangent_integrand", "output_dir", "seed"});
        ScenarioConfig c;
        c.carrier_frequency_hz = get_number(j, "", "carrier_frequency_hz", c.carrier_frequency_hz);
        c.num_antennas = get_int(j, "", "num_antennas", c.num_antennas);
        if (j.contains("spacing"))
        {
            const auto &s = j.at("spacing");
            if (s.is_string())
            {
                if (s.get<std::string>() != "half-wavelength")
                    throw ConfigError("spacing", "expected a number of meters or \"half-wavelength\"");
            }
            else if (s.is_number())
                c.spacing = s.get<double>();
            else
                throw ConfigError("spacing", "expected a number of meters or \"half-wavelength\"");
        }

        if (j.contains("trajectory"))
        {
            const auto &t = j.at("trajectory");
            reject_unknown(t, "trajectory", {"kind", "beta", "z_range", "z", "x"});
            c.trajectory.kind = get_string(t, "trajectory", "kind", c.trajectory.kind);
            c.trajectory.beta = get_number(t, "trajectory", "beta", c.trajectory.beta);
            c.trajectory.z_range = get_pair(t, "trajectory", "z_range", c.trajectory.z_range);
            c.trajectory.z = get_reals(t, "trajectory", "z");
            c.trajectory.x = get_reals(t, "trajectory", "x");
        }

        c.num_samples = get_int(j, "", "num_samples", c.num_samples);
        c.scheme = get_string(j, "", "scheme", c.scheme);
        if (j.contains("schemes"))
        {
            const auto &s = j.at("schemes");
            if (!s.is_array())
                throw ConfigError("schemes", "expected an array of strings");
            c.schemes.clear();
            for (const auto &e : s)
            {
                if (!e.is_string())
                    throw ConfigError("schemes", "expected an array of strings");
                c.schemes.push_back(e.get<std::string>());
            }
        }

        if (j.contains("obstacles"))
        {
            const auto &obs = j.at("obstacles");
            if (!obs.is_array())
                throw ConfigError("obstacles", "expected an array");
            for (std::size_t i = 0; i < obs.size(); ++i)
            {
                const std::string f = "obstacles[" + std::to_string(i) + "]";
                reject_unknown(obs[i], f, {"x", "z"});
                if (!obs[i].contains("x") || !obs[i].contains("z"))
                    throw ConfigError(f, "needs both x and z ranges");
                c.obstacles.push_back({get_pair(obs[i], f, "x", {}), get_pair(obs[i], f, "z", {})});
            }
        }

        if (j.contains("solver"))
        {
            const auto &s = j.at("solver");
            const std::string p = "solver";
            reject_unknown(s, p, {"rho_init", "rho_first_penalty", "rho_growth", "rank_gap_tol", "obj_tol",
                                  "max_sca_iters", "max_penalty_rounds", "sdp_max_iterations", "warm_start"});
            auto &o = c.solver;
            o.rho_init = get_number(s, p, "rho_init", o.rho_init);
            o.rho_first_penalty = get_number(s, p, "rho_first_penalty", o.rho_first_penalty);
            o.rho_growth = get_number(s, p, "rho_growth", o.rho_growth);
            o.rank_gap_tol = get_number(s, p, "rank_gap_tol", o.rank_gap_tol);
            o.obj_tol = get_number(s, p, "obj_tol", o.obj_tol);
            o.max_sca_iters = get_int(s, p, "max_sca_iters", o.max_sca_iters);
            o.max_penalty_rounds = get_int(s, p, "max_penalty_rounds", o.max_penalty_rounds);
            o.sdp_max_iterations = get_int(s, p, "sdp_max_iterations", o.sdp_max_iterations);
            o.warm_start = get_string(s, p, "warm_start", o.warm_start);
        }

        if (j.contains("grid"))
        {
            const auto &g = j.at("grid");
            reject_unknown(g, "grid", {"nx", "nz", "x_margin", "z_extent"});
            c.grid.nx = get_int(g, "grid", "nx", c.grid.nx);
            c.grid.nz = get_int(g, "grid", "nz", c.grid.nz);
            c.grid.x_margin = get_number(g, "grid", "x_margin", c.grid.x_margin);
            c.grid.z_extent = get_number(g, "grid", "z_extent", c.grid.z_extent);
        }

        c.tangent_integrand = get_string(j, "", "tangent_integrand", c.tangent_integrand);
        c.output_dir = get_string(j, "", "output_dir", c.output_dir);
        if (j.contains("seed"))
        {
            const auto &s = j.at("seed");
            if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
                throw ConfigError("seed", "expected a non-negative integer");
            c.seed = s.get<std::uint64_t>();
        }

        c.validate();
        return c;
    }

    json config_to_json(const ScenarioConfig &c)
    {
        json j;
        j["carrier_frequency_hz"] = c.carrier_frequency_hz;
        j["num_antennas"] = c.num_antennas;
        if (c.spacing)
            j["spacing"] = *c.spacing;
        else
            j["spacing"] = "half-wavelength";

        json t;
        t["kind"] = c.trajectory.kind;
        if (c.trajectory.kind == "parabola")
        {
            t["beta"] = c.trajectory.beta;
            t["z_range"] = c.trajectory.z_range;
        }
        else
        {
            t["z"] = c.trajectory.z;
            t["x"] = c.trajectory.x;
        }
        j["trajectory"] = t;

        j["num_samples"] = c.num_samples;
        j["scheme"] = c.scheme;
        j["schemes"] = c.schemes;
        j["obstacles"] = json::array();
        for (const auto &o : c.obstacles)
            j["obstacles"].push_back({{"x", o.x}, {"z", o.z}});

        const auto &s = c.solver;
        j["solver"] = {{"rho_init", s.rho_init},
                       {"rho_first_penalty", s.rho_first_penalty},
                       {"rho_growth", s.rho_growth},
                       {"rank_gap_tol", s.rank_gap_tol},
                       {"obj_tol", s.obj_tol},
                       {"max_sca_iters", s.max_sca_iters},
                       {"max_penalty_rounds", s.max_penalty_rounds},
                       {"sdp_max_iterations", s.sdp_max_iterations},
                       {"warm_start", s.warm_start}};
        j["grid"] = {{"nx", c.grid.nx}, {"nz", c.grid.nz}, {"x_margin", c.grid.x_margin}, {"z_extent", c.grid.z_extent}};
        j["tangent_integrand"] = c.tangent_integrand;
        j["output_dir"] = c.output_dir;
        j["seed"] = c.seed;
        return j;
    }

    ScenarioConfig parse_config(const std::string &text)
    {
        json j;
        try
        {
            j = json::parse(text, nullptr, true, true); // comments allowed
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
        }
        return config_from_json(j);
    }

    ScenarioConfig load_config(const std::string &path)
    {
        std::string text;
        try
        {
            text = read_text_file(path);
        }
        catch (const std::runtime_error &e)
        {
            throw ConfigError("<file>", e.what());
        }
        return parse_config(text);
    }

    std::string dump_config(const ScenarioConfig &cfg)
    {
        return config_to_json(cfg).dump(2) + "\n";
    }

    std::string config_hash(const ScenarioConfig &cfg)
    {
        const std::string canonical = config_to_json(cfg).dump();
        std::uint64_t h = 14695981039346656037ULL;
        for (unsigned char ch : canonical)
        {
            h ^= ch;
            h *= 1099511628211ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    ScenarioConfig with_parameter(ScenarioConfig cfg, const std::string &param, double value)
    {
        if (param == "beta")
        {
            if (cfg.trajectory.kind != "parabola")
                throw ConfigError("trajectory.kind", "a beta sweep needs a parabolic trajectory");
            cfg.trajectory.beta = value;
        }
        else if (param == "N" || param == "M")
        {
            if (std::floor(value) != value || value < 1.0 || value > 1e6)
                throw ConfigError("sweep.values", "N and M sweeps need positive integer values");
            (param == "N" ? cfg.num_antennas : cfg.num_samples) = static_cast<int>(value);
        }
        else
            throw ConfigError("sweep.param", "expected beta, N or M");
        cfg.validate();
        return cfg;
    }
}
