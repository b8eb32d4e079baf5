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


// Drives the installed command-line tool end to end through the shell.

#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace
{
    const fs::path data_dir = fs::path(BENDBEAM_SOURCE_DIR) / "tests" / "data";
    const fs::path golden_dir = fs::path(BENDBEAM_SOURCE_DIR) / "tests" / "golden";
    const fs::path work_root = fs::path(BENDBEAM_WORK_DIR);

    struct Outcome
    {
        int code = -1;
        std::string err;
    };

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }

    fs::path fresh_dir(const std::string &name)
    {
        const fs::path d = work_root / name;
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }

    // args are passed verbatim to /bin/sh; env is an optional "VAR=value" prefix
    Outcome run(const std::string &args, const std::string &env = "")
    {
        fs::create_directories(work_root);
        const fs::path err = work_root / "stderr.txt";
        const std::string cmd = "cd '" + work_root.string() + "' && " + env + " '" + BENDBEAM_CLI + "' " + args +
                                " >/dev/null 2>'" + err.string() + "'";
        const int raw = std::system(cmd.c_str());
        Outcome o;
        o.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        o.err = slurp(err);
        return o;
    }

    // every numeric cell of a CSV, header text dropped
    std::vector<double> numbers(const std::string &csv)
    {
        std::vector<double> v;
        std::istringstream in(csv);
        std::string cell;
        while (std::getline(in, cell, ','))
        {
            std::istringstream line(cell);
            std::string tok;
            while (std::getline(line, tok))
                if (!tok.empty() && tok.find_first_not_of("0123456789.eE+-") == std::string::npos)
                    v.push_back(std::stod(tok));
        }
        return v;
    }

    std::string cfg(const std::string &name)
    {
        return "'" + (data_dir / name).string() + "'";
    }
}

TEST_CASE("synthesize writes weights, trace and manifest")
{
    const fs::path out = fresh_dir("synth");
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = run("synthesize --config " + cfg("toy.json") + " --out '" + out.string() + "'");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    INFO(o.err);
    REQUIRE(o.code == 0);
    CHECK(secs < 10.0);
    CHECK(fs::exists(out / "weights_abf.csv"));
    CHECK(fs::exists(out / "trace_abf.csv"));
    const auto m = nlohmann::json::parse(slurp(out / "manifest_synthesize.json"));
    CHECK(m["command"] == "synthesize");
    CHECK(m["complete"] == true);
    CHECK(m["config_hash"].get<std::string>().size() == 16);
    CHECK(m["runs"].size() == 1);
    CHECK(m["runs"][0]["scheme"] == "abf");
}

TEST_CASE("tangent scheme writes its phase profile")
{
    const fs::path out = fresh_dir("tangent");
    const Outcome o = run("synthesize --config " + cfg("toy.json") + " --scheme tangent --out '" + out.string() + "'");
    INFO(o.err);
    REQUIRE(o.code == 0);
    CHECK(fs::exists(out / "weights_tangent.csv"));
    CHECK(fs::exists(out / "phases_tangent.csv"));
    CHECK_FALSE(fs::exists(out / "trace_tangent.csv"));
}

TEST_CASE("fieldmap output matches the frozen grid")
{
    const fs::path out = fresh_dir("golden");
    const Outcome o = run("fieldmap --config " + cfg("toy.json") + " --scheme tangent --out '" + out.string() + "'");
    INFO(o.err);
    REQUIRE(o.code == 0);
    CHECK(slurp(out / "fieldmap_tangent.csv") == slurp(golden_dir / "toy_fieldmap_tangent.csv"));

    const std::string pgm = slurp(out / "fieldmap_tangent.pgm");
    const std::string header = "P5\n16 12\n255\n";
    REQUIRE(pgm.size() == header.size() + 16 * 12);
    CHECK(pgm.substr(0, header.size()) == header);

    const auto m = nlohmann::json::parse(slurp(out / "manifest_fieldmap.json"));
    CHECK(m["grid"]["nx"] == 16);
    CHECK(m["grid"]["nz"] == 12);
    CHECK(m.contains("ridge_tracking_fraction"));
}

TEST_CASE("fieldmap can evaluate supplied weights")
{
    const fs::path a = fresh_dir("weights_a"), b = fresh_dir("weights_b");
    REQUIRE(run("synthesize --config " + cfg("toy.json") + " --scheme tangent --out '" + a.string() + "'").code == 0);
    const Outcome o = run("fieldmap --config " + cfg("toy.json") + " --weights '" + (a / "weights_tangent.csv").string() +
                          "' --out '" + b.string() + "'");
    INFO(o.err);
    REQUIRE(o.code == 0);
    bool found = false;
    for (const auto &e : fs::directory_iterator(b))
        if (e.path().extension() == ".csv" && e.path().filename().string().rfind("fieldmap_", 0) == 0)
        {
            // weights are stored to 12 digits, so the grid agrees to that order rather than bitwise
            const auto got = numbers(slurp(e.path())), want = numbers(slurp(golden_dir / "toy_fieldmap_tangent.csv"));
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i)
                CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
            found = true;
        }
    CHECK(found);
}

TEST_CASE("blocked scenario records its obstacles")
{
    const fs::path out = fresh_dir("blocked");
    const Outcome o = run("profile --config " + cfg("toy_blocked.json") + " --out '" + out.string() + "'");
    INFO(o.err);
    REQUIRE(o.code == 0);
    CHECK(fs::exists(out / "profile_dbf.csv"));
    CHECK(fs::exists(out / "metrics_dbf.json"));
    const auto m = nlohmann::json::parse(slurp(out / "manifest_profile.json"));
    REQUIRE(m["obstacles"].size() == 1);
    CHECK(m["obstacles"][0]["x"][0].get<double>() == doctest::Approx(0.0045));
    CHECK(m["obstacles"][0]["z"][1].get<double>() == doctest::Approx(0.007));
}

TEST_CASE("compare writes profiles and metrics for every scheme")
{
    const fs::path out = fresh_dir("compare");
    const Outcome o = run("compare --config " + cfg("toy.json") + " --out '" + out.string() + "'");
    INFO(o.err);
    REQUIRE(o.code == 0);
    const std::string header = slurp(out / "profiles.csv").substr(0, 28);
    CHECK(header == "index,x,z,abf,dbf,tangent\n0,");
    const auto metrics = nlohmann::json::parse(slurp(out / "metrics.json"));
    CHECK(metrics.size() == 3);
    for (const char *s : {"abf", "dbf", "tangent"})
        CHECK(fs::exists(out / (std::string("weights_") + s + ".csv")));
}

TEST_CASE("invalid input exits with status 2")
{
    const fs::path out = fresh_dir("invalid");
    const std::string o_flag = " --out '" + out.string() + "'";

    const Outcome beta = run("synthesize --config " + cfg("bad_beta.json") + o_flag);
    CHECK(beta.code == 2);
    CHECK(beta.err.find("trajectory.beta") != std::string::npos);

    CHECK(run("synthesize --config " + cfg("toy.json") + " --scheme nope" + o_flag).code == 2);
    CHECK(run("synthesize --config '" + (data_dir / "missing.json").string() + "'" + o_flag).code == 2);
    CHECK(run("synthesize" + o_flag).code == 2);
    CHECK(run("frobnicate --config " + cfg("toy.json")).code == 2);
    CHECK(run("synthesize --config " + cfg("toy.json") + " --jobs 0" + o_flag).code == 2);

    const Outcome single = run("compare --config " + cfg("toy_single_scheme.json") + o_flag);
    CHECK(single.code == 2);
    CHECK(single.err.find("schemes") != std::string::npos);

    CHECK(run("sweep --config " + cfg("toy.json") + " --param beta" + o_flag).code == 2);
    CHECK(run("sweep --config " + cfg("toy.json") + " --param beta --values ''" + o_flag).code == 2);
    CHECK(run("sweep --config " + cfg("toy.json") + " --param gamma --values 1" + o_flag).code == 2);
    CHECK(run("sweep --config " + cfg("toy.json") + " --param beta --values 0.5,-1" + o_flag).code == 2);
}

TEST_CASE("output directory precedence")
{
    const fs::path flag = fresh_dir("prec_flag"), env = fresh_dir("prec_env");
    const std::string args = "synthesize --config " + cfg("toy.json") + " --scheme tangent";

    REQUIRE(run(args, "BENDBEAM_OUT_DIR='" + env.string() + "'").code == 0);
    CHECK(fs::exists(env / "weights_tangent.csv"));

    REQUIRE(run(args + " --out '" + flag.string() + "'", "BENDBEAM_OUT_DIR='" + env.string() + "'").code == 0);
    CHECK(fs::exists(flag / "weights_tangent.csv"));

    // fall back to the configured output_dir, relative to the working directory
    fs::remove_all(work_root / "out");
    REQUIRE(run(args).code == 0);
    CHECK(fs::exists(work_root / "out" / "weights_tangent.csv"));
}

TEST_CASE("sweep rows are deterministic and independent of worker count")
{
    const fs::path a = fresh_dir("sweep_a"), b = fresh_dir("sweep_b");
    const std::string args = "sweep --config " + cfg("desk_sweep.json") + " --param beta --values 0.2,0.25,0.3";
    const Outcome oa = run(args + " --jobs 1 --out '" + a.string() + "'");
    const Outcome ob = run(args + " --jobs 2 --out '" + b.string() + "'");
    INFO(oa.err);
    REQUIRE(oa.code == 0);
    REQUIRE(ob.code == 0);
    const std::string csv = slurp(a / "sweep_beta.csv");
    CHECK(csv == slurp(b / "sweep_beta.csv"));

    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "beta,scheme,status,p_min,p_user,p_max,ripple_db");
    int abf = 0, dbf = 0, tangent = 0;
    while (std::getline(in, line))
    {
        abf += line.find(",abf,") != std::string::npos;
        dbf += line.find(",dbf,") != std::string::npos;
        tangent += line.find(",tangent,") != std::string::npos;
        CHECK(line.find(",failed,") == std::string::npos);
    }
    CHECK(abf == 3);
    CHECK(dbf == 3);
    CHECK(tangent == 3);
}
