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

#include "bendbeam/io.hpp"
#include "bendbeam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bendbeam
{
    std::string format_real(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12e", v);
        return buf;
    }

    void write_beamformer_csv(std::ostream &os, const Beamformer &w)
    {
        os << "# scheme=" << to_string(w.scheme()) << '\n';
        os << "index,re,im\n";
        for (int n = 0; n < w.size(); ++n)
            os << n << ',' << format_real(w.weights()(n).real()) << ',' << format_real(w.weights()(n).imag()) << '\n';
    }

    Beamformer read_beamformer_csv(std::istream &is)
    {
        std::string line;
        Scheme scheme = Scheme::dbf;
        bool have_header = false;
        std::vector<cdouble> values;
        while (std::getline(is, line))
        {
            if (line.empty())
                continue;
            if (line[0] == '#')
            {
                if (line.find("scheme=abf") != std::string::npos)
                    scheme = Scheme::abf;
                continue;
            }
            if (!have_header)
            {
                if (line != "index,re,im")
                    throw ContractViolation("read_beamformer_csv: expected header 'index,re,im'");
                have_header = true;
                continue;
            }
            std::istringstream row(line);
            std::string idx, re, im;
            if (!std::getline(row, idx, ',') || !std::getline(row, re, ',') || !std::getline(row, im))
                throw ContractViolation("read_beamformer_csv: malformed row '" + line + "'");
            if (std::stoul(idx) != values.size())
                throw ContractViolation("read_beamformer_csv: indices must be consecutive from 0");
            values.emplace_back(std::stod(re), std::stod(im));
        }
        if (values.empty())
            throw ContractViolation("read_beamformer_csv: no weights");

        CVector w(static_cast<Eigen::Index>(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i)
            w(static_cast<Eigen::Index>(i)) = values[i];

        // Text round-off: restore the exact scheme constraint
        if (scheme == Scheme::abf)
        {
            const double amp = 1.0 / std::sqrt(static_cast<double>(w.size()));
            for (Eigen::Index i = 0; i < w.size(); ++i)
                w(i) = std::polar(amp, std::arg(w(i)));
        }
        else
            w.normalize();
        return Beamformer(std::move(w), scheme);
    }

    void write_phase_profile_csv(std::ostream &os, const PhaseProfile &p, const ArrayGeometry &geom)
    {
        os << "index,x,phase_rad\n";
        for (std::size_t n = 0; n < p.size(); ++n)
            os << n << ',' << format_real(geom.antenna_x().at(n)) << ',' << format_real(p.phases[n]) << '\n';
    }

    void write_grid_csv(std::ostream &os, const FieldGrid &grid)
    {
        os << "z\\x";
        for (double x : grid.x_axis)
            os << ',' << format_real(x);
        os << '\n';
        for (std::size_t i = 0; i < grid.z_axis.size(); ++i)
        {
            os << format_real(grid.z_axis[i]);
            for (Eigen::Index j = 0; j < grid.power.cols(); ++j)
                os << ',' << format_real(grid.power(static_cast<Eigen::Index>(i), j));
            os << '\n';
        }
    }

    void write_grid_pgm(std::ostream &os, const FieldGrid &grid, double floor_db)
    {
        if (!(floor_db > 0.0))
            throw ContractViolation("write_grid_pgm: floor must be positive");
        const auto nz = grid.power.rows(), nx = grid.power.cols();
        const double pmax = grid.power.size() > 0 ? grid.power.maxCoeff() : 0.0;

        os << "P5\n"
           << nx << ' ' << nz << "\n255\n";
        std::string row(static_cast<std::size_t>(nx), '\0');
        for (Eigen::Index i = nz - 1; i >= 0; --i)
        {
            for (Eigen::Index j = 0; j < nx; ++j)
            {
                const double p = grid.power(i, j);
                double level = -floor_db;
                if (pmax > 0.0 && p > 0.0)
                    level = std::clamp(10.0 * std::log10(p / pmax), -floor_db, 0.0);
                const long g = std::lround(255.0 * (level + floor_db) / floor_db);
                row[static_cast<std::size_t>(j)] = static_cast<char>(static_cast<unsigned char>(g));
            }
            os.write(row.data(), static_cast<std::streamsize>(row.size()));
        }
    }

    void write_profiles_csv(std::ostream &os, const std::vector<TrajectoryProfile> &profiles)
    {
        if (profiles.empty())
            throw ContractViolation("write_profiles_csv: no profiles");
        compare_schemes(profiles); // sampling consistency

        os << "index,x,z";
        for (const auto &p : profiles)
            os << ',' << p.label;
        os << '\n';
        const auto &ref = profiles.front();
        for (std::size_t m = 0; m < ref.z.size(); ++m)
        {
            os << m << ',' << format_real(ref.x[m]) << ',' << format_real(ref.z[m]);
            for (const auto &p : profiles)
                os << ',' << format_real(p.power[m]);
            os << '\n';
        }
    }

    nlohmann::json metrics_to_json(const std::vector<ComparisonMetrics> &metrics)
    {
        nlohmann::json out = nlohmann::json::array();
        for (const auto &m : metrics)
            out.push_back({{"scheme", m.label},
                           {"p_min", m.p_min},
                           {"p_user", m.p_user},
                           {"p_max", m.p_max},
                           {"ripple_db", m.ripple_db}});
        return out;
    }

    void write_text_file(const std::string &path, const std::string &content)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        f << content;
        if (!f)
            throw std::runtime_error("failed writing '" + path + "'");
    }

    std::string read_text_file(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open '" + path + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
}
