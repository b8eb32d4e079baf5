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

#include "bendbeam/channel.hpp"
#include "bendbeam/errors.hpp"

#include <cmath>
#include <string>

namespace bendbeam
{
    const char *to_string(Scheme s)
    {
        return s == Scheme::abf ? "abf" : "dbf";
    }

    Beamformer::Beamformer(CVector weights, Scheme scheme)
        : weights_(std::move(weights)), scheme_(scheme)
    {
        const auto n = weights_.size();
        if (n < 1)
            throw ContractViolation("Beamformer: empty weight vector");
        if (!weights_.allFinite())
            throw ContractViolation("Beamformer: non-finite weights");

        if (scheme_ == Scheme::abf)
        {
            const double target = 1.0 / std::sqrt(static_cast<double>(n));
            for (Eigen::Index i = 0; i < n; ++i)
                if (std::abs(std::abs(weights_(i)) - target) > 1e-12)
                    throw ContractViolation("Beamformer: ABF entry " + std::to_string(i) + " violates |w| = 1/sqrt(N)");
        }
        else if (std::abs(weights_.squaredNorm() - 1.0) > 1e-12)
            throw ContractViolation("Beamformer: DBF weights must have unit norm");
    }

    Beamformer Beamformer::from_phases(const std::vector<double> &phases)
    {
        const auto n = static_cast<Eigen::Index>(phases.size());
        if (n < 1)
            throw ContractViolation("Beamformer: empty phase profile");
        const double amp = 1.0 / std::sqrt(static_cast<double>(n));
        CVector w(n);
        for (Eigen::Index i = 0; i < n; ++i)
            w(i) = std::polar(amp, phases[static_cast<std::size_t>(i)]);
        return Beamformer(std::move(w), Scheme::abf);
    }

    ChannelVector channel_at(const ArrayGeometry &geom, Point2 target, const std::vector<Obstacle> &obstacles)
    {
        const int N = geom.num_antennas();
        const double lambda = geom.wavelength();
        const double k = geom.wavenumber();

        ChannelVector h{CVector::Zero(N), target};
        for (int n = 0; n < N; ++n)
        {
            const Point2 a = geom.antenna(n);
            const double d = std::hypot(target.x - a.x, target.z - a.z);
            if (!(d > 0.0))
                throw DegenerateGeometry("channel_at: target coincides with antenna " + std::to_string(n));
            if (!obstacles.empty() && segment_blocked(a, target, obstacles))
                continue;
            h.gains(n) = std::polar(lambda / (4.0 * pi * d), k * d);
        }
        return h;
    }

    ChannelMatrix build_channel_matrix(const ArrayGeometry &geom, const SamplePoints &samples,
                                       const std::vector<Obstacle> &obstacles)
    {
        if (samples.size() == 0)
            throw ContractViolation("build_channel_matrix: no sample points");

        ChannelMatrix H;
        H.rows.resize(static_cast<Eigen::Index>(samples.size()), geom.num_antennas());
        H.targets = samples.points;
        for (std::size_t m = 0; m < samples.size(); ++m)
            H.rows.row(static_cast<Eigen::Index>(m)) = channel_at(geom, samples[m], obstacles).gains.transpose();
        return H;
    }

    double received_power(const CVector &w, const CVector &h)
    {
        if (w.size() != h.size())
            throw ContractViolation("received_power: dimension mismatch");
        return std::norm(w.dot(h)); // Eigen's dot conjugates the left operand
    }

    double received_power(const Beamformer &w, const ChannelVector &h)
    {
        return received_power(w.weights(), h.gains);
    }

    Eigen::VectorXd trajectory_powers(const CVector &w, const ChannelMatrix &H)
    {
        if (w.size() != H.rows.cols())
            throw ContractViolation("trajectory_powers: dimension mismatch");
        // row m of H times conj(w) = w^H h_m
        const CVector y = H.rows * w.conjugate();
        return y.cwiseAbs2();
    }

    std::pair<double, int> min_trajectory_power(const CVector &w, const ChannelMatrix &H)
    {
        const Eigen::VectorXd p = trajectory_powers(w, H);
        if (p.size() == 0)
            throw ContractViolation("min_trajectory_power: empty channel matrix");
        int idx = 0;
        for (Eigen::Index m = 1; m < p.size(); ++m)
            if (p(m) < p(idx))
                idx = static_cast<int>(m);
        return {p(idx), idx};
    }

    std::pair<double, int> min_trajectory_power(const Beamformer &w, const ChannelMatrix &H)
    {
        return min_trajectory_power(w.weights(), H);
    }
}
