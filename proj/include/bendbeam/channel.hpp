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

#ifndef BENDBEAM_CHANNEL_HPP
#define BENDBEAM_CHANNEL_HPP

#include "bendbeam/geometry.hpp"

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

namespace bendbeam
{
    using cdouble = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;

    // Spherical-wave gains h_n = lambda / (4 pi d_n) * exp(+j 2 pi d_n / lambda), zero where blocked
    struct ChannelVector
    {
        CVector gains;
        Point2 target;
    };

    // Row m holds the transposed channel of sample point m (M x N)
    struct ChannelMatrix
    {
        CMatrix rows;
        std::vector<Point2> targets;

        int num_points() const { return static_cast<int>(rows.rows()); }
        int num_antennas() const { return static_cast<int>(rows.cols()); }
        ChannelVector row(int m) const { return {rows.row(m).transpose(), targets.at(static_cast<std::size_t>(m))}; }
    };

    enum class Scheme
    {
        abf, // analog: phase-only, |w_n| = 1/sqrt(N)
        dbf  // digital: amplitude and phase, ||w||_2 = 1
    };

    const char *to_string(Scheme s);

    /*!
    Transmit beamforming vector together with the hardware scheme it obeys.

    Construction checks the scheme constraint: every entry of an ABF vector
    has modulus 1/sqrt(N) and a DBF vector has unit l2 norm (both to 1e-12).
    */
    class Beamformer
    {
    public:
        Beamformer(CVector weights, Scheme scheme);

        // w_n = exp(j phases_n) / sqrt(N)
        static Beamformer from_phases(const std::vector<double> &phases);

        const CVector &weights() const { return weights_; }
        Scheme scheme() const { return scheme_; }
        int size() const { return static_cast<int>(weights_.size()); }

    private:
        CVector weights_;
        Scheme scheme_;
    };

    ChannelVector channel_at(const ArrayGeometry &geom, Point2 target, const std::vector<Obstacle> &obstacles = {});

    ChannelMatrix build_channel_matrix(const ArrayGeometry &geom, const SamplePoints &samples,
                                       const std::vector<Obstacle> &obstacles = {});

    // |w^H h|^2
    double received_power(const CVector &w, const CVector &h);
    double received_power(const Beamformer &w, const ChannelVector &h);

    // Received power at every row of H
    Eigen::VectorXd trajectory_powers(const CVector &w, const ChannelMatrix &H);

    // Minimum power over the rows and its first index
    std::pair<double, int> min_trajectory_power(const CVector &w, const ChannelMatrix &H);
    std::pair<double, int> min_trajectory_power(const Beamformer &w, const ChannelMatrix &H);
}

#endif
