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

#ifndef BENDBEAM_TESTS_SUPPORT_HPP
#define BENDBEAM_TESTS_SUPPORT_HPP

#include "bendbeam/channel.hpp"

#include <cmath>
#include <random>

namespace bendbeam::testing
{
    inline CVector random_cvector(std::mt19937_64 &rng, Eigen::Index n)
    {
        std::normal_distribution<double> g;
        CVector v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v(i) = cdouble(g(rng), g(rng));
        return v;
    }

    // Random Hermitian PSD matrix of the given rank
    inline CMatrix random_psd(std::mt19937_64 &rng, Eigen::Index n, Eigen::Index rank)
    {
        CMatrix V = CMatrix::Zero(n, n);
        for (Eigen::Index r = 0; r < rank; ++r)
        {
            const CVector v = random_cvector(rng, n);
            V += v * v.adjoint();
        }
        return V;
    }

    inline CVector unit_modulus(const CVector &w)
    {
        CVector out(w.size());
        const double a = 1.0 / std::sqrt(static_cast<double>(w.size()));
        for (Eigen::Index i = 0; i < w.size(); ++i)
            out(i) = std::polar(a, std::arg(w(i)));
        return out;
    }

    inline double rel_diff(double a, double b)
    {
        return std::abs(a - b) / std::max(std::abs(b), 1e-300);
    }
}

#endif
