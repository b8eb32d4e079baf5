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

#ifndef BENDBEAM_SDP_HPP
#define BENDBEAM_SDP_HPP

#include "bendbeam/channel.hpp"

#include <optional>

/*!SECTION
Convex subproblem
SECTION!*/

/*!MD
# solve_subproblem
Solves the semidefinite program

    maximize    t + rho * ( Re Tr(C V) - Tr(V) )
    subject to  Tr(R_m V) >= t,          m = 1..M,   R_m = h_m h_m^H
                V(n,n) = 1/N             (diag_equal, analog beamforming)
             or Tr(V) = 1                (trace_equal, digital beamforming)
                V Hermitian PSD

## Method:
- Infeasible primal-dual path-following interior-point method with the HKM
  search direction and Mehrotra predictor-corrector steps.
- Complex Hermitian matrices are handled natively; the dual multipliers are real.
- Every constraint matrix is rank one (R_m and e_n e_n^T) or the identity, so the
  Schur complement entry Tr(A_i X A_j Z^-1) reduces to (g_i^H X g_j)(g_j^H Z^-1 g_i)
  and costs O(N^2 (M+N)) per iteration instead of O((M+N) N^3).
- Since t* = min_m Tr(R_m V*) >= 0, t is carried as a nonnegative variable
  together with the slacks of the power constraints.
- Channels are rescaled internally so that the largest ||h_m||^2 is one.

## Returned solution:
- V is symmetrized and projected exactly onto the affine set (diagonal rescaling for
  diag_equal, trace normalization for trace_equal); t is then min_m Tr(R_m V), so the
  power constraints hold exactly.
- When a warm start is given it is treated as a feasible candidate: if it scores a
  higher objective than the interior-point result, it is returned instead.
MD!*/

namespace bendbeam
{
    enum class ConstraintKind
    {
        diag_equal, // V(n,n) = 1/N
        trace_equal // Tr(V) = 1
    };

    enum class SolveStatus
    {
        optimal,
        max_iterations,
        infeasible
    };

    const char *to_string(SolveStatus s);

    struct SubproblemSpec
    {
        CMatrix channels;     // M x N, row m is h_m^T
        CMatrix linear_term;  // N x N Hermitian C; empty means zero
        ConstraintKind constraint = ConstraintKind::diag_equal;
        double rho = 0.0;
    };

    struct SdpOptions
    {
        int max_iterations = 200;
        double target_tol = 1e-10;   // relative gap / infeasibility the iteration aims for
        double feasibility_tol = 1e-7;
        double optimality_tol = 1e-6;
        double step_fraction = 0.95;
    };

    struct SubproblemSolution
    {
        CMatrix V;
        double t = 0.0;
        double objective = 0.0;
        SolveStatus status = SolveStatus::max_iterations;
        int iterations = 0;
        double primal_infeasibility = 0.0; // interior-point residuals, relative
        double dual_infeasibility = 0.0;
        double relative_gap = 0.0;
        double constraint_residual = 0.0;  // of the returned, projected V
        bool used_warm_start = false;
    };

    // Objective value t + rho (Re Tr(CV) - Tr V) with t = min_m Tr(R_m V)
    double subproblem_objective(const SubproblemSpec &spec, const CMatrix &V);

    // min_m Re h_m^H V h_m
    double min_quadratic_power(const CMatrix &channels, const CMatrix &V);

    SubproblemSolution solve_subproblem(const SubproblemSpec &spec,
                                        const std::optional<CMatrix> &warm_start = std::nullopt,
                                        const SdpOptions &opts = {});
}

#endif
