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

#ifndef BENDBEAM_MAXMIN_HPP
#define BENDBEAM_MAXMIN_HPP

#include "bendbeam/channel.hpp"
#include "bendbeam/sdp.hpp"

#include <optional>
#include <string>
#include <vector>

/*!SECTION
Max-min bending beamforming
SECTION!*/

/*!MD
# solve_maxmin
Maximizes the minimum received power over the trajectory samples,

    max_w  min_m |w^H h_m|^2   s.t. |w_n| = 1/sqrt(N) (ABF)  or  ||w||_2 = 1 (DBF)

by lifting to V = w w^H, relaxing rank(V) = 1 and penalizing the rank-one gap
f(V) = Tr(V) - sigma_max(V) in the objective t - rho f(V).

## Algorithm:
- Outer loop (penalty rounds): the first round uses rho_init (0 by default, the
  plain relaxation). If the rank gap exceeds rank_gap_tol * Tr(V), rho is set to
  rho_first_penalty (or multiplied by rho_growth once positive) and the inner loop runs again.
- Inner loop (SCA): with s the unit top eigenvector of the current iterate V_i,
  sigma_max(V) >= s^H V s, so f(V) <= Tr(V) - s^H V s. Maximizing the concave
  surrogate t - rho (Tr V - s^H V s) is the convex subproblem handed to
  solve_subproblem. The surrogate value cannot decrease between iterations; if a
  solve returns a point worse than V_i, V_i is kept and the loop stops.
- Extraction: principal eigenvector u of the final V. ABF takes the elementwise
  phase, w_n = exp(j arg u_n) / sqrt(N); DBF takes w = u.

## Units:
- The channel is rescaled internally so that the weakest nonzero ||h_m||^2 is one.
  rho and every value in the trace log are in these normalized units; multiply
  powers by power_scale to get watts-per-watt.
MD!*/

namespace bendbeam
{
    struct SolverConfig
    {
        Scheme scheme = Scheme::abf;
        double rho_init = 0.0;
        double rho_first_penalty = 1e-2;
        double rho_growth = 3.0;
        double rank_gap_tol = 1e-4;
        double obj_tol = 1e-6;
        int max_sca_iters = 100;
        int max_penalty_rounds = 12;
        SdpOptions sdp;

        void validate() const;
    };

    struct TraceEntry
    {
        int round = 0;
        int iteration = 0;
        double rho = 0.0;
        double t = 0.0;         // min_m Tr(R_m V), normalized
        double surrogate = 0.0; // t - rho (Tr V - s^H V s) at the new iterate
        double penalized = 0.0; // t - rho (Tr V - sigma_max V)
        double rank_gap = 0.0;
        int sdp_iterations = 0;
    };

    struct SolverState
    {
        CMatrix V;
        double t = 0.0;   // normalized
        double rho = 0.0; // normalized
        double power_scale = 1.0;
        double relaxation_bound = 0.0; // plain-relaxation optimum (normalized), NaN if never solved
        double rank_gap = 0.0;
        SolveStatus status = SolveStatus::max_iterations;
        int penalty_rounds = 0;
        int sdp_solves = 0;
        std::vector<TraceEntry> trace_log;
    };

    struct MaxMinResult
    {
        Beamformer w;
        SolverState state;
    };

    struct TopEigen
    {
        double value = 0.0;
        CVector vector;
        bool degenerate = false;
    };

    // Largest eigenpair of a Hermitian matrix with a deterministic eigenvector choice.
    // A repeated top eigenvalue (within 1e-10 relative) selects the unit projection of the first
    // standard basis vector e_k with a nonzero component in the eigenspace; the phase is fixed so
    // that the first entry above 1e-12 in magnitude is real positive.
    TopEigen top_eigenpair(const CMatrix &V);

    // Tr(V) - sigma_max(V)
    double rank_gap(const CMatrix &V);

    struct LinearizedPenalty
    {
        double value = 0.0;
        CMatrix gradient; // I - s s^H
    };

    // Majorant of the rank gap at V_ref: Tr(V) - sigma(V_ref) - Re Tr(s s^H (V - V_ref))
    LinearizedPenalty linearized_penalty(const CMatrix &V, const CMatrix &V_ref);

    Beamformer extract_beamformer(const CMatrix &V, Scheme scheme);

    MaxMinResult solve_maxmin(const ChannelMatrix &H, const SolverConfig &cfg,
                              const std::optional<CMatrix> &V0 = std::nullopt);

    // Renders the trace as CSV: round,iteration,rho,t,surrogate,penalized,rank_gap,sdp_iterations
    std::string trace_to_csv(const std::vector<TraceEntry> &trace);
}

#endif
