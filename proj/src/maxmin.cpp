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

#include "bendbeam/maxmin.hpp"
#include "bendbeam/errors.hpp"
#include "bendbeam/log.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace bendbeam
{
    namespace
    {
        CMatrix herm(const CMatrix &A)
        {
            return 0.5 * (A + A.adjoint());
        }

        void check_hermitian(const CMatrix &V, const char *who)
        {
            if (V.rows() != V.cols() || V.rows() == 0)
                throw ContractViolation(std::string(who) + ": matrix must be square and nonempty");
            const double scale = std::max(1.0, V.cwiseAbs().maxCoeff());
            if ((V - V.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale)
                throw ContractViolation(std::string(who) + ": matrix is not Hermitian");
        }

        // Rescales V onto the feasible set of the scheme (diag = 1/N or trace = 1)
        CMatrix project_feasible(CMatrix V, Scheme scheme)
        {
            const auto N = V.rows();
            V = herm(V);
            if (scheme == Scheme::dbf)
                return V / V.trace().real();
            Eigen::VectorXd d(N);
            for (Eigen::Index n = 0; n < N; ++n)
                d(n) = std::sqrt((1.0 / N) / std::max(V(n, n).real(), 1e-300));
            CMatrix out = d.asDiagonal() * V * d.asDiagonal();
            out.diagonal().setConstant(1.0 / N);
            return out;
        }

        double surrogate_value(const CMatrix &channels, const CMatrix &V, const CVector &s, double rho)
        {
            const double t = min_quadratic_power(channels, V);
            if (rho == 0.0)
                return t;
            const double sVs = s.dot(V * s).real();
            return t - rho * (V.trace().real() - sVs);
        }
    }

    void SolverConfig::validate() const
    {
        if (!(rho_init >= 0.0))
            throw ContractViolation("SolverConfig: rho_init must be >= 0");
        if (!(rho_first_penalty > 0.0))
            throw ContractViolation("SolverConfig: rho_first_penalty must be > 0");
        if (!(rho_growth > 1.0))
            throw ContractViolation("SolverConfig: rho_growth must be > 1");
        if (!(rank_gap_tol > 0.0) || !(obj_tol > 0.0))
            throw ContractViolation("SolverConfig: tolerances must be positive");
        if (max_sca_iters < 1 || max_penalty_rounds < 1)
            throw ContractViolation("SolverConfig: iteration limits must be >= 1");
    }

    TopEigen top_eigenpair(const CMatrix &V)
    {
        check_hermitian(V, "top_eigenpair");
        const auto N = V.rows();
        Eigen::SelfAdjointEigenSolver<CMatrix> es(herm(V));
        if (es.info() != Eigen::Success)
            throw ContractViolation("top_eigenpair: eigendecomposition failed");

        const auto &ev = es.eigenvalues();
        const double lmax = ev(N - 1);
        const double tol = 1e-10 * std::max(1.0, std::abs(lmax));
        Eigen::Index first = N - 1;
        while (first > 0 && ev(first - 1) >= lmax - tol)
            --first;

        TopEigen out;
        out.value = lmax;
        out.degenerate = first < N - 1;
        if (!out.degenerate)
            out.vector = es.eigenvectors().col(N - 1);
        else
        {
            const CMatrix U = es.eigenvectors().rightCols(N - first);
            for (Eigen::Index k = 0; k < N; ++k)
            {
                // projection of e_k onto the eigenspace
                const CVector proj = U * U.row(k).adjoint();
                if (proj.norm() > 1e-8)
                {
                    out.vector = proj.normalized();
                    break;
                }
            }
        }

        for (Eigen::Index k = 0; k < N; ++k)
            if (std::abs(out.vector(k)) > 1e-12)
            {
                out.vector *= std::conj(out.vector(k)) / std::abs(out.vector(k));
                break;
            }
        return out;
    }

    double rank_gap(const CMatrix &V)
    {
        return V.trace().real() - top_eigenpair(V).value;
    }

    LinearizedPenalty linearized_penalty(const CMatrix &V, const CMatrix &V_ref)
    {
        check_hermitian(V, "linearized_penalty");
        if (V.rows() != V_ref.rows())
            throw ContractViolation("linearized_penalty: dimension mismatch");
        const TopEigen top = top_eigenpair(V_ref);
        if (top.degenerate)
            log_warning("linearized_penalty: repeated top eigenvalue, using the canonical eigenvector");
        const CVector &s = top.vector;

        LinearizedPenalty out;
        const CMatrix D = V - V_ref;
        out.value = V.trace().real() - top.value - s.dot(D * s).real();
        out.gradient = CMatrix::Identity(V.rows(), V.cols()) - s * s.adjoint();
        return out;
    }

    Beamformer extract_beamformer(const CMatrix &V, Scheme scheme)
    {
        check_hermitian(V, "extract_beamformer");
        if (V.cwiseAbs().maxCoeff() == 0.0)
            throw NoPrincipalComponent("extract_beamformer: zero matrix");
        const TopEigen top = top_eigenpair(V);
        if (!(top.value > 0.0))
            throw NoPrincipalComponent("extract_beamformer: no positive eigenvalue");
        if (top.degenerate)
            log_warning("extract_beamformer: repeated top eigenvalue, using the canonical eigenvector");

        const auto N = V.rows();
        if (scheme == Scheme::dbf)
            return Beamformer(top.vector.normalized(), Scheme::dbf);

        std::vector<double> phases(static_cast<std::size_t>(N));
        for (Eigen::Index n = 0; n < N; ++n)
        {
            const cdouble u = top.vector(n);
            phases[static_cast<std::size_t>(n)] = (u == cdouble(0.0)) ? 0.0 : std::arg(u);
        }
        const double p0 = phases.front();
        for (auto &p : phases)
            p -= p0;
        return Beamformer::from_phases(phases);
    }

    MaxMinResult solve_maxmin(const ChannelMatrix &H, const SolverConfig &cfg, const std::optional<CMatrix> &V0)
    {
        cfg.validate();
        const int M = H.num_points(), N = H.num_antennas();
        if (M < 1 || N < 1)
            throw ContractViolation("solve_maxmin: empty channel matrix");

        // Normalize so that the weakest nonzero row has unit energy
        const Eigen::VectorXd row_energy = H.rows.rowwise().squaredNorm();
        double scale = std::numeric_limits<double>::infinity();
        for (Eigen::Index m = 0; m < row_energy.size(); ++m)
            if (row_energy(m) > 0.0)
                scale = std::min(scale, row_energy(m));
        if (!std::isfinite(scale))
            scale = 1.0;

        SubproblemSpec spec;
        spec.channels = H.rows / std::sqrt(scale);
        spec.constraint = cfg.scheme == Scheme::abf ? ConstraintKind::diag_equal : ConstraintKind::trace_equal;

        CMatrix V;
        if (V0)
        {
            if (V0->rows() != N || V0->cols() != N)
                throw ContractViolation("solve_maxmin: initial point has wrong dimensions");
            V = project_feasible(*V0, cfg.scheme);
        }
        else
            V = CMatrix::Identity(N, N) / static_cast<double>(N);

        SolverState state;
        state.power_scale = scale;
        state.relaxation_bound = std::numeric_limits<double>::quiet_NaN();

        double rho = cfg.rho_init;
        bool failed = false;
        for (int round = 0; round < cfg.max_penalty_rounds && !failed; ++round)
        {
            state.penalty_rounds = round + 1;
            double prev = -std::numeric_limits<double>::infinity();
            for (int it = 0; it < cfg.max_sca_iters; ++it)
            {
                const TopEigen top = top_eigenpair(V);
                spec.rho = rho;
                spec.linear_term = top.vector * top.vector.adjoint();

                const SubproblemSolution sol = solve_subproblem(spec, V, cfg.sdp);
                ++state.sdp_solves;
                if (sol.status == SolveStatus::infeasible)
                {
                    state.status = SolveStatus::infeasible;
                    failed = true;
                    break;
                }

                // Surrogate at the current point equals the true penalized objective there
                const double s_old = surrogate_value(spec.channels, V, top.vector, rho);
                double s_new = surrogate_value(spec.channels, sol.V, top.vector, rho);
                const bool improved = s_new > s_old;
                if (improved)
                    V = sol.V;
                else
                    s_new = s_old;

                TraceEntry e;
                e.round = round;
                e.iteration = it;
                e.rho = rho;
                e.t = min_quadratic_power(spec.channels, V);
                e.surrogate = s_new;
                e.rank_gap = rank_gap(V);
                e.penalized = e.t - rho * e.rank_gap;
                e.sdp_iterations = sol.iterations;
                state.trace_log.push_back(e);

                if (round == 0 && rho == 0.0)
                    state.relaxation_bound = e.t;

                // A plain relaxation does not depend on the linearization point
                if (rho == 0.0 || !improved)
                    break;
                if (it > 0 && std::abs(s_new - prev) <= cfg.obj_tol * std::max({std::abs(s_new), std::abs(prev), 1e-12}))
                    break;
                prev = s_new;
            }

            state.rank_gap = rank_gap(V);
            if (state.rank_gap <= cfg.rank_gap_tol * V.trace().real())
            {
                if (!failed)
                    state.status = SolveStatus::optimal;
                break;
            }
            rho = rho > 0.0 ? rho * cfg.rho_growth : cfg.rho_first_penalty;
        }

        state.V = V;
        state.t = min_quadratic_power(spec.channels, V);
        state.rho = rho;
        state.rank_gap = rank_gap(V);
        return {extract_beamformer(V, cfg.scheme), std::move(state)};
    }

    std::string trace_to_csv(const std::vector<TraceEntry> &trace)
    {
        std::ostringstream os;
        os << "round,iteration,rho,t,surrogate,penalized,rank_gap,sdp_iterations\n";
        char buf[256];
        for (const auto &e : trace)
        {
            std::snprintf(buf, sizeof(buf), "%d,%d,%.12e,%.12e,%.12e,%.12e,%.12e,%d\n", e.round, e.iteration, e.rho,
                          e.t, e.surrogate, e.penalized, e.rank_gap, e.sdp_iterations);
            os << buf;
        }
        return os.str();
    }
}
