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

#include "bendbeam/sdp.hpp"
#include "bendbeam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bendbeam
{
    const char *to_string(SolveStatus s)
    {
        switch (s)
        {
        case SolveStatus::optimal:
            return "optimal";
        case SolveStatus::max_iterations:
            return "max_iterations";
        case SolveStatus::infeasible:
            return "infeasible";
        }
        return "unknown";
    }

    namespace
    {
        using Eigen::Index;
        using Eigen::MatrixXd;
        using Eigen::VectorXd;

        CMatrix herm(const CMatrix &A)
        {
            return 0.5 * (A + A.adjoint());
        }

        // Largest alpha in (0, inf] keeping X + alpha dX PSD, for X positive definite
        double max_step_psd(const CMatrix &X, const CMatrix &dX)
        {
            Eigen::LLT<CMatrix> llt(X);
            if (llt.info() != Eigen::Success)
                return 0.0;
            const auto L = llt.matrixL();
            const CMatrix T = L.solve(dX);
            const CMatrix W = herm(L.solve(CMatrix(T.adjoint())));
            Eigen::SelfAdjointEigenSolver<CMatrix> es(W, Eigen::EigenvaluesOnly);
            const double lmin = es.eigenvalues()(0);
            return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
        }

        double max_step_lp(const VectorXd &x, const VectorXd &dx)
        {
            double a = std::numeric_limits<double>::infinity();
            for (Index i = 0; i < x.size(); ++i)
                if (dx(i) < 0.0)
                    a = std::min(a, -x(i) / dx(i));
            return a;
        }

        /*
        Problem data in the minimization form used by the iteration:

            min  <Cv, X> + c' x
            s.t. Re g_i^H X g_i + a_i' x = b_i   (rank-one constraints, i < p_r)
                 Re Tr(X)               = 1     (trace constraint, optional)
                 X PSD, x >= 0

        x = (t, u_1 .. u_M); power constraint m reads Tr(R_m X) - t - u_m = 0.
        */
        struct Problem
        {
            int N = 0, M = 0;
            CMatrix G;      // N x p_r
            bool has_trace = false;
            VectorXd b;     // p = p_r + has_trace
            CMatrix Cv;     // N x N Hermitian
            VectorXd c;     // M + 1

            int p_r() const { return static_cast<int>(G.cols()); }
            int p() const { return p_r() + (has_trace ? 1 : 0); }
            int n_lp() const { return M + 1; }

            // A(W) for a general (not necessarily Hermitian) W
            VectorXd A(const CMatrix &W) const
            {
                VectorXd out(p());
                const CMatrix GW = G.adjoint() * W;
                out.head(p_r()) = GW.cwiseProduct(G.transpose()).rowwise().sum().real();
                if (has_trace)
                    out(p_r()) = W.trace().real();
                return out;
            }

            CMatrix AT(const VectorXd &y) const
            {
                CMatrix out = G * y.head(p_r()).asDiagonal() * G.adjoint();
                if (has_trace)
                    out.diagonal().array() += y(p_r());
                return out;
            }

            // LP part of the constraint operator: a_i' x
            VectorXd a(const VectorXd &x) const
            {
                VectorXd out = VectorXd::Zero(p());
                for (int m = 0; m < M; ++m)
                    out(m) = -x(0) - x(1 + m);
                return out;
            }

            VectorXd aT(const VectorXd &y) const
            {
                VectorXd out(n_lp());
                out(0) = -y.head(M).sum();
                out.tail(M) = -y.head(M);
                return out;
            }
        };

        struct Iterate
        {
            CMatrix X, Z;
            VectorXd x, z, y;
        };

        struct Direction
        {
            CMatrix dX, dZ;
            VectorXd dx, dz, dy;
        };

        class SchurSystem
        {
        public:
            SchurSystem(const Problem &P, const Iterate &it, const CMatrix &Zi)
            {
                const int pr = P.p_r();
                const CMatrix XG = it.X * P.G;
                const CMatrix ZiG = Zi * P.G;
                const CMatrix Pm = P.G.adjoint() * XG;
                const CMatrix Qm = P.G.adjoint() * ZiG;

                MatrixXd S(P.p(), P.p());
                S.topLeftCorner(pr, pr) = Pm.cwiseProduct(Qm.transpose()).real();
                if (P.has_trace)
                {
                    // Re g_j^H Zi X g_j and Re Tr(X Zi)
                    const CMatrix ZiX = Zi * it.X;
                    const VectorXd col = (P.G.adjoint() * ZiX).cwiseProduct(P.G.transpose()).rowwise().sum().real();
                    S.block(0, pr, pr, 1) = col;
                    S.block(pr, 0, 1, pr) = col.transpose();
                    S(pr, pr) = ZiX.trace().real();
                }
                const double w0 = it.x(0) / it.z(0);
                S.topLeftCorner(P.M, P.M).array() += w0;
                for (int m = 0; m < P.M; ++m)
                    S(m, m) += it.x(1 + m) / it.z(1 + m);

                S = 0.5 * (S + S.transpose());
                llt_.compute(S);
                use_ldlt_ = llt_.info() != Eigen::Success;
                if (use_ldlt_)
                {
                    const double reg = 1e-14 * std::max(1.0, S.diagonal().cwiseAbs().maxCoeff());
                    S.diagonal().array() += reg;
                    ldlt_.compute(S);
                }
            }

            bool ok() const { return !use_ldlt_ || ldlt_.info() == Eigen::Success; }

            VectorXd solve(const VectorXd &rhs) const
            {
                return use_ldlt_ ? VectorXd(ldlt_.solve(rhs)) : VectorXd(llt_.solve(rhs));
            }

        private:
            Eigen::LLT<MatrixXd> llt_;
            Eigen::LDLT<MatrixXd> ldlt_;
            bool use_ldlt_ = false;
        };

        /*
        HKM direction for the given centering targets:
            dX = K - X dZ Z^-1,   dx = k - x .* dz ./ z,
        with dZ = Rd - A^T dy and dz = rd - a^T dy.
        */
        Direction hkm_direction(const Problem &P, const Iterate &it, const CMatrix &Zi, const SchurSystem &S,
                                const VectorXd &rp, const CMatrix &Rd, const VectorXd &rd,
                                const CMatrix &K, const VectorXd &k)
        {
            const VectorXd xz = it.x.cwiseQuotient(it.z);
            const VectorXd rhs = rp - P.A(K) + P.A(it.X * Rd * Zi) - P.a(k) + P.a(xz.cwiseProduct(rd));

            Direction d;
            d.dy = S.solve(rhs);
            d.dZ = herm(Rd - P.AT(d.dy));
            d.dX = herm(K - it.X * d.dZ * Zi);
            d.dz = rd - P.aT(d.dy);
            d.dx = k - xz.cwiseProduct(d.dz);
            return d;
        }

        double hdot(const CMatrix &A, const CMatrix &B)
        {
            // Re Tr(A B) for Hermitian A, B
            return (A.cwiseProduct(B.transpose())).sum().real();
        }
    }

    double min_quadratic_power(const CMatrix &channels, const CMatrix &V)
    {
        if (channels.rows() == 0)
            throw ContractViolation("min_quadratic_power: no channels");
        // row m of H: h_m^T; h_m^H V h_m = conj(h_m^T) V h_m
        const CMatrix HV = channels.conjugate() * V;
        const Eigen::VectorXd q = HV.cwiseProduct(channels).rowwise().sum().real();
        return q.minCoeff();
    }

    double subproblem_objective(const SubproblemSpec &spec, const CMatrix &V)
    {
        double obj = min_quadratic_power(spec.channels, V);
        if (spec.rho != 0.0)
        {
            double lin = 0.0;
            if (spec.linear_term.size() > 0)
                lin = hdot(spec.linear_term, V);
            obj += spec.rho * (lin - V.trace().real());
        }
        return obj;
    }

    SubproblemSolution solve_subproblem(const SubproblemSpec &spec, const std::optional<CMatrix> &warm_start,
                                        const SdpOptions &opts)
    {
        const int M = static_cast<int>(spec.channels.rows());
        const int N = static_cast<int>(spec.channels.cols());
        if (M < 1 || N < 1)
            throw ContractViolation("solve_subproblem: need M >= 1 and N >= 1");
        if (!(spec.rho >= 0.0))
            throw ContractViolation("solve_subproblem: rho must be nonnegative");
        if (spec.linear_term.size() > 0 && (spec.linear_term.rows() != N || spec.linear_term.cols() != N))
            throw ContractViolation("solve_subproblem: linear term must be N x N");
        if (!spec.channels.allFinite())
            throw ContractViolation("solve_subproblem: non-finite channel entries");

        // ---- problem assembly (scaled so that max ||h_m||^2 = 1) ----
        double scale = spec.channels.rowwise().squaredNorm().maxCoeff();
        if (!(scale > 0.0))
            scale = 1.0;

        Problem P;
        P.N = N;
        P.M = M;
        P.has_trace = spec.constraint == ConstraintKind::trace_equal;
        const CMatrix Hcols = spec.channels.transpose() / std::sqrt(scale);
        if (P.has_trace)
        {
            P.G = Hcols;
            P.b = VectorXd::Zero(M + 1);
            P.b(M) = 1.0;
        }
        else
        {
            P.G.resize(N, M + N);
            P.G.leftCols(M) = Hcols;
            P.G.rightCols(N) = CMatrix::Identity(N, N);
            P.b = VectorXd::Zero(M + N);
            P.b.tail(N).setConstant(1.0 / N);
        }
        const double rho_s = spec.rho / scale;
        P.Cv = CMatrix::Zero(N, N);
        if (rho_s != 0.0)
        {
            P.Cv.diagonal().array() += rho_s;
            if (spec.linear_term.size() > 0)
                P.Cv -= rho_s * herm(spec.linear_term);
        }
        P.c = VectorXd::Zero(M + 1);
        P.c(0) = -1.0;

        // ---- starting point ----
        Iterate it;
        it.X = CMatrix::Identity(N, N) / static_cast<double>(N);
        const VectorXd ax0 = P.A(it.X).head(M);
        const double mean_p = std::max(ax0.mean(), 1e-12);
        it.x.resize(M + 1);
        it.x(0) = std::max(0.5 * ax0.minCoeff(), 1e-3 * mean_p);
        for (int m = 0; m < M; ++m)
            it.x(1 + m) = std::max(ax0(m) - it.x(0), 1e-3 * mean_p);
        const double zeta = 1.0 + P.Cv.norm();
        it.Z = zeta * CMatrix::Identity(N, N);
        it.z = VectorXd::Constant(M + 1, 1.0);
        it.y = VectorXd::Zero(P.p());

        const double norm_b = P.b.norm();
        const double norm_c = P.Cv.norm() + P.c.norm();
        const double n_total = static_cast<double>(N + M + 1);

        SubproblemSolution sol;
        double pinf = 0.0, dinf = 0.0, rel_gap = 0.0;
        int stall = 0;

        for (int iter = 0; iter <= opts.max_iterations; ++iter)
        {
            const VectorXd rp = P.b - P.A(it.X) - P.a(it.x);
            const CMatrix Rd = herm(P.Cv - P.AT(it.y) - it.Z);
            const VectorXd rd = P.c - P.aT(it.y) - it.z;

            const double pobj = hdot(P.Cv, it.X) + P.c.dot(it.x);
            const double dobj = P.b.dot(it.y);
            pinf = rp.norm() / (1.0 + norm_b);
            dinf = (Rd.norm() + rd.norm()) / (1.0 + norm_c);
            rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
            sol.iterations = iter;

            if (pinf <= opts.target_tol && dinf <= opts.target_tol && rel_gap <= opts.target_tol)
                break;
            if (iter == opts.max_iterations)
                break;

            const double mu = (hdot(it.X, it.Z) + it.x.dot(it.z)) / n_total;

            Eigen::LLT<CMatrix> zllt(it.Z);
            if (zllt.info() != Eigen::Success)
                break;
            const CMatrix Zi = herm(zllt.solve(CMatrix::Identity(N, N)));

            const SchurSystem S(P, it, Zi);
            if (!S.ok())
                break;

            // predictor
            const Direction aff = hkm_direction(P, it, Zi, S, rp, Rd, rd, -it.X, -it.x);
            const double ap_aff = std::min({1.0, max_step_psd(it.X, aff.dX), max_step_lp(it.x, aff.dx)});
            const double ad_aff = std::min({1.0, max_step_psd(it.Z, aff.dZ), max_step_lp(it.z, aff.dz)});
            const double mu_aff = (hdot(it.X + ap_aff * aff.dX, it.Z + ad_aff * aff.dZ) +
                                   (it.x + ap_aff * aff.dx).dot(it.z + ad_aff * aff.dz)) /
                                  n_total;
            const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

            // corrector
            const CMatrix K = sigma * mu * Zi - it.X - aff.dX * aff.dZ * Zi;
            const VectorXd k = (sigma * mu * it.z.cwiseInverse()) - it.x - aff.dx.cwiseProduct(aff.dz).cwiseQuotient(it.z);
            const Direction d = hkm_direction(P, it, Zi, S, rp, Rd, rd, K, k);

            const double ap = std::min(1.0, opts.step_fraction * std::min(max_step_psd(it.X, d.dX), max_step_lp(it.x, d.dx)));
            const double ad = std::min(1.0, opts.step_fraction * std::min(max_step_psd(it.Z, d.dZ), max_step_lp(it.z, d.dz)));
            if (!(ap > 0.0) || !(ad > 0.0) || !std::isfinite(ap) || !std::isfinite(ad))
                break;

            it.X = herm(it.X + ap * d.dX);
            it.x += ap * d.dx;
            it.Z = herm(it.Z + ad * d.dZ);
            it.z += ad * d.dz;
            it.y += ad * d.dy;

            stall = (ap < 1e-8 && ad < 1e-8) ? stall + 1 : 0;
            if (stall >= 3)
                break;
        }

        sol.primal_infeasibility = pinf;
        sol.dual_infeasibility = dinf;
        sol.relative_gap = rel_gap;
        if (!it.X.allFinite())
        {
            sol.status = SolveStatus::infeasible;
            sol.V = CMatrix::Identity(N, N) / static_cast<double>(N);
        }
        else
        {
            sol.status = (pinf <= opts.feasibility_tol && dinf <= opts.feasibility_tol && rel_gap <= opts.optimality_tol)
                             ? SolveStatus::optimal
                             : SolveStatus::max_iterations;
            sol.V = it.X;
        }

        // ---- projection onto the affine constraints ----
        if (P.has_trace)
            sol.V /= sol.V.trace().real();
        else
        {
            Eigen::VectorXd dsc(N);
            for (int n = 0; n < N; ++n)
                dsc(n) = std::sqrt((1.0 / N) / std::max(sol.V(n, n).real(), 1e-300));
            sol.V = dsc.asDiagonal() * sol.V * dsc.asDiagonal();
            for (int n = 0; n < N; ++n)
                sol.V(n, n) = 1.0 / N;
        }
        sol.V = herm(sol.V);
        sol.constraint_residual = P.has_trace ? std::abs(sol.V.trace().real() - 1.0)
                                              : (sol.V.diagonal().real().array() - 1.0 / N).abs().maxCoeff();
        sol.t = min_quadratic_power(spec.channels, sol.V);
        sol.objective = subproblem_objective(spec, sol.V);

        if (warm_start && warm_start->rows() == N && warm_start->cols() == N)
        {
            const double obj_ws = subproblem_objective(spec, *warm_start);
            if (obj_ws > sol.objective)
            {
                sol.V = *warm_start;
                sol.t = min_quadratic_power(spec.channels, sol.V);
                sol.objective = obj_ws;
                sol.used_warm_start = true;
            }
        }
        return sol;
    }
}
