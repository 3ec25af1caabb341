// SPDX-License-Identifier: Apache-2.0
//
// wimemchap -- parametric prediction of wideband MIMO wireless channels
// Copyright (C) 2026 The wimemchap authors
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

#include "wimemchap/numkernel.hpp"
#include "wimemchap/error.hpp"

namespace wimemchap
{

static void require_nonempty(const arma::cx_mat &m, const char *who)
{
    if (m.n_rows == 0 || m.n_cols == 0)
        throw ContractError(std::string(who) + ": matrix must have at least one row and one column");
    if (!m.is_finite())
        throw ContractError(std::string(who) + ": matrix entries must be finite");
}

arma::cx_mat kron(const arma::cx_mat &a, const arma::cx_mat &b)
{
    require_nonempty(a, "kron");
    require_nonempty(b, "kron");
    return arma::kron(a, b);
}

arma::cx_mat khatri_rao(const arma::cx_mat &a, const arma::cx_mat &b)
{
    require_nonempty(a, "khatri_rao");
    require_nonempty(b, "khatri_rao");
    if (a.n_cols != b.n_cols)
        throw DimensionError("khatri_rao: cols(A) == cols(B) required, got " +
                             std::to_string(a.n_cols) + " and " + std::to_string(b.n_cols));

    arma::cx_mat out(a.n_rows * b.n_rows, a.n_cols);
    for (arma::uword z = 0; z < a.n_cols; ++z)
        out.col(z) = arma::kron(a.col(z), b.col(z));
    return out;
}

EigenDecomposition hermitian_eig(const arma::cx_mat &c)
{
    require_nonempty(c, "hermitian_eig");
    if (!c.is_square())
        throw ContractError("hermitian_eig: matrix must be square");

    const double scale = arma::norm(c, "fro");
    if (scale > 0.0 && arma::norm(c - c.t(), "fro") > 1e-10 * scale)
        throw ContractError("hermitian_eig: matrix is not Hermitian within 1e-10 relative");

    arma::vec vals;
    arma::cx_mat vecs;
    if (!arma::eig_sym(vals, vecs, c))
        throw SingularityError("hermitian_eig: eigendecomposition failed to converge");

    // arma returns ascending order; the subspace code wants dominant first.
    EigenDecomposition out;
    out.is_hermitian_input = true;
    out.values.set_size(vals.n_elem);
    out.vectors.set_size(vecs.n_rows, vecs.n_cols);
    const arma::uword n = vals.n_elem;
    for (arma::uword i = 0; i < n; ++i)
    {
        out.values(i) = arma::cx_double(vals(n - 1 - i), 0.0);
        out.vectors.col(i) = vecs.col(n - 1 - i);
    }
    out.vec_condition = 1.0; // unitary
    return out;
}

EigenDecomposition general_eig(const arma::cx_mat &m, double cond_ceiling)
{
    require_nonempty(m, "general_eig");
    if (!m.is_square())
        throw ContractError("general_eig: matrix must be square");

    arma::cx_vec vals;
    arma::cx_mat vecs;
    if (!arma::eig_gen(vals, vecs, m))
        throw SingularityError("general_eig: eigendecomposition failed to converge");

    EigenDecomposition out;
    out.values = vals;
    out.vectors = vecs;
    out.is_hermitian_input = false;
    out.vec_condition = arma::cond(vecs);
    out.near_defective = !(out.vec_condition <= cond_ceiling);
    return out;
}

arma::cx_vec ls_solve_regularized(const arma::cx_mat &w, const arma::cx_vec &y, double sigma_reg)
{
    require_nonempty(w, "ls_solve_regularized");
    if (w.n_rows != y.n_elem)
        throw DimensionError("ls_solve_regularized: rows(W) == length(y) required");
    if (!(sigma_reg >= 0.0))
        throw ContractError("ls_solve_regularized: sigma_reg must be non-negative");

    arma::cx_mat g = w.t() * w;
    g.diag() += sigma_reg;
    g = 0.5 * (g + g.t());

    arma::cx_vec x;
    if (!arma::solve(x, g, arma::cx_vec(w.t() * y), arma::solve_opts::no_approx))
        throw SingularityError("ls_solve_regularized: normal equations are singular "
                               "(rank-deficient W with sigma_reg = 0)");
    return x;
}

} // namespace wimemchap
