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

#include "wimemchap/subspace.hpp"
#include "wimemchap/error.hpp"
#include "wimemchap/numkernel.hpp"

#include <cmath>

namespace wimemchap
{

arma::cx_mat covariance(const StackedData &stacked)
{
    const arma::cx_mat &x = stacked.matrix;
    arma::cx_mat c = x * x.t();
    c /= static_cast<double>(x.n_cols);
    c = 0.5 * (c + c.t()); // exact Hermitian symmetry
    return c;
}

double order_criterion(const arma::vec &eigvals_desc, arma::uword n_snapshots, arma::uword z)
{
    if (z < 1 || z >= eigvals_desc.n_elem)
        throw ContractError("order_criterion: need 1 <= z <= length(eigvals) - 1");
    const double floor_val = 1e-300; // keeps the log total on collapsed spectra
    const double lam = std::max(eigvals_desc(z), floor_val);
    const double n = static_cast<double>(n_snapshots);
    const double zz = static_cast<double>(z);
    return n * std::log(lam) + 0.5 * (zz * zz + zz) * std::log(n);
}

arma::uword estimate_order(const arma::vec &eigvals_desc, arma::uword n_snapshots,
                           arma::uword max_order)
{
    if (eigvals_desc.empty())
        throw ContractError("estimate_order: empty eigenvalue list");
    if (eigvals_desc.n_elem < 2)
        throw ContractError("estimate_order: need at least two eigenvalues");
    if (n_snapshots < 2)
        throw ContractError("estimate_order: need at least two snapshots");
    for (arma::uword i = 0; i + 1 < eigvals_desc.n_elem; ++i)
        if (eigvals_desc(i + 1) > eigvals_desc(i) + 1e-9 * std::abs(eigvals_desc(0)))
            throw ContractError("estimate_order: eigenvalues must be sorted descending");

    arma::uword hi = std::min<arma::uword>(max_order, eigvals_desc.n_elem - 1);
    if (hi < 1)
        throw ContractError("estimate_order: max_order must be >= 1");

    arma::uword best_z = 1;
    double best = order_criterion(eigvals_desc, n_snapshots, 1);
    for (arma::uword z = 2; z <= hi; ++z)
    {
        const double v = order_criterion(eigvals_desc, n_snapshots, z);
        if (v < best)
        {
            best = v;
            best_z = z;
        }
    }
    return best_z;
}

SubspaceSplit split(const arma::cx_mat &c, arma::uword z_hat)
{
    if (!c.is_square())
        throw ContractError("split: covariance must be square");
    if (z_hat < 1 || z_hat >= c.n_rows)
        throw ContractError("split: need 1 <= z_hat < dim(C)");

    EigenDecomposition ed = hermitian_eig(c);
    const arma::vec vals = ed.real_values();

    SubspaceSplit out;
    out.signal_basis = ed.vectors.cols(0, z_hat - 1);
    out.noise_basis = ed.vectors.cols(z_hat, c.n_cols - 1);
    out.signal_eigvals = vals.subvec(0, z_hat - 1);
    out.noise_eigvals = vals.subvec(z_hat, vals.n_elem - 1);
    out.noise_var_hat = arma::mean(out.noise_eigvals);
    return out;
}

StackedSpectrum analyze_stacked(const StackedData &stacked)
{
    const arma::cx_mat &x = stacked.matrix;
    const double scale = 1.0 / static_cast<double>(x.n_cols);

    StackedSpectrum sp;
    sp.dim = x.n_rows;
    sp.n_snapshots = x.n_cols;

    if (x.n_rows <= x.n_cols)
    {
        arma::cx_mat c = covariance(stacked);
        EigenDecomposition ed = hermitian_eig(c);
        sp.eigvals = ed.real_values();
        sp.vectors = std::move(ed.vectors);
        sp.via_gram = false;
        sp.cov_trace = arma::accu(sp.eigvals);
    }
    else
    {
        arma::cx_mat g = x.t() * x;
        g *= scale;
        g = 0.5 * (g + g.t());
        EigenDecomposition ed = hermitian_eig(g);
        sp.eigvals = ed.real_values();
        sp.vectors = std::move(ed.vectors);
        sp.via_gram = true;
        sp.cov_trace = arma::accu(arma::square(arma::abs(x))) * scale;
    }
    return sp;
}

SubspaceSplit split_from_spectrum(const StackedData &stacked, const StackedSpectrum &spectrum,
                                  arma::uword z_hat)
{
    if (z_hat < 1 || z_hat >= spectrum.dim)
        throw ContractError("split: need 1 <= z_hat < dim(C)");
    if (z_hat > spectrum.eigvals.n_elem)
        throw RankError("split: requested order exceeds the sample covariance rank bound");

    SubspaceSplit out;
    out.signal_eigvals = spectrum.eigvals.subvec(0, z_hat - 1);

    // Noise floor from the trace identity: mean over all dim - z_hat noise
    // eigenvalues, counting the structural zeros of a rank-deficient sample
    // covariance.
    const double resid = spectrum.cov_trace - arma::accu(out.signal_eigvals);
    out.noise_var_hat = resid / static_cast<double>(spectrum.dim - z_hat);

    if (!spectrum.via_gram)
    {
        out.signal_basis = spectrum.vectors.cols(0, z_hat - 1);
        out.noise_basis = spectrum.vectors.cols(z_hat, spectrum.vectors.n_cols - 1);
        out.noise_eigvals = spectrum.eigvals.subvec(z_hat, spectrum.eigvals.n_elem - 1);
        return out;
    }

    const arma::cx_mat &x = stacked.matrix;
    out.signal_basis.set_size(x.n_rows, z_hat);
    for (arma::uword i = 0; i < z_hat; ++i)
    {
        arma::cx_vec u = x * spectrum.vectors.col(i);
        const double len = arma::norm(u);
        if (len == 0.0)
            throw RankError("split: zero singular direction inside the requested signal order");
        out.signal_basis.col(i) = u / len;
    }
    arma::vec tail = spectrum.eigvals.subvec(z_hat, spectrum.eigvals.n_elem - 1);
    out.noise_eigvals.zeros(spectrum.dim - z_hat);
    out.noise_eigvals.subvec(0, tail.n_elem - 1) = tail;
    return out;
}

} // namespace wimemchap
