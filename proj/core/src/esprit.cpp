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

#include "wimemchap/esprit.hpp"
#include "wimemchap/error.hpp"
#include "wimemchap/linfix.hpp"
#include "wimemchap/numkernel.hpp"

namespace wimemchap
{

std::string to_string(Dim dim)
{
    switch (dim)
    {
    case Dim::rx:
        return "rx";
    case Dim::tx:
        return "tx";
    case Dim::time:
        return "time";
    case Dim::freq:
        return "freq";
    }
    return "?";
}

arma::uword DimensionLayout::total_rows() const
{
    arma::uword n = 1;
    for (const auto &d : dims)
        n *= d.second;
    return n;
}

bool DimensionLayout::has(Dim d) const
{
    for (const auto &e : dims)
        if (e.first == d)
            return true;
    return false;
}

DimensionLayout layout_for(Model model, const StackShape &shape, arma::uword n_rx, arma::uword n_tx)
{
    DimensionLayout lay;
    switch (model)
    {
    case Model::dod_doa:
        lay.dims = {{Dim::rx, n_rx}, {Dim::tx, n_tx}, {Dim::time, shape.s}, {Dim::freq, shape.u}};
        break;
    case Model::tss:
        lay.dims = {{Dim::rx, n_rx}, {Dim::time, shape.s}, {Dim::freq, shape.u}};
        break;
    case Model::mss:
        lay.dims = {{Dim::time, shape.s}, {Dim::freq, shape.u}};
        break;
    }
    return lay;
}

SelectionPair selection_pair(const DimensionLayout &layout, Dim dim)
{
    if (layout.dims.empty())
        throw ContractError("selection_pair: empty layout");

    std::size_t pos = layout.dims.size();
    for (std::size_t i = 0; i < layout.dims.size(); ++i)
        if (layout.dims[i].first == dim)
        {
            pos = i;
            break;
        }
    if (pos == layout.dims.size())
        throw ContractError("selection_pair: dimension '" + to_string(dim) + "' not in layout");

    const arma::uword len = layout.dims[pos].second;
    if (len < 2)
        throw DimensionError("selection_pair: dimension '" + to_string(dim) +
                             "' has length 1, shift invariance unavailable");

    // stride of the selected dimension under first-listed-slowest flattening
    arma::uword stride = 1;
    for (std::size_t i = pos + 1; i < layout.dims.size(); ++i)
        stride *= layout.dims[i].second;

    const arma::uword in_rows = layout.total_rows();
    const arma::uword out_rows = (in_rows / len) * (len - 1);

    SelectionPair sel;
    sel.in_rows = in_rows;
    sel.rows_lo.set_size(out_rows);
    sel.rows_hi.set_size(out_rows);

    // walk all flat indices in order, keep those whose selected-dimension
    // index is below len - 1
    arma::uword out = 0;
    for (arma::uword flat = 0; flat < in_rows; ++flat)
    {
        const arma::uword dim_index = (flat / stride) % len;
        if (dim_index < len - 1)
        {
            sel.rows_lo(out) = flat;
            sel.rows_hi(out) = flat + stride;
            ++out;
        }
    }
    return sel;
}

arma::mat SelectionPair::dense_s1() const
{
    arma::mat s(rows_lo.n_elem, in_rows, arma::fill::zeros);
    for (arma::uword r = 0; r < rows_lo.n_elem; ++r)
        s(r, rows_lo(r)) = 1.0;
    return s;
}

arma::mat SelectionPair::dense_s2() const
{
    arma::mat s(rows_hi.n_elem, in_rows, arma::fill::zeros);
    for (arma::uword r = 0; r < rows_hi.n_elem; ++r)
        s(r, rows_hi(r)) = 1.0;
    return s;
}

arma::cx_mat solve_invariance(const arma::cx_mat &signal_basis, const SelectionPair &sel)
{
    if (signal_basis.n_rows != sel.in_rows)
        throw DimensionError("solve_invariance: subspace rows do not match the selection layout");

    const arma::cx_mat a1 = signal_basis.rows(sel.rows_lo);
    const arma::cx_mat a2 = signal_basis.rows(sel.rows_hi);
    const arma::uword z = signal_basis.n_cols;

    if (a1.n_rows < z)
        throw RankError("solve_invariance: fewer selected rows than sources");
    if (arma::rank(a1) < z)
        throw RankError("solve_invariance: selected subspace is rank deficient, "
                        "sources unresolvable in this configuration");

    arma::cx_mat phi;
    if (!arma::solve(phi, a1, a2))
        throw RankError("solve_invariance: least-squares solve failed");
    return phi;
}

static double dim_sign(Dim d)
{
    // phase factor orientations: e^{+j mu_r}, e^{+j mu_t}, e^{+j gamma}, e^{-j eta}
    return (d == Dim::freq) ? -1.0 : 1.0;
}

StructuralEstimate pair_and_extract(const std::vector<arma::cx_mat> &phis,
                                    const std::vector<Dim> &dim_names,
                                    const PairingOptions &options)
{
    if (phis.empty() || phis.size() != dim_names.size())
        throw ContractError("pair_and_extract: need one Phi per dimension name");
    const arma::uword z = phis.front().n_rows;
    for (const auto &p : phis)
        if (!p.is_square() || p.n_rows != z)
            throw ContractError("pair_and_extract: all Phi matrices must be Z x Z of equal size");

    // unit weights first, then seeded random positive weights if the shared
    // eigenvector basis comes out near-defective
    EigenDecomposition ed;
    bool ok = false;
    for (int attempt = 0; attempt <= options.max_retries; ++attempt)
    {
        arma::vec w(phis.size(), arma::fill::ones);
        if (attempt > 0)
        {
            RngStream rng(options.retry_seed, static_cast<std::uint64_t>(attempt));
            for (arma::uword i = 0; i < w.n_elem; ++i)
                w(i) = rng.uniform(0.5, 1.5);
        }
        arma::cx_mat upsilon(z, z, arma::fill::zeros);
        for (std::size_t i = 0; i < phis.size(); ++i)
            upsilon += w(i) * phis[i];

        ed = general_eig(upsilon, options.cond_ceiling);
        if (!ed.near_defective)
        {
            ok = true;
            break;
        }
    }
    if (!ok)
        throw PairingError("pair_and_extract: shared eigenvector basis near-defective "
                           "(condition " + std::to_string(ed.vec_condition) + ") after retries");

    const arma::cx_mat &sigma = ed.vectors;
    StructuralEstimate est;
    est.pairing_condition = ed.vec_condition;

    for (std::size_t i = 0; i < phis.size(); ++i)
    {
        // Xi = Sigma^-1 Phi Sigma; diagonal carries this dimension's phases
        arma::cx_mat xi;
        if (!arma::solve(xi, sigma, arma::cx_mat(phis[i] * sigma)))
            throw PairingError("pair_and_extract: shared eigenvector basis is singular");

        arma::vec params(z);
        const double sign = dim_sign(dim_names[i]);
        for (arma::uword d = 0; d < z; ++d)
            params(d) = wrap_angle(sign * std::arg(xi(d, d)));

        switch (dim_names[i])
        {
        case Dim::rx:
            est.mu_r = params;
            break;
        case Dim::tx:
            est.mu_t = params;
            break;
        case Dim::time:
            est.gamma = params;
            break;
        case Dim::freq:
            est.eta = params;
            break;
        }
    }
    return est;
}

} // namespace wimemchap
