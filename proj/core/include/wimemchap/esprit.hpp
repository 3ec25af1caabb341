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

#ifndef WIMEMCHAP_ESPRIT_HPP
#define WIMEMCHAP_ESPRIT_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "wimemchap/stacking.hpp"

namespace wimemchap
{

enum class Dim
{
    rx,
    tx,
    time,
    freq
};

std::string to_string(Dim dim);

// Kronecker factorization of a stacked row space. The first listed dimension
// is the left (slowest-varying) factor; products of the listed lengths must
// equal the subspace row count.
struct DimensionLayout
{
    std::vector<std::pair<Dim, arma::uword>> dims;

    arma::uword total_rows() const;
    bool has(Dim d) const;
};

// The factorization matching build_stacked's fixed row order for each model.
DimensionLayout layout_for(Model model, const StackShape &shape, arma::uword n_rx,
                           arma::uword n_tx);

// Row-gather form of the paired 0/1 selection matrices of one dimension:
// S1 * E == E.rows(rows_lo) and S2 * E == E.rows(rows_hi). The dense
// materializations exist for inspection and tests.
struct SelectionPair
{
    arma::uvec rows_lo;
    arma::uvec rows_hi;
    arma::uword in_rows = 0;

    arma::mat dense_s1() const;
    arma::mat dense_s2() const;
};

// Selects, for the named dimension, indices 0..L-2 (respectively 1..L-1) and
// every index of the other dimensions. Throws DimensionError when the
// dimension has length 1 (no shift invariance available).
SelectionPair selection_pair(const DimensionLayout &layout, Dim dim);

// Least-squares solution Phi of (S1 E_s) Phi = S2 E_s. Eigenvalues of Phi
// carry the per-source phase factors of the selected dimension.
arma::cx_mat solve_invariance(const arma::cx_mat &signal_basis, const SelectionPair &sel);

// Jointly paired structural parameters, entries in (-pi, pi]. Lists not
// present in the generating model stay empty.
struct StructuralEstimate
{
    arma::vec mu_r;
    arma::vec mu_t;
    arma::vec gamma;
    arma::vec eta;
    double pairing_condition = 1.0; // condition number of the shared eigenvector matrix

    arma::uword size() const { return gamma.n_elem; }
};

struct PairingOptions
{
    double cond_ceiling = 1e8;
    int max_retries = 3; // weighted retries after the unit-weight attempt
    std::uint64_t retry_seed = 0x4D45564Du; // seed of the retry-weight stream
};

// Joint diagonalization via the mean-matrix eigenvector scheme: eigendecompose
// a weighted sum of the per-dimension Phi matrices, rotate each Phi into that
// shared basis and read the parameters off the diagonals. Unit weights first;
// seeded random positive weights retried when the eigenvector basis is close
// to defective.
StructuralEstimate pair_and_extract(const std::vector<arma::cx_mat> &phis,
                                    const std::vector<Dim> &dim_names,
                                    const PairingOptions &options = PairingOptions());

} // namespace wimemchap

#endif
