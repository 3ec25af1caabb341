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

#ifndef WIMEMCHAP_SUBSPACE_HPP
#define WIMEMCHAP_SUBSPACE_HPP

#include "wimemchap/stacking.hpp"

namespace wimemchap
{

// Signal/noise eigenspace partition of a sample covariance.
struct SubspaceSplit
{
    arma::cx_mat signal_basis; // E_s, the z_hat dominant eigenvectors
    arma::cx_mat noise_basis;  // E_n; left empty by the thin route (see below)
    arma::vec signal_eigvals;  // descending
    arma::vec noise_eigvals;   // descending; zeros padded for rank-deficient input
    double noise_var_hat = 0.0;
};

// Sample covariance X X^H scaled by 1 / n_cols(X). The per-model column
// counts (RT, MRT, NMRT) make this the model-specific normalization.
arma::cx_mat covariance(const StackedData &stacked);

// Description-length criterion value for candidate order z (1-based).
// The fit term uses the largest eigenvalue excluded by the candidate order.
double order_criterion(const arma::vec &eigvals_desc, arma::uword n_snapshots, arma::uword z);

// Minimizing candidate order over z = 1..max_order. Eigenvalues are floored
// at 1e-300 before the log; clean (noise-free) input is outside the supported
// use, callers with known order should bypass via the fit override.
arma::uword estimate_order(const arma::vec &eigvals_desc, arma::uword n_snapshots,
                           arma::uword max_order);

// Eigenspace partition of a Hermitian PSD covariance at the given order.
SubspaceSplit split(const arma::cx_mat &c, arma::uword z_hat);

// Spectrum of the stacked sample covariance, computed on the cheaper side of
// the Gram pair. A stacked matrix with more rows than columns never needs the
// full covariance: X^H X shares the nonzero eigenvalues and the covariance
// eigenvectors are recovered as X v / |X v|.
struct StackedSpectrum
{
    arma::vec eigvals;    // descending, min(rows, cols) values
    arma::cx_mat vectors; // eigenvectors of the decomposed side
    bool via_gram;        // true: vectors belong to X^H X; false: to the covariance
    double cov_trace;     // trace of the (possibly unformed) covariance
    arma::uword dim;      // covariance dimension = rows of X
    arma::uword n_snapshots;
};

StackedSpectrum analyze_stacked(const StackedData &stacked);

// Split consistent with split(covariance(stacked), z_hat); the Gram route
// leaves noise_basis empty and derives the noise floor from the trace.
SubspaceSplit split_from_spectrum(const StackedData &stacked, const StackedSpectrum &spectrum,
                                  arma::uword z_hat);

} // namespace wimemchap

#endif
