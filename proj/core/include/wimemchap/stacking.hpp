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

#ifndef WIMEMCHAP_STACKING_HPP
#define WIMEMCHAP_STACKING_HPP

#include <string>

#include "wimemchap/channel.hpp"

namespace wimemchap
{

// The three variants of the ray model, ordered by how much array structure
// they assume: dod_doa keeps both steering vectors, tss keeps only the
// receive one, mss keeps neither.
enum class Model
{
    dod_doa,
    tss,
    mss
};

std::string to_string(Model model);
Model model_from_string(const std::string &name); // accepts doddoa/tssm/mssm and dod_doa/tss/mss

// Window sizes of the two nested Hankel expansions over time and frequency.
struct StackShape
{
    arma::uword r; // R, time-window width (columns contributed per subcarrier)
    arma::uword t; // T, frequency-window width
    arma::uword s; // S = Q - R + 1
    arma::uword u; // U = K - T + 1
};

// Validates 1 <= R <= Q and 1 <= T <= K. Throws DimensionError naming the
// violated inequality.
StackShape make_stack_shape(arma::uword q_len, arma::uword k_len, arma::uword r, arma::uword t);

// Checks the model-specific resolvability condition (row count >= z + 1).
void check_resolvable(Model model, const StackShape &shape, arma::uword n_rx, arma::uword n_tx,
                      arma::uword n_paths);

// Block-Hankel data matrix plus everything needed to re-derive its indexing.
//
// Every entry is a plain copy of one tensor entry; no arithmetic happens here.
// Row and column multi-indices are flattened with the first listed dimension
// varying slowest:
//   dod_doa:  rows (rx n, tx m, time s, freq u),  cols (time offset j, freq offset t)
//   tss:      rows (rx n, time s, freq u),        cols (tx m, j, t)
//   mss:      rows (time s, freq u),              cols (rx n + tx m vec index, j, t)
// with entry value H(s + j, u + t)[n, m]. The row order matches the fixed
// Kronecker factor order (rx, tx, time, freq) used by the selection matrices,
// so the two cannot drift apart.
struct StackedData
{
    Model model;
    arma::cx_mat matrix;
    StackShape shape;
    arma::uword n_rx;
    arma::uword n_tx;
    double source_noise_var; // carried from the tensor for contract checks
};

StackedData build_stacked(const ChannelTensor &tensor, Model model, arma::uword r, arma::uword t);

// Test-support operation: rebuilds the analytic column model (steering matrix
// times per-column amplitudes) from the generating paths and returns the
// largest relative column residual. Requires a clean source tensor.
double column_model_check(const StackedData &stacked, const PathSet &paths,
                          const ChannelConfig &config);

} // namespace wimemchap

#endif
