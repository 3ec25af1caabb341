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

#ifndef WIMEMCHAP_AMPLITUDE_HPP
#define WIMEMCHAP_AMPLITUDE_HPP

#include "wimemchap/esprit.hpp"

namespace wimemchap
{

// Default Tikhonov weight of the amplitude fits; absorbs small errors in the
// structural estimates that enter the basis matrices.
inline constexpr double default_sigma_reg = 1e-5;

// Amplitude-type parameters of one model. Exactly the field matching the
// model is populated.
struct AmplitudeEstimate
{
    Model model = Model::dod_doa;
    arma::cx_vec betas;                // dod_doa: one complex gain per path
    std::vector<arma::cx_vec> tss;     // tss: one length-M transmit signature per path
    std::vector<arma::cx_mat> mss;     // mss: one N x M matrix signature per path
};

// Q x Z Vandermonde time-phase matrix, W[q, z] = exp(j q gamma_z). The first
// row is all ones.
arma::cx_mat time_phase_basis(const arma::vec &gamma, arma::uword q_len);

// Per-path complex gains from the time series of every antenna pair at the
// first subcarrier; all NM systems are stacked and solved jointly.
AmplitudeEstimate estimate_beta_doddoa(const ChannelTensor &tensor, const StructuralEstimate &est,
                                       double sigma_reg = default_sigma_reg);

// Transmit spatial signatures: one receive-space-and-time system per transmit
// antenna, regrouped per path afterwards.
AmplitudeEstimate estimate_tss(const ChannelTensor &tensor, const StructuralEstimate &est,
                               double sigma_reg = default_sigma_reg);

// Matrix spatial signatures: one temporal system per antenna pair, sharing
// the same time-phase basis.
AmplitudeEstimate estimate_mss(const ChannelTensor &tensor, const StructuralEstimate &est,
                               double sigma_reg = default_sigma_reg);

} // namespace wimemchap

#endif
