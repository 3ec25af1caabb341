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

#ifndef WIMEMCHAP_CRB_HPP
#define WIMEMCHAP_CRB_HPP

#include "wimemchap/channel.hpp"

namespace wimemchap
{

// Vandermonde steering factors of the observed grid and their per-parameter
// derivative matrices, one column per path. Phase orientations match the ray
// model: e^{+j n mu_r}, e^{+j m mu_t}, e^{+j q gamma}, e^{-j k eta}.
struct CrbFactors
{
    arma::cx_mat a_rx;   // N x Z
    arma::cx_mat a_tx;   // M x Z
    arma::cx_mat a_time; // Q x Z
    arma::cx_mat a_freq; // K x Z
    arma::cx_mat d_rx;   // j diag(0..N-1) a_rx
    arma::cx_mat d_tx;
    arma::cx_mat d_time;
    arma::cx_mat d_freq; // -j diag(0..K-1) a_freq
    arma::cx_vec amplitudes; // diag of the amplitude scaling
};

CrbFactors build_factors(const PathSet &paths, const ChannelConfig &config);

// Fisher information of the full observation under white complex Gaussian
// noise, in the fixed parameter order
//   sigma^2, mu_r(1..Z), mu_t(1..Z), gamma(1..Z), eta(1..Z), Re beta(1..Z), Im beta(1..Z).
struct FimReport
{
    arma::mat fim;      // (1 + 6Z) square, block diagonal between sigma^2 and the rest
    arma::mat j_block;  // 6Z x 6Z parameter block
    arma::mat j_pinv;   // pseudo-inverse of j_block (null directions zeroed)
    arma::vec crb_diag; // diagonal bounds; +inf on null directions
    bool used_pseudo_inverse = false;
    arma::uword n_paths = 0;
    double noise_var = 0.0;

    // indices into fim / crb_diag, z = 0..Z-1
    arma::uword idx_sigma2() const { return 0; }
    arma::uword idx_mu_r(arma::uword z) const { return 1 + z; }
    arma::uword idx_mu_t(arma::uword z) const { return 1 + n_paths + z; }
    arma::uword idx_gamma(arma::uword z) const { return 1 + 2 * n_paths + z; }
    arma::uword idx_eta(arma::uword z) const { return 1 + 3 * n_paths + z; }
    arma::uword idx_re_beta(arma::uword z) const { return 1 + 4 * n_paths + z; }
    arma::uword idx_im_beta(arma::uword z) const { return 1 + 5 * n_paths + z; }
};

FimReport build_fim(const PathSet &paths, const ChannelConfig &config, double noise_var);

// Delta-method lower bound on the covariance of the predicted response at a
// single (q, k), and its trace normalized by the mean grid power so it is
// comparable with normalized square errors.
struct PredictionBound
{
    arma::cx_mat c_e; // NM x NM, Hermitian PSD
    double trace = 0.0;
    double normalized_trace = 0.0;
    bool used_pseudo_inverse = false;
};

// mean over the observed grid of |H(q,k)|_F^2
double mean_grid_power(const PathSet &paths, const ChannelConfig &config);

// Pass mean_power >= 0 to reuse a precomputed normalization across many calls.
PredictionBound prediction_bound(const FimReport &fim_report, const PathSet &paths,
                                 const ChannelConfig &config, long long q, long long k,
                                 double mean_power = -1.0);

} // namespace wimemchap

#endif
