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

#include "wimemchap/amplitude.hpp"
#include "wimemchap/error.hpp"
#include "wimemchap/numkernel.hpp"

namespace wimemchap
{

arma::cx_mat time_phase_basis(const arma::vec &gamma, arma::uword q_len)
{
    if (gamma.empty() || q_len < 1)
        throw ContractError("time_phase_basis: need at least one path and one snapshot");
    arma::cx_mat w(q_len, gamma.n_elem);
    for (arma::uword z = 0; z < gamma.n_elem; ++z)
        w.col(z) = steering_vector(gamma(z), q_len);
    return w;
}

// Time series of antenna pair (n, m) at the first subcarrier.
static arma::cx_vec first_subcarrier_series(const ChannelTensor &tensor, arma::uword n,
                                            arma::uword m)
{
    const arma::uword q_len = tensor.config.n_time;
    arma::cx_vec h(q_len);
    for (arma::uword q = 0; q < q_len; ++q)
        h(q) = tensor.sample(q, 0)(n, m);
    return h;
}

AmplitudeEstimate estimate_beta_doddoa(const ChannelTensor &tensor, const StructuralEstimate &est,
                                       double sigma_reg)
{
    const arma::uword z_len = est.size();
    if (z_len == 0 || est.mu_r.n_elem != z_len || est.mu_t.n_elem != z_len ||
        est.eta.n_elem != z_len)
        throw ContractError("estimate_beta_doddoa: structural estimate must carry "
                            "mu_r, mu_t, gamma and eta of equal length");

    const arma::uword n_len = tensor.config.n_rx;
    const arma::uword m_len = tensor.config.n_tx;
    const arma::uword q_len = tensor.config.n_time;
    if (z_len > q_len * n_len * m_len)
        throw UnderdeterminedError("estimate_beta_doddoa: more paths than observations Q*N*M");

    const arma::cx_mat w = time_phase_basis(est.gamma, q_len);

    // Stack the per-pair systems, time fastest, then rx, then tx. Each block
    // is the shared time basis scaled per column by the pair's spatial phase.
    arma::cx_mat w_all(n_len * m_len * q_len, z_len);
    arma::cx_vec h_all(n_len * m_len * q_len);
    arma::uword blk = 0;
    for (arma::uword m = 0; m < m_len; ++m)
        for (arma::uword n = 0; n < n_len; ++n)
        {
            arma::cx_rowvec pair_phase(z_len);
            for (arma::uword z = 0; z < z_len; ++z)
                pair_phase(z) = std::polar(1.0, static_cast<double>(n) * est.mu_r(z) +
                                                    static_cast<double>(m) * est.mu_t(z));
            arma::cx_mat block = w;
            block.each_row() %= pair_phase;
            w_all.rows(blk * q_len, (blk + 1) * q_len - 1) = block;
            h_all.subvec(blk * q_len, (blk + 1) * q_len - 1) = first_subcarrier_series(tensor, n, m);
            ++blk;
        }

    AmplitudeEstimate out;
    out.model = Model::dod_doa;
    out.betas = ls_solve_regularized(w_all, h_all, sigma_reg);
    return out;
}

AmplitudeEstimate estimate_tss(const ChannelTensor &tensor, const StructuralEstimate &est,
                               double sigma_reg)
{
    const arma::uword z_len = est.size();
    if (z_len == 0 || est.mu_r.n_elem != z_len || est.eta.n_elem != z_len)
        throw ContractError("estimate_tss: structural estimate must carry mu_r, gamma and eta");

    const arma::uword n_len = tensor.config.n_rx;
    const arma::uword m_len = tensor.config.n_tx;
    const arma::uword q_len = tensor.config.n_time;
    if (z_len > q_len * n_len)
        throw UnderdeterminedError("estimate_tss: more paths than observations Q*N");

    const arma::cx_mat w = time_phase_basis(est.gamma, q_len);
    arma::cx_mat a_r(n_len, z_len);
    for (arma::uword z = 0; z < z_len; ++z)
        a_r.col(z) = steering_vector(est.mu_r(z), n_len);
    const arma::cx_mat w_m = khatri_rao(a_r, w); // rows: rx slow, time fast

    // one solve per transmit antenna, then regroup per path
    arma::cx_mat per_antenna(z_len, m_len);
    arma::cx_vec h_m(n_len * q_len);
    for (arma::uword m = 0; m < m_len; ++m)
    {
        for (arma::uword n = 0; n < n_len; ++n)
            h_m.subvec(n * q_len, (n + 1) * q_len - 1) = first_subcarrier_series(tensor, n, m);
        per_antenna.col(m) = ls_solve_regularized(w_m, h_m, sigma_reg);
    }

    AmplitudeEstimate out;
    out.model = Model::tss;
    out.tss.resize(z_len);
    for (arma::uword z = 0; z < z_len; ++z)
        out.tss[z] = per_antenna.row(z).st();
    return out;
}

AmplitudeEstimate estimate_mss(const ChannelTensor &tensor, const StructuralEstimate &est,
                               double sigma_reg)
{
    const arma::uword z_len = est.size();
    if (z_len == 0 || est.eta.n_elem != z_len)
        throw ContractError("estimate_mss: structural estimate must carry gamma and eta");

    const arma::uword n_len = tensor.config.n_rx;
    const arma::uword m_len = tensor.config.n_tx;
    const arma::uword q_len = tensor.config.n_time;
    if (z_len > q_len)
        throw UnderdeterminedError("estimate_mss: more paths than temporal observations Q");

    const arma::cx_mat w = time_phase_basis(est.gamma, q_len);

    AmplitudeEstimate out;
    out.model = Model::mss;
    out.mss.assign(z_len, arma::cx_mat(n_len, m_len));
    for (arma::uword m = 0; m < m_len; ++m)
        for (arma::uword n = 0; n < n_len; ++n)
        {
            const arma::cx_vec s_nm =
                ls_solve_regularized(w, first_subcarrier_series(tensor, n, m), sigma_reg);
            for (arma::uword z = 0; z < z_len; ++z)
                out.mss[z](n, m) = s_nm(z);
        }
    return out;
}

} // namespace wimemchap
