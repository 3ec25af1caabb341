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

#include "wimemchap/stacking.hpp"
#include "wimemchap/error.hpp"
#include "wimemchap/numkernel.hpp"

namespace wimemchap
{

std::string to_string(Model model)
{
    switch (model)
    {
    case Model::dod_doa:
        return "doddoa";
    case Model::tss:
        return "tssm";
    case Model::mss:
        return "mssm";
    }
    return "?";
}

Model model_from_string(const std::string &name)
{
    if (name == "doddoa" || name == "dod_doa" || name == "dod-doa")
        return Model::dod_doa;
    if (name == "tssm" || name == "tss")
        return Model::tss;
    if (name == "mssm" || name == "mss")
        return Model::mss;
    throw ConfigError("unknown model name: " + name + " (expected doddoa, tssm or mssm)");
}

StackShape make_stack_shape(arma::uword q_len, arma::uword k_len, arma::uword r, arma::uword t)
{
    if (r < 1 || r > q_len)
        throw DimensionError("stack shape: 1 <= R <= Q violated (R = " + std::to_string(r) +
                             ", Q = " + std::to_string(q_len) + ")");
    if (t < 1 || t > k_len)
        throw DimensionError("stack shape: 1 <= T <= K violated (T = " + std::to_string(t) +
                             ", K = " + std::to_string(k_len) + ")");
    return StackShape{r, t, q_len - r + 1, k_len - t + 1};
}

void check_resolvable(Model model, const StackShape &shape, arma::uword n_rx, arma::uword n_tx,
                      arma::uword n_paths)
{
    arma::uword rows = shape.s * shape.u;
    std::string lhs = "S*U";
    switch (model)
    {
    case Model::dod_doa:
        rows *= n_rx * n_tx;
        lhs = "N*M*S*U";
        break;
    case Model::tss:
        rows *= n_rx;
        lhs = "N*S*U";
        break;
    case Model::mss:
        break;
    }
    if (rows < n_paths + 1)
        throw DimensionError("stack shape: " + lhs + " >= Z+1 violated (" + std::to_string(rows) +
                             " < " + std::to_string(n_paths + 1) + ")");
}

StackedData build_stacked(const ChannelTensor &tensor, Model model, arma::uword r, arma::uword t)
{
    tensor.config.validate();
    const arma::uword n = tensor.config.n_rx;
    const arma::uword m = tensor.config.n_tx;
    const StackShape shape = make_stack_shape(tensor.config.n_time, tensor.config.n_freq, r, t);
    const arma::uword s_len = shape.s, u_len = shape.u;

    StackedData sd;
    sd.model = model;
    sd.shape = shape;
    sd.n_rx = n;
    sd.n_tx = m;
    sd.source_noise_var = tensor.noise_var;

    switch (model)
    {
    case Model::dod_doa:
    {
        sd.matrix.set_size(n * m * s_len * u_len, r * t);
        for (arma::uword j = 0; j < r; ++j)
            for (arma::uword tt = 0; tt < t; ++tt)
            {
                const arma::uword col = j * t + tt;
                for (arma::uword in = 0; in < n; ++in)
                    for (arma::uword im = 0; im < m; ++im)
                        for (arma::uword is = 0; is < s_len; ++is)
                            for (arma::uword iu = 0; iu < u_len; ++iu)
                                sd.matrix(((in * m + im) * s_len + is) * u_len + iu, col) =
                                    tensor.sample(is + j, iu + tt)(in, im);
            }
        break;
    }
    case Model::tss:
    {
        sd.matrix.set_size(n * s_len * u_len, m * r * t);
        for (arma::uword im = 0; im < m; ++im)
            for (arma::uword j = 0; j < r; ++j)
                for (arma::uword tt = 0; tt < t; ++tt)
                {
                    const arma::uword col = (im * r + j) * t + tt;
                    for (arma::uword in = 0; in < n; ++in)
                        for (arma::uword is = 0; is < s_len; ++is)
                            for (arma::uword iu = 0; iu < u_len; ++iu)
                                sd.matrix((in * s_len + is) * u_len + iu, col) =
                                    tensor.sample(is + j, iu + tt)(in, im);
                }
        break;
    }
    case Model::mss:
    {
        sd.matrix.set_size(s_len * u_len, n * m * r * t);
        for (arma::uword im = 0; im < m; ++im)
            for (arma::uword in = 0; in < n; ++in)
                for (arma::uword j = 0; j < r; ++j)
                    for (arma::uword tt = 0; tt < t; ++tt)
                    {
                        // column-stacked antenna pair index, n fastest
                        const arma::uword col = ((im * n + in) * r + j) * t + tt;
                        for (arma::uword is = 0; is < s_len; ++is)
                            for (arma::uword iu = 0; iu < u_len; ++iu)
                                sd.matrix(is * u_len + iu, col) =
                                    tensor.sample(is + j, iu + tt)(in, im);
                    }
        break;
    }
    }
    return sd;
}

double column_model_check(const StackedData &stacked, const PathSet &paths,
                          const ChannelConfig &config)
{
    if (stacked.source_noise_var > 0.0)
        throw ContractError("column_model_check: requires a stacked matrix built from a clean tensor");
    paths.validate();

    const DerivedGrid grid = derive_grid(config);
    const arma::uword z_len = paths.size();
    const arma::uword n = stacked.n_rx, m = stacked.n_tx;
    const arma::uword s_len = stacked.shape.s, u_len = stacked.shape.u;
    const arma::uword r = stacked.shape.r, t = stacked.shape.t;

    arma::vec mu_r(z_len), mu_t(z_len), gam(z_len), eta(z_len);
    arma::cx_vec beta(z_len);
    for (arma::uword z = 0; z < z_len; ++z)
    {
        const Path &p = paths.paths[z];
        mu_r(z) = mu_rx_of(p, config);
        mu_t(z) = mu_tx_of(p, config);
        gam(z) = gamma_of(p, grid);
        eta(z) = eta_of(p, grid);
        beta(z) = p.beta;
    }

    // Steering matrix with columns in the fixed (rx, tx, time, freq) factor
    // order; the per-model row space drops the leading spatial factors.
    arma::cx_mat a(stacked.matrix.n_rows, z_len);
    for (arma::uword z = 0; z < z_len; ++z)
    {
        arma::cx_vec col = steering_vector(gam(z), s_len);
        col = arma::kron(col, steering_vector(-eta(z), u_len));
        if (stacked.model == Model::tss || stacked.model == Model::dod_doa)
        {
            if (stacked.model == Model::dod_doa)
                col = arma::kron(steering_vector(mu_t(z), m), col);
            col = arma::kron(steering_vector(mu_r(z), n), col);
        }
        a.col(z) = col;
    }

    const arma::cx_double i1(0.0, 1.0);
    double worst = 0.0;
    for (arma::uword col = 0; col < stacked.matrix.n_cols; ++col)
    {
        // invert the column flattening into its window/antenna offsets
        arma::uword rest = col;
        const arma::uword tt = rest % t;
        rest /= t;
        const arma::uword j = (stacked.model == Model::dod_doa) ? rest : rest % r;
        rest /= (stacked.model == Model::dod_doa) ? 1 : r;

        arma::cx_vec alpha(z_len);
        for (arma::uword z = 0; z < z_len; ++z)
        {
            arma::cx_double amp = beta(z) *
                std::exp(i1 * (static_cast<double>(j) * gam(z) - static_cast<double>(tt) * eta(z)));
            if (stacked.model == Model::tss)
            {
                const arma::uword im = rest;
                amp *= std::polar(1.0, static_cast<double>(im) * mu_t(z));
            }
            else if (stacked.model == Model::mss)
            {
                const arma::uword im = rest / n;
                const arma::uword in = rest % n;
                amp *= std::polar(1.0, static_cast<double>(in) * mu_r(z) +
                                           static_cast<double>(im) * mu_t(z));
            }
            alpha(z) = amp;
        }

        const arma::cx_vec x = stacked.matrix.col(col);
        const double denom = arma::norm(x);
        if (denom == 0.0)
            continue;
        worst = std::max(worst, arma::norm(x - a * alpha) / denom);
    }
    return worst;
}

} // namespace wimemchap
