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

#include "wimemchap/crb.hpp"
#include "wimemchap/error.hpp"

#include <limits>

namespace wimemchap
{

static arma::cx_mat vandermonde(const arma::vec &phases, arma::uword rows)
{
    arma::cx_mat a(rows, phases.n_elem);
    for (arma::uword z = 0; z < phases.n_elem; ++z)
        a.col(z) = steering_vector(phases(z), rows);
    return a;
}

static arma::cx_mat phase_derivative(const arma::cx_mat &a, double orientation)
{
    // d/d(param) of e^{+-j l param} = +-j l e^{+-j l param}
    arma::cx_mat d = a;
    const arma::cx_double j1(0.0, 1.0);
    for (arma::uword l = 0; l < a.n_rows; ++l)
        d.row(l) *= orientation * j1 * static_cast<double>(l);
    return d;
}

CrbFactors build_factors(const PathSet &paths, const ChannelConfig &config)
{
    paths.validate();
    config.validate();
    const DerivedGrid grid = derive_grid(config);
    const arma::uword z_len = paths.size();

    arma::vec mu_r(z_len), mu_t(z_len), gam(z_len), eta(z_len);
    CrbFactors f;
    f.amplitudes.set_size(z_len);
    for (arma::uword z = 0; z < z_len; ++z)
    {
        const Path &p = paths.paths[z];
        mu_r(z) = mu_rx_of(p, config);
        mu_t(z) = mu_tx_of(p, config);
        gam(z) = gamma_of(p, grid);
        eta(z) = eta_of(p, grid);
        f.amplitudes(z) = p.beta;
    }

    f.a_rx = vandermonde(mu_r, config.n_rx);
    f.a_tx = vandermonde(mu_t, config.n_tx);
    f.a_time = vandermonde(gam, config.n_time);
    f.a_freq = vandermonde(-eta, config.n_freq); // e^{-j k eta}

    f.d_rx = phase_derivative(f.a_rx, +1.0);
    f.d_tx = phase_derivative(f.a_tx, +1.0);
    f.d_time = phase_derivative(f.a_time, +1.0);
    f.d_freq = phase_derivative(f.a_freq, -1.0); // derivative w.r.t. eta
    return f;
}

FimReport build_fim(const PathSet &paths, const ChannelConfig &config, double noise_var)
{
    if (!(noise_var > 0.0))
        throw ContractError("build_fim: noise_var must be positive");

    const CrbFactors f = build_factors(paths, config);
    const arma::uword z_len = paths.size();
    const arma::uword p_len = 6 * z_len;
    const arma::cx_double j1(0.0, 1.0);

    // Row factors of the stacked-observation Jacobian, one column block per
    // parameter group (mu_r, mu_t, gamma, eta, Re beta, Im beta).
    arma::cx_mat g1(1, p_len), g2(config.n_rx, p_len), g3(config.n_tx, p_len),
        g4(config.n_time, p_len), g5(config.n_freq, p_len);
    for (arma::uword blk = 0; blk < 6; ++blk)
    {
        const arma::uword lo = blk * z_len, hi = (blk + 1) * z_len - 1;
        g2.cols(lo, hi) = (blk == 0) ? f.d_rx : f.a_rx;
        g3.cols(lo, hi) = (blk == 1) ? f.d_tx : f.a_tx;
        g4.cols(lo, hi) = (blk == 2) ? f.d_time : f.a_time;
        g5.cols(lo, hi) = (blk == 3) ? f.d_freq : f.a_freq;
        for (arma::uword z = 0; z < z_len; ++z)
        {
            arma::cx_double amp;
            if (blk < 4)
                amp = f.amplitudes(z); // structural derivatives carry the gain
            else if (blk == 4)
                amp = 1.0; // d/d Re(beta)
            else
                amp = j1; // d/d Im(beta)
            g1(0, lo + z) = amp;
        }
    }

    // Gram of a Khatri-Rao product collapses to the Hadamard product of the
    // factor Grams; this keeps the computation at 6Z x 6Z.
    arma::mat j = (2.0 / noise_var) *
                  arma::real((g5.t() * g5) % (g4.t() * g4) % (g3.t() * g3) % (g2.t() * g2) %
                             (g1.t() * g1));
    j = 0.5 * (j + j.t());

    FimReport rep;
    rep.n_paths = z_len;
    rep.noise_var = noise_var;
    rep.j_block = j;
    rep.fim.zeros(1 + p_len, 1 + p_len);
    rep.fim(0, 0) = static_cast<double>(config.n_freq * config.n_time * config.n_rx * config.n_tx) /
                    (noise_var * noise_var);
    rep.fim.submat(1, 1, p_len, p_len) = j;

    // Pseudo-inverse with explicit null-direction bookkeeping: a parameter
    // whose basis vector leans into the null space has no finite bound.
    arma::vec evals;
    arma::mat evecs;
    if (!arma::eig_sym(evals, evecs, j))
        throw SingularityError("build_fim: eigendecomposition of the information block failed");

    const double emax = evals.max();
    const double tol = std::max(emax, 0.0) * 1e-12;
    arma::vec inv_evals(evals.n_elem, arma::fill::zeros);
    for (arma::uword i = 0; i < evals.n_elem; ++i)
    {
        if (evals(i) > tol)
            inv_evals(i) = 1.0 / evals(i);
        else
            rep.used_pseudo_inverse = true;
    }
    rep.j_pinv = evecs * arma::diagmat(inv_evals) * evecs.t();
    rep.j_pinv = 0.5 * (rep.j_pinv + rep.j_pinv.t());

    const double inf = std::numeric_limits<double>::infinity();
    rep.crb_diag.set_size(1 + p_len);
    rep.crb_diag(0) = (noise_var * noise_var) /
                      static_cast<double>(config.n_freq * config.n_time * config.n_rx * config.n_tx);
    for (arma::uword i = 0; i < p_len; ++i)
    {
        double null_mass = 0.0, bound = 0.0;
        for (arma::uword k = 0; k < evals.n_elem; ++k)
        {
            const double c = evecs(i, k);
            if (evals(k) > tol)
                bound += c * c / evals(k);
            else
                null_mass += c * c;
        }
        rep.crb_diag(1 + i) = (null_mass > 1e-9) ? inf : bound;
    }
    return rep;
}

double mean_grid_power(const PathSet &paths, const ChannelConfig &config)
{
    double acc = 0.0;
    for (arma::uword q = 0; q < config.n_time; ++q)
        for (arma::uword k = 0; k < config.n_freq; ++k)
        {
            const arma::cx_mat h = channel_response(paths, config, q, k);
            acc += arma::accu(arma::square(arma::abs(h)));
        }
    return acc / static_cast<double>(config.n_time * config.n_freq);
}

PredictionBound prediction_bound(const FimReport &fim_report, const PathSet &paths,
                                 const ChannelConfig &config, long long q, long long k,
                                 double mean_power)
{
    if (fim_report.n_paths != paths.size())
        throw ContractError("prediction_bound: report and path set disagree on Z");

    const DerivedGrid grid = derive_grid(config);
    const arma::uword n = config.n_rx, m = config.n_tx;
    const arma::uword z_len = paths.size();
    const arma::cx_double j1(0.0, 1.0);

    // Jacobian of the single-snapshot response w.r.t. the parameter block,
    // rows in column-stacked vec order. The sigma^2 column is identically
    // zero, so only the 6Z block enters the quadratic form.
    arma::cx_mat jac(n * m, 6 * z_len, arma::fill::zeros);
    for (arma::uword z = 0; z < z_len; ++z)
    {
        const Path &p = paths.paths[z];
        const double mu_r = mu_rx_of(p, config);
        const double mu_t = mu_tx_of(p, config);
        const double phase_qk = static_cast<double>(q) * gamma_of(p, grid) -
                                static_cast<double>(k) * eta_of(p, grid);
        for (arma::uword im = 0; im < m; ++im)
            for (arma::uword in = 0; in < n; ++in)
            {
                const arma::uword row = im * n + in;
                const arma::cx_double base =
                    std::polar(1.0, static_cast<double>(in) * mu_r +
                                        static_cast<double>(im) * mu_t + phase_qk);
                const arma::cx_double term = p.beta * base;
                jac(row, 0 * z_len + z) = j1 * static_cast<double>(in) * term;
                jac(row, 1 * z_len + z) = j1 * static_cast<double>(im) * term;
                jac(row, 2 * z_len + z) = j1 * static_cast<double>(q) * term;
                jac(row, 3 * z_len + z) = -j1 * static_cast<double>(k) * term;
                jac(row, 4 * z_len + z) = base;
                jac(row, 5 * z_len + z) = j1 * base;
            }
    }

    PredictionBound out;
    out.used_pseudo_inverse = fim_report.used_pseudo_inverse;
    out.c_e = jac * arma::conv_to<arma::cx_mat>::from(fim_report.j_pinv) * jac.t();
    out.c_e = 0.5 * (out.c_e + out.c_e.t());
    out.trace = arma::trace(arma::real(out.c_e));
    const double denom = (mean_power >= 0.0) ? mean_power : mean_grid_power(paths, config);
    out.normalized_trace = out.trace / denom;
    return out;
}

} // namespace wimemchap
