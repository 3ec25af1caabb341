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

#include "wimemchap/predictor.hpp"
#include "wimemchap/error.hpp"

namespace wimemchap
{

template <typename Fn>
static auto run_stage(const char *stage, Fn &&fn) -> decltype(fn())
{
    try
    {
        return fn();
    }
    catch (const DimensionError &e)
    {
        throw DimensionError(std::string(stage) + ": " + e.what());
    }
    catch (const RankError &e)
    {
        throw RankError(std::string(stage) + ": " + e.what());
    }
    catch (const PairingError &e)
    {
        throw PairingError(std::string(stage) + ": " + e.what());
    }
    catch (const UnderdeterminedError &e)
    {
        throw UnderdeterminedError(std::string(stage) + ": " + e.what());
    }
    catch (const SingularityError &e)
    {
        throw SingularityError(std::string(stage) + ": " + e.what());
    }
    catch (const ContractError &e)
    {
        throw ContractError(std::string(stage) + ": " + e.what());
    }
}

ModelEstimate fit(const ChannelTensor &tensor, Model model, const FitOptions &options)
{
    const ChannelConfig &cfg = tensor.config;
    const arma::uword r = options.r ? options.r : (cfg.n_time + 1) / 2;
    const arma::uword t = options.t ? options.t : (cfg.n_freq + 1) / 2;

    const StackedData stacked =
        run_stage("stacking", [&] { return build_stacked(tensor, model, r, t); });

    const StackedSpectrum spectrum =
        run_stage("subspace", [&] { return analyze_stacked(stacked); });

    arma::uword z_hat;
    if (options.z_override)
    {
        z_hat = *options.z_override;
        run_stage("subspace", [&] {
            check_resolvable(model, stacked.shape, cfg.n_rx, cfg.n_tx, z_hat);
            return 0;
        });
    }
    else
    {
        arma::uword max_order = spectrum.eigvals.n_elem - 1;
        if (options.z_hint)
            max_order = std::min<arma::uword>(max_order, 2 * *options.z_hint);
        max_order = std::min<arma::uword>(max_order, spectrum.dim - 1);
        z_hat = run_stage("subspace", [&] {
            return estimate_order(spectrum.eigvals, spectrum.n_snapshots, max_order);
        });
    }

    const SubspaceSplit sub =
        run_stage("subspace", [&] { return split_from_spectrum(stacked, spectrum, z_hat); });

    const DimensionLayout layout = layout_for(model, stacked.shape, cfg.n_rx, cfg.n_tx);
    std::vector<arma::cx_mat> phis;
    std::vector<Dim> dim_names;
    phis.reserve(layout.dims.size());
    for (const auto &d : layout.dims)
    {
        phis.push_back(run_stage("esprit/invariance", [&] {
            return solve_invariance(sub.signal_basis, selection_pair(layout, d.first));
        }));
        dim_names.push_back(d.first);
    }

    ModelEstimate est;
    est.model = model;
    est.z_hat = z_hat;
    est.structural =
        run_stage("esprit/pairing", [&] { return pair_and_extract(phis, dim_names); });

    est.amplitudes = run_stage("amplitude", [&] {
        switch (model)
        {
        case Model::dod_doa:
            return estimate_beta_doddoa(tensor, est.structural, options.sigma_reg);
        case Model::tss:
            return estimate_tss(tensor, est.structural, options.sigma_reg);
        case Model::mss:
        default:
            return estimate_mss(tensor, est.structural, options.sigma_reg);
        }
    });

    est.diagnostics.pairing_condition = est.structural.pairing_condition;
    est.diagnostics.noise_var_hat = sub.noise_var_hat;
    est.diagnostics.order_overridden = options.z_override.has_value();
    return est;
}

PredictionGrid predict(const ModelEstimate &estimate, const PredictionRequest &request,
                       const ChannelConfig &config)
{
    if (request.q_indices.empty() || request.k_indices.empty())
        throw ContractError("predict: index lists must be non-empty");
    if (estimate.z_hat == 0 || estimate.structural.size() != estimate.z_hat)
        throw ContractError("predict: estimate is incomplete");

    const arma::uword n = config.n_rx, m = config.n_tx;
    const arma::uword z_len = estimate.z_hat;

    // per-path amplitude matrix of the fitted model
    std::vector<arma::cx_mat> amp(z_len);
    for (arma::uword z = 0; z < z_len; ++z)
    {
        switch (estimate.model)
        {
        case Model::dod_doa:
            amp[z] = estimate.amplitudes.betas(z) *
                     (steering_vector(estimate.structural.mu_r(z), n) *
                      steering_vector(estimate.structural.mu_t(z), m).st());
            break;
        case Model::tss:
            amp[z] = steering_vector(estimate.structural.mu_r(z), n) *
                     estimate.amplitudes.tss[z].st();
            break;
        case Model::mss:
            amp[z] = estimate.amplitudes.mss[z];
            break;
        }
        if (amp[z].n_rows != n || amp[z].n_cols != m)
            throw ContractError("predict: amplitude dimensions do not match the antenna counts");
    }

    PredictionGrid grid;
    grid.q_indices = request.q_indices;
    grid.k_indices = request.k_indices;
    grid.samples.set_size(n, m, request.q_indices.size() * request.k_indices.size());

    for (std::size_t iq = 0; iq < request.q_indices.size(); ++iq)
        for (std::size_t ik = 0; ik < request.k_indices.size(); ++ik)
        {
            const double q = static_cast<double>(request.q_indices[iq]);
            const double k = static_cast<double>(request.k_indices[ik]);
            arma::cx_mat h(n, m, arma::fill::zeros);
            for (arma::uword z = 0; z < z_len; ++z)
            {
                const double phase = q * estimate.structural.gamma(z) - k * estimate.structural.eta(z);
                h += std::polar(1.0, phase) * amp[z];
            }
            grid.samples.slice(iq * request.k_indices.size() + ik) = h;
        }
    return grid;
}

} // namespace wimemchap
