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

#ifndef WIMEMCHAP_PREDICTOR_HPP
#define WIMEMCHAP_PREDICTOR_HPP

#include <optional>

#include "wimemchap/amplitude.hpp"
#include "wimemchap/subspace.hpp"

namespace wimemchap
{

struct FitOptions
{
    arma::uword r = 0; // 0 selects the default ceil(Q/2)
    arma::uword t = 0; // 0 selects the default ceil(K/2)
    double sigma_reg = default_sigma_reg;
    std::optional<arma::uword> z_override; // fixed model order, bypasses selection
    std::optional<arma::uword> z_hint;     // caps the order search at 2 * hint
};

struct FitDiagnostics
{
    double pairing_condition = 1.0;
    double noise_var_hat = 0.0;
    bool order_overridden = false;
};

// Complete parameter estimate of one model fitted to one observed tensor.
struct ModelEstimate
{
    Model model = Model::dod_doa;
    arma::uword z_hat = 0;
    StructuralEstimate structural;
    AmplitudeEstimate amplitudes;
    FitDiagnostics diagnostics;
};

struct PredictionRequest
{
    std::vector<long long> q_indices; // may exceed Q-1; negative values hindcast
    std::vector<long long> k_indices;
};

// Predicted responses over the requested index grid.
struct PredictionGrid
{
    std::vector<long long> q_indices;
    std::vector<long long> k_indices;
    arma::cx_cube samples; // n_rx x n_tx x (len(q) * len(k))

    arma::cx_mat sample(std::size_t iq, std::size_t ik) const
    {
        return samples.slice(iq * k_indices.size() + ik);
    }
};

// Full pipeline: stack, analyze the sample covariance, select or accept the
// model order, split the subspace, solve the per-dimension invariance
// equations, jointly pair, then fit the model's amplitude parameters.
// Errors out of any stage are rethrown with a stage label prefix.
ModelEstimate fit(const ChannelTensor &tensor, Model model, const FitOptions &options = FitOptions());

// Extrapolate (or interpolate) the fitted model over arbitrary indices.
PredictionGrid predict(const ModelEstimate &estimate, const PredictionRequest &request,
                       const ChannelConfig &config);

} // namespace wimemchap

#endif
