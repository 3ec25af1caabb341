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

#ifndef WIMEMCHAP_HARNESS_HPP
#define WIMEMCHAP_HARNESS_HPP

#include <iosfwd>
#include <optional>

#include "wimemchap/crb.hpp"
#include "wimemchap/predictor.hpp"

namespace wimemchap
{

// Normalized square error of one predicted matrix against the truth, with a
// caller-supplied denominator (mean Frobenius power over the observed grid).
double nse_value(const arma::cx_mat &predicted, const arma::cx_mat &truth, double mean_power);

// Mean of per-trial NSE samples (linear scale; take dB at serialization).
double nmse(const std::vector<double> &per_trial_nse);

// Structural parameters of the generating rays, restricted to the dimensions
// the model estimates.
StructuralEstimate true_structural(const PathSet &paths, const ChannelConfig &config, Model model);

// Index into the estimate for a truth path that found no partner.
inline constexpr arma::uword unmatched = static_cast<arma::uword>(-1);

// Minimum-total-cost bijection between truth and estimated paths under the
// summed squared circular distance of the dimensions present in both.
// Unequal counts are padded with `unmatched` sentinels. Deterministic.
std::vector<arma::uword> match_paths(const StructuralEstimate &truth,
                                     const StructuralEstimate &estimate);

// Root mean square error over realizations, wrapped differences when angular.
double rmse(const std::vector<double> &estimates, double true_value, bool angular);

struct StackingOptions
{
    arma::uword r = 0; // 0 keeps the per-profile default
    arma::uword t = 0;
    double sigma_reg = default_sigma_reg;
};

struct ExperimentConfig
{
    int scenario = 1; // 1: fixed rays, 2: rays redrawn per realization
    std::vector<Model> models = {Model::dod_doa, Model::tss, Model::mss};
    std::vector<double> snr_db_grid = {15.0};
    std::vector<double> horizons_lambda = {1.0};
    arma::uword n_trials = 100;
    ChannelConfig channel;
    StackingOptions stacking;
    std::uint64_t rng_seed = 1;
    std::optional<arma::uword> z_override;
    arma::uword n_paths = 6; // scenario-two ray count; also the order-search hint
    arma::uword n_threads = 1;
    double failure_ceiling = 0.05;

    void validate() const; // throws ConfigError
};

struct ResultRow
{
    std::string model; // "doddoa", "tssm", "mssm" or "bound"
    double snr_db;
    double horizon_lambda; // 0 for horizon-free metrics
    std::string metric;
    double value;
    arma::uword n_trials; // realizations behind this value
    std::uint64_t seed;
};

struct NseSample
{
    std::string model;
    double snr_db;
    double horizon_lambda;
    arma::uword trial;
    double nse; // linear
};

struct ResultTable
{
    std::vector<ResultRow> rows;
    std::vector<NseSample> nse_samples;
    bool degraded = false;       // some (model, snr) cell exceeded the failure ceiling
    double max_failure_rate = 0.0;

    const ResultRow *find(const std::string &model, double snr_db, double horizon,
                          const std::string &metric) const;
};

// Monte Carlo evaluation: per trial draw or reuse the rays, sample the clean
// grid, inject per-SNR noise, fit every model, extrapolate over the horizon
// grid, and accumulate NSE, per-parameter RMSE (path-matched) and, for the
// fixed-ray scenario, the parameter and prediction bounds. Per-trial RNG
// streams are keyed by (seed, trial), so results are identical for any
// worker-thread count.
ResultTable run_experiment(const ExperimentConfig &config);

// serialization (floats rendered with 17 significant digits)
void write_result_csv(const ResultTable &table, std::ostream &out);
void write_nse_samples_csv(const ResultTable &table, std::ostream &out);
void write_result_json(const ResultTable &table, const ExperimentConfig &config, std::ostream &out);
ResultTable read_result_csv(std::istream &in);
void read_nse_samples_csv(std::istream &in, ResultTable &table);

// per-figure CSV emission (grouped, plot-ready) into an existing directory
void write_report_figures(const ResultTable &table, const std::string &out_dir);

ExperimentConfig experiment_from_kv(const KeyValueFile &kv);

} // namespace wimemchap

#endif
