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

#include "wimemchap/harness.hpp"
#include "wimemchap/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace wimemchap
{

static std::string fmt17(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double nse_value(const arma::cx_mat &predicted, const arma::cx_mat &truth, double mean_power)
{
    if (predicted.n_rows != truth.n_rows || predicted.n_cols != truth.n_cols)
        throw DimensionError("nse: predicted and truth shapes differ");
    if (!(mean_power > 0.0))
        throw ContractError("nse: mean power denominator must be positive");
    const double err = arma::accu(arma::square(arma::abs(predicted - truth)));
    return err / mean_power;
}

double nmse(const std::vector<double> &per_trial_nse)
{
    if (per_trial_nse.empty())
        throw ContractError("nmse: need at least one NSE sample");
    double acc = 0.0;
    for (double v : per_trial_nse)
        acc += v;
    return acc / static_cast<double>(per_trial_nse.size());
}

StructuralEstimate true_structural(const PathSet &paths, const ChannelConfig &config, Model model)
{
    const DerivedGrid grid = derive_grid(config);
    const arma::uword z_len = paths.size();
    StructuralEstimate s;
    s.gamma.set_size(z_len);
    s.eta.set_size(z_len);
    if (model != Model::mss)
        s.mu_r.set_size(z_len);
    if (model == Model::dod_doa)
        s.mu_t.set_size(z_len);
    for (arma::uword z = 0; z < z_len; ++z)
    {
        const Path &p = paths.paths[z];
        s.gamma(z) = wrap_angle(gamma_of(p, grid));
        s.eta(z) = wrap_angle(eta_of(p, grid));
        if (model != Model::mss)
            s.mu_r(z) = wrap_angle(mu_rx_of(p, config));
        if (model == Model::dod_doa)
            s.mu_t(z) = wrap_angle(mu_tx_of(p, config));
    }
    s.pairing_condition = 1.0;
    return s;
}

std::vector<arma::uword> match_paths(const StructuralEstimate &truth,
                                     const StructuralEstimate &estimate)
{
    const arma::uword nt = truth.size();
    const arma::uword ne = estimate.size();
    if (nt == 0)
        return {};
    const arma::uword n = std::max(nt, ne);
    if (n > 20)
        throw ContractError("match_paths: at most 20 paths supported");

    // dimensions present on both sides
    std::vector<std::pair<const arma::vec *, const arma::vec *>> dims;
    if (truth.mu_r.n_elem == nt && estimate.mu_r.n_elem == ne && nt && ne)
        dims.push_back({&truth.mu_r, &estimate.mu_r});
    if (truth.mu_t.n_elem == nt && estimate.mu_t.n_elem == ne && nt && ne)
        dims.push_back({&truth.mu_t, &estimate.mu_t});
    if (truth.gamma.n_elem == nt && estimate.gamma.n_elem == ne)
        dims.push_back({&truth.gamma, &estimate.gamma});
    if (truth.eta.n_elem == nt && estimate.eta.n_elem == ne)
        dims.push_back({&truth.eta, &estimate.eta});
    if (dims.empty())
        throw ContractError("match_paths: no common structural dimensions");

    // any pairing of real paths beats using a sentinel slot
    const double penalty = static_cast<double>(dims.size()) * pi * pi + 1.0;
    arma::mat cost(n, n);
    for (arma::uword i = 0; i < n; ++i)
        for (arma::uword j = 0; j < n; ++j)
        {
            if (i >= nt || j >= ne)
            {
                cost(i, j) = penalty;
                continue;
            }
            double c = 0.0;
            for (const auto &d : dims)
            {
                const double delta = angular_distance((*d.first)(i), (*d.second)(j));
                c += delta * delta;
            }
            cost(i, j) = c;
        }

    // exact assignment by subset dynamic programming over estimate slots
    const std::size_t full = std::size_t(1) << n;
    std::vector<double> best(full, std::numeric_limits<double>::infinity());
    std::vector<std::uint8_t> choice(full, 0);
    best[0] = 0.0;
    for (std::size_t mask = 0; mask < full; ++mask)
    {
        if (!std::isfinite(best[mask]))
            continue;
        const arma::uword i = static_cast<arma::uword>(__builtin_popcountll(mask));
        if (i >= n)
            continue;
        for (arma::uword j = 0; j < n; ++j)
        {
            if (mask & (std::size_t(1) << j))
                continue;
            const std::size_t next = mask | (std::size_t(1) << j);
            const double c = best[mask] + cost(i, j);
            if (c < best[next])
            {
                best[next] = c;
                choice[next] = static_cast<std::uint8_t>(j);
            }
        }
    }

    // walk back from the full mask to recover the per-truth-path slots
    std::vector<arma::uword> assign(n, unmatched);
    std::size_t mask = full - 1;
    for (arma::uword step = n; step-- > 0;)
    {
        const arma::uword j = choice[mask];
        assign[step] = j;
        mask &= ~(std::size_t(1) << j);
    }

    std::vector<arma::uword> out(nt, unmatched);
    for (arma::uword i = 0; i < nt; ++i)
        out[i] = (assign[i] < ne) ? assign[i] : unmatched;
    return out;
}

double rmse(const std::vector<double> &estimates, double true_value, bool angular)
{
    if (estimates.empty())
        throw ContractError("rmse: need at least one estimate");
    double acc = 0.0;
    for (double e : estimates)
    {
        const double d = angular ? wrap_angle(e - true_value) : (e - true_value);
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(estimates.size()));
}

void ExperimentConfig::validate() const
{
    if (scenario != 1 && scenario != 2)
        throw ConfigError("experiment: scenario must be 1 or 2");
    if (models.empty())
        throw ConfigError("experiment: model list must be non-empty");
    if (snr_db_grid.empty())
        throw ConfigError("experiment: SNR grid must be non-empty");
    if (horizons_lambda.empty())
        throw ConfigError("experiment: horizon grid must be non-empty");
    if (n_trials < 1)
        throw ConfigError("experiment: n_trials must be >= 1");
    if (n_threads < 1)
        throw ConfigError("experiment: n_threads must be >= 1");
    if (!(failure_ceiling >= 0.0 && failure_ceiling <= 1.0))
        throw ConfigError("experiment: failure_ceiling must lie in [0, 1]");
    if (n_paths < 1)
        throw ConfigError("experiment: n_paths must be >= 1");
    for (double s : snr_db_grid)
        if (std::isnan(s) || s == -std::numeric_limits<double>::infinity())
            throw ConfigError("experiment: SNR values must be finite or +inf");
    for (double h : horizons_lambda)
        if (!std::isfinite(h))
            throw ConfigError("experiment: horizons must be finite");
    channel.validate();
}

const ResultRow *ResultTable::find(const std::string &model, double snr_db, double horizon,
                                   const std::string &metric) const
{
    for (const auto &r : rows)
        if (r.model == model && r.metric == metric && r.snr_db == snr_db &&
            r.horizon_lambda == horizon)
            return &r;
    return nullptr;
}

namespace
{

struct CellResult
{
    bool ok = false;
    std::string error;
    arma::uword z_hat = 0;
    bool order_ok = false;
    // wrapped parameter errors of matched paths, one entry per path
    arma::vec err_mu_r, err_mu_t, err_gamma, err_eta;
    std::vector<double> nse_per_horizon; // linear
};

struct TrialResult
{
    bool generated = false; // channel realization succeeded
    std::string error;
    std::vector<CellResult> cells; // indexed si * n_models + mi
};

} // namespace

ResultTable run_experiment(const ExperimentConfig &cfg)
{
    cfg.validate();

    const arma::uword n_models = cfg.models.size();
    const arma::uword n_snrs = cfg.snr_db_grid.size();
    const arma::uword n_horizons = cfg.horizons_lambda.size();
    const arma::uword q_len = cfg.channel.n_time;
    const arma::uword k_len = cfg.channel.n_freq;

    // prediction grid: one q index per horizon, all subcarriers
    std::vector<long long> q_pred(n_horizons);
    for (arma::uword h = 0; h < n_horizons; ++h)
        q_pred[h] = static_cast<long long>(q_len) - 1 +
                    std::llround(cfg.horizons_lambda[h] * cfg.channel.spatial_rate_per_lambda);
    std::vector<long long> k_pred(k_len);
    for (arma::uword k = 0; k < k_len; ++k)
        k_pred[k] = static_cast<long long>(k);

    // fixed-ray scenario shares the clean tensor across trials
    PathSet fixed_paths;
    ChannelTensor fixed_clean;
    double fixed_denom = 0.0;
    std::vector<StructuralEstimate> fixed_truth(n_models);
    if (cfg.scenario == 1)
    {
        fixed_paths = scenario_one_paths();
        fixed_clean = sample_grid(fixed_paths, cfg.channel);
        fixed_denom = fixed_clean.mean_matrix_power();
        for (arma::uword mi = 0; mi < n_models; ++mi)
            fixed_truth[mi] = true_structural(fixed_paths, cfg.channel, cfg.models[mi]);
    }

    std::vector<TrialResult> slots(cfg.n_trials);

    auto run_trial = [&](arma::uword trial) {
        TrialResult tr;
        tr.cells.resize(n_snrs * n_models);
        try
        {
            PathSet paths;
            const ChannelTensor *clean = nullptr;
            ChannelTensor own_clean;
            double denom;
            std::vector<StructuralEstimate> truth(n_models);
            if (cfg.scenario == 1)
            {
                paths = fixed_paths;
                clean = &fixed_clean;
                denom = fixed_denom;
                truth = fixed_truth;
            }
            else
            {
                RngStream path_rng(derive_seed(cfg.rng_seed, 0x70617468, trial), 0);
                paths = scenario_two_paths(cfg.channel, cfg.n_paths, path_rng);
                own_clean = sample_grid(paths, cfg.channel);
                clean = &own_clean;
                denom = own_clean.mean_matrix_power();
                for (arma::uword mi = 0; mi < n_models; ++mi)
                    truth[mi] = true_structural(paths, cfg.channel, cfg.models[mi]);
            }
            tr.generated = true;

            // truth at the prediction points, shared by all models
            std::vector<arma::cx_mat> truth_h(n_horizons * k_len);
            for (arma::uword h = 0; h < n_horizons; ++h)
                for (arma::uword k = 0; k < k_len; ++k)
                    truth_h[h * k_len + k] =
                        channel_response(paths, cfg.channel, q_pred[h], k_pred[k]);

            for (arma::uword si = 0; si < n_snrs; ++si)
            {
                const ChannelTensor noisy =
                    add_noise(*clean, cfg.snr_db_grid[si],
                              derive_seed(cfg.rng_seed, 0x6E6F6973 + si, trial));

                for (arma::uword mi = 0; mi < n_models; ++mi)
                {
                    CellResult &cell = tr.cells[si * n_models + mi];
                    try
                    {
                        FitOptions opts;
                        opts.r = cfg.stacking.r;
                        opts.t = cfg.stacking.t;
                        opts.sigma_reg = cfg.stacking.sigma_reg;
                        opts.z_override = cfg.z_override;
                        opts.z_hint = cfg.n_paths;
                        const ModelEstimate est = fit(noisy, cfg.models[mi], opts);

                        cell.z_hat = est.z_hat;
                        cell.order_ok = (est.z_hat == paths.size());

                        if (cell.order_ok)
                        {
                            const StructuralEstimate &tru = truth[mi];
                            const auto assign = match_paths(tru, est.structural);
                            const arma::uword z_len = tru.size();
                            auto fill = [&](const arma::vec &t_v, const arma::vec &e_v,
                                            arma::vec &out) {
                                if (t_v.n_elem != z_len || e_v.n_elem != z_len)
                                    return;
                                out.set_size(z_len);
                                for (arma::uword z = 0; z < z_len; ++z)
                                    out(z) = (assign[z] == unmatched)
                                                 ? arma::datum::nan
                                                 : wrap_angle(e_v(assign[z]) - t_v(z));
                            };
                            fill(tru.mu_r, est.structural.mu_r, cell.err_mu_r);
                            fill(tru.mu_t, est.structural.mu_t, cell.err_mu_t);
                            fill(tru.gamma, est.structural.gamma, cell.err_gamma);
                            fill(tru.eta, est.structural.eta, cell.err_eta);
                        }

                        PredictionRequest req;
                        req.q_indices = q_pred;
                        req.k_indices = k_pred;
                        const PredictionGrid pred = predict(est, req, cfg.channel);
                        cell.nse_per_horizon.resize(n_horizons);
                        for (arma::uword h = 0; h < n_horizons; ++h)
                        {
                            double acc = 0.0;
                            for (arma::uword k = 0; k < k_len; ++k)
                                acc += nse_value(pred.sample(h, k), truth_h[h * k_len + k], denom);
                            cell.nse_per_horizon[h] = acc / static_cast<double>(k_len);
                        }
                        cell.ok = true;
                    }
                    catch (const std::exception &e)
                    {
                        cell.ok = false;
                        cell.error = e.what();
                    }
                }
            }
        }
        catch (const std::exception &e)
        {
            tr.generated = false;
            tr.error = e.what();
        }
        slots[trial] = std::move(tr);
    };

    if (cfg.n_threads <= 1 || cfg.n_trials <= 1)
    {
        for (arma::uword trial = 0; trial < cfg.n_trials; ++trial)
            run_trial(trial);
    }
    else
    {
        std::atomic<arma::uword> next{0};
        const arma::uword n_workers = std::min<arma::uword>(cfg.n_threads, cfg.n_trials);
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (arma::uword w = 0; w < n_workers; ++w)
            pool.emplace_back([&] {
                for (;;)
                {
                    const arma::uword trial = next.fetch_add(1);
                    if (trial >= cfg.n_trials)
                        return;
                    run_trial(trial);
                }
            });
        for (auto &th : pool)
            th.join();
    }

    // ---- reduction, in deterministic (model, snr, horizon) order ----------
    ResultTable table;
    for (arma::uword mi = 0; mi < n_models; ++mi)
    {
        const std::string model_name = to_string(cfg.models[mi]);
        for (arma::uword si = 0; si < n_snrs; ++si)
        {
            const double snr = cfg.snr_db_grid[si];
            arma::uword n_ok = 0, n_order_ok = 0;
            std::vector<std::vector<double>> nse_h(n_horizons);
            std::vector<double> e_mu_r, e_mu_t, e_gamma, e_eta;
            arma::uword n_param_trials = 0;

            for (arma::uword trial = 0; trial < cfg.n_trials; ++trial)
            {
                const TrialResult &tr = slots[trial];
                if (!tr.generated)
                    continue;
                const CellResult &cell = tr.cells[si * n_models + mi];
                if (!cell.ok)
                    continue;
                ++n_ok;
                if (cell.order_ok)
                    ++n_order_ok;
                for (arma::uword h = 0; h < n_horizons; ++h)
                {
                    nse_h[h].push_back(cell.nse_per_horizon[h]);
                    table.nse_samples.push_back({model_name, snr, cfg.horizons_lambda[h], trial,
                                                 cell.nse_per_horizon[h]});
                }
                auto collect = [](const arma::vec &v, std::vector<double> &out) {
                    for (arma::uword z = 0; z < v.n_elem; ++z)
                        if (std::isfinite(v(z)))
                            out.push_back(v(z));
                };
                if (cell.err_gamma.n_elem)
                    ++n_param_trials;
                collect(cell.err_mu_r, e_mu_r);
                collect(cell.err_mu_t, e_mu_t);
                collect(cell.err_gamma, e_gamma);
                collect(cell.err_eta, e_eta);
            }

            const double fail_rate =
                1.0 - static_cast<double>(n_ok) / static_cast<double>(cfg.n_trials);
            table.max_failure_rate = std::max(table.max_failure_rate, fail_rate);
            if (fail_rate > cfg.failure_ceiling)
                table.degraded = true;

            for (arma::uword h = 0; h < n_horizons; ++h)
                if (!nse_h[h].empty())
                    table.rows.push_back({model_name, snr, cfg.horizons_lambda[h], "nmse_db",
                                          linear_to_db(nmse(nse_h[h])), n_ok, cfg.rng_seed});

            auto rmse_of = [](const std::vector<double> &errs) {
                double acc = 0.0;
                for (double e : errs)
                    acc += e * e;
                return std::sqrt(acc / static_cast<double>(errs.size()));
            };
            if (!e_mu_r.empty())
                table.rows.push_back({model_name, snr, 0.0, "rmse_mu_r", rmse_of(e_mu_r),
                                      n_param_trials, cfg.rng_seed});
            if (!e_mu_t.empty())
                table.rows.push_back({model_name, snr, 0.0, "rmse_mu_t", rmse_of(e_mu_t),
                                      n_param_trials, cfg.rng_seed});
            if (!e_gamma.empty())
                table.rows.push_back({model_name, snr, 0.0, "rmse_gamma", rmse_of(e_gamma),
                                      n_param_trials, cfg.rng_seed});
            if (!e_eta.empty())
                table.rows.push_back({model_name, snr, 0.0, "rmse_eta", rmse_of(e_eta),
                                      n_param_trials, cfg.rng_seed});

            table.rows.push_back(
                {model_name, snr, 0.0, "failure_rate", fail_rate, cfg.n_trials, cfg.rng_seed});
            if (!cfg.z_override)
                table.rows.push_back({model_name, snr, 0.0, "order_match_rate",
                                      static_cast<double>(n_order_ok) /
                                          static_cast<double>(cfg.n_trials),
                                      cfg.n_trials, cfg.rng_seed});
        }
    }

    // ---- parameter and prediction bounds (fixed-ray scenario only) --------
    if (cfg.scenario == 1)
    {
        const double entry_power = fixed_clean.mean_entry_power();
        for (arma::uword si = 0; si < n_snrs; ++si)
        {
            const double snr = cfg.snr_db_grid[si];
            if (!std::isfinite(snr))
                continue; // clean sentinel has no bound
            const double sigma2 = entry_power / db_to_linear(snr);
            const FimReport fim = build_fim(fixed_paths, cfg.channel, sigma2);

            auto mean_sqrt_crb = [&](auto idx_of) {
                double acc = 0.0;
                for (arma::uword z = 0; z < fim.n_paths; ++z)
                    acc += fim.crb_diag(idx_of(z));
                return std::sqrt(acc / static_cast<double>(fim.n_paths));
            };
            table.rows.push_back({"bound", snr, 0.0, "crb_sqrt_mu_r",
                                  mean_sqrt_crb([&](arma::uword z) { return fim.idx_mu_r(z); }),
                                  cfg.n_trials, cfg.rng_seed});
            table.rows.push_back({"bound", snr, 0.0, "crb_sqrt_mu_t",
                                  mean_sqrt_crb([&](arma::uword z) { return fim.idx_mu_t(z); }),
                                  cfg.n_trials, cfg.rng_seed});
            table.rows.push_back({"bound", snr, 0.0, "crb_sqrt_gamma",
                                  mean_sqrt_crb([&](arma::uword z) { return fim.idx_gamma(z); }),
                                  cfg.n_trials, cfg.rng_seed});
            table.rows.push_back({"bound", snr, 0.0, "crb_sqrt_eta",
                                  mean_sqrt_crb([&](arma::uword z) { return fim.idx_eta(z); }),
                                  cfg.n_trials, cfg.rng_seed});

            for (arma::uword h = 0; h < n_horizons; ++h)
            {
                double acc = 0.0;
                for (arma::uword k = 0; k < k_len; ++k)
                    acc += prediction_bound(fim, fixed_paths, cfg.channel, q_pred[h], k_pred[k],
                                            fixed_denom)
                               .normalized_trace;
                table.rows.push_back({"bound", snr, cfg.horizons_lambda[h], "pred_bound_nmse_db",
                                      linear_to_db(acc / static_cast<double>(k_len)), cfg.n_trials,
                                      cfg.rng_seed});
            }
        }
    }

    return table;
}

void write_result_csv(const ResultTable &table, std::ostream &out)
{
    out << "model,snr_db,horizon_lambda,metric,value,n_trials,seed\n";
    for (const auto &r : table.rows)
        out << r.model << ',' << fmt17(r.snr_db) << ',' << fmt17(r.horizon_lambda) << ','
            << r.metric << ',' << fmt17(r.value) << ',' << r.n_trials << ',' << r.seed << '\n';
}

void write_nse_samples_csv(const ResultTable &table, std::ostream &out)
{
    out << "model,snr_db,horizon_lambda,trial,nse\n";
    for (const auto &s : table.nse_samples)
        out << s.model << ',' << fmt17(s.snr_db) << ',' << fmt17(s.horizon_lambda) << ','
            << s.trial << ',' << fmt17(s.nse) << '\n';
}

void write_result_json(const ResultTable &table, const ExperimentConfig &cfg, std::ostream &out)
{
    out << "{\n  \"meta\": {\n";
    out << "    \"scenario\": " << cfg.scenario << ",\n";
    out << "    \"seed\": " << cfg.rng_seed << ",\n";
    out << "    \"n_trials\": " << cfg.n_trials << ",\n";
    out << "    \"n_paths\": " << cfg.n_paths << ",\n";
    out << "    \"degraded\": " << (table.degraded ? "true" : "false") << ",\n";
    out << "    \"max_failure_rate\": " << fmt17(table.max_failure_rate) << ",\n";
    out << "    \"models\": [";
    for (std::size_t i = 0; i < cfg.models.size(); ++i)
        out << (i ? ", " : "") << '"' << to_string(cfg.models[i]) << '"';
    out << "],\n    \"snr_db\": [";
    for (std::size_t i = 0; i < cfg.snr_db_grid.size(); ++i)
        out << (i ? ", " : "") << fmt17(cfg.snr_db_grid[i]);
    out << "],\n    \"horizons_lambda\": [";
    for (std::size_t i = 0; i < cfg.horizons_lambda.size(); ++i)
        out << (i ? ", " : "") << fmt17(cfg.horizons_lambda[i]);
    out << "],\n    \"channel\": {\"n_rx\": " << cfg.channel.n_rx
        << ", \"n_tx\": " << cfg.channel.n_tx << ", \"n_time\": " << cfg.channel.n_time
        << ", \"n_freq\": " << cfg.channel.n_freq << "}\n  },\n  \"rows\": [\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i)
    {
        const auto &r = table.rows[i];
        out << "    {\"model\": \"" << r.model << "\", \"snr_db\": " << fmt17(r.snr_db)
            << ", \"horizon_lambda\": " << fmt17(r.horizon_lambda) << ", \"metric\": \""
            << r.metric << "\", \"value\": " << fmt17(r.value) << ", \"n_trials\": " << r.n_trials
            << ", \"seed\": " << r.seed << '}' << (i + 1 < table.rows.size() ? "," : "") << '\n';
    }
    out << "  ]\n}\n";
}

static std::vector<std::string> split_csv_line(const std::string &line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(item);
    return out;
}

ResultTable read_result_csv(std::istream &in)
{
    ResultTable table;
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("result CSV: empty input");
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto f = split_csv_line(line);
        if (f.size() != 7)
            throw ConfigError("result CSV: expected 7 fields, got line: " + line);
        table.rows.push_back({f[0], std::stod(f[1]), std::stod(f[2]), f[3], std::stod(f[4]),
                              static_cast<arma::uword>(std::stoull(f[5])),
                              std::stoull(f[6])});
    }
    return table;
}

void read_nse_samples_csv(std::istream &in, ResultTable &table)
{
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("NSE samples CSV: empty input");
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5)
            throw ConfigError("NSE samples CSV: expected 5 fields, got line: " + line);
        table.nse_samples.push_back({f[0], std::stod(f[1]), std::stod(f[2]),
                                     static_cast<arma::uword>(std::stoull(f[3])),
                                     std::stod(f[4])});
    }
}

void write_report_figures(const ResultTable &table, const std::string &out_dir)
{
    auto open = [&](const std::string &name) {
        std::ofstream f(out_dir + "/" + name);
        if (!f)
            throw ConfigError("report: cannot write " + out_dir + "/" + name);
        return f;
    };

    {
        auto f = open("fig_nmse_vs_horizon.csv");
        f << "model,snr_db,horizon_lambda,nmse_db\n";
        for (const auto &r : table.rows)
            if (r.metric == "nmse_db" || r.metric == "pred_bound_nmse_db")
                f << r.model << ',' << fmt17(r.snr_db) << ',' << fmt17(r.horizon_lambda) << ','
                  << fmt17(r.value) << '\n';
    }
    {
        auto f = open("fig_nmse_vs_snr.csv");
        f << "model,horizon_lambda,snr_db,nmse_db\n";
        for (const auto &r : table.rows)
            if (r.metric == "nmse_db" || r.metric == "pred_bound_nmse_db")
                f << r.model << ',' << fmt17(r.horizon_lambda) << ',' << fmt17(r.snr_db) << ','
                  << fmt17(r.value) << '\n';
    }
    {
        auto f = open("fig_rmse_vs_snr.csv");
        f << "model,snr_db,parameter,value\n";
        for (const auto &r : table.rows)
        {
            std::string param;
            if (r.metric.rfind("rmse_", 0) == 0)
                param = r.metric.substr(5);
            else if (r.metric.rfind("crb_sqrt_", 0) == 0)
                param = r.metric.substr(9);
            else
                continue;
            f << r.model << ',' << fmt17(r.snr_db) << ',' << param << ',' << fmt17(r.value)
              << '\n';
        }
    }
    {
        auto f = open("fig_nse_cdf.csv");
        f << "model,snr_db,horizon_lambda,nse,cum_prob\n";
        // group samples per (model, snr, horizon), sorted within each group
        std::vector<std::size_t> order(table.nse_samples.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto &x = table.nse_samples[a], &y = table.nse_samples[b];
            if (x.model != y.model)
                return x.model < y.model;
            if (x.snr_db != y.snr_db)
                return x.snr_db < y.snr_db;
            if (x.horizon_lambda != y.horizon_lambda)
                return x.horizon_lambda < y.horizon_lambda;
            return x.nse < y.nse;
        });
        std::size_t i = 0;
        while (i < order.size())
        {
            std::size_t j = i;
            const auto &head = table.nse_samples[order[i]];
            while (j < order.size())
            {
                const auto &s = table.nse_samples[order[j]];
                if (s.model != head.model || s.snr_db != head.snr_db ||
                    s.horizon_lambda != head.horizon_lambda)
                    break;
                ++j;
            }
            const double count = static_cast<double>(j - i);
            for (std::size_t p = i; p < j; ++p)
            {
                const auto &s = table.nse_samples[order[p]];
                f << s.model << ',' << fmt17(s.snr_db) << ',' << fmt17(s.horizon_lambda) << ','
                  << fmt17(s.nse) << ',' << fmt17(static_cast<double>(p - i + 1) / count) << '\n';
            }
            i = j;
        }
    }
}

ExperimentConfig experiment_from_kv(const KeyValueFile &kv)
{
    ExperimentConfig cfg;
    cfg.channel = ChannelConfig::from_kv(kv);
    if (kv.has("scenario"))
        cfg.scenario = static_cast<int>(kv.get_int("scenario"));
    if (kv.has("models"))
    {
        cfg.models.clear();
        for (const auto &name : kv.get_string_list("models"))
            cfg.models.push_back(model_from_string(name));
    }
    if (kv.has("snr_db"))
        cfg.snr_db_grid = kv.get_real_list("snr_db");
    if (kv.has("horizons_lambda"))
        cfg.horizons_lambda = kv.get_real_list("horizons_lambda");
    if (kv.has("n_trials"))
        cfg.n_trials = static_cast<arma::uword>(kv.get_int("n_trials"));
    if (kv.has("rng_seed"))
        cfg.rng_seed = static_cast<std::uint64_t>(kv.get_int("rng_seed"));
    if (kv.has("z_override"))
        cfg.z_override = static_cast<arma::uword>(kv.get_int("z_override"));
    if (kv.has("n_paths"))
        cfg.n_paths = static_cast<arma::uword>(kv.get_int("n_paths"));
    if (kv.has("n_threads"))
        cfg.n_threads = static_cast<arma::uword>(kv.get_int("n_threads"));
    if (kv.has("failure_ceiling"))
        cfg.failure_ceiling = kv.get_real("failure_ceiling");
    if (kv.has("r"))
        cfg.stacking.r = static_cast<arma::uword>(kv.get_int("r"));
    if (kv.has("t"))
        cfg.stacking.t = static_cast<arma::uword>(kv.get_int("t"));
    if (kv.has("sigma_reg"))
        cfg.stacking.sigma_reg = kv.get_real("sigma_reg");
    cfg.validate();
    return cfg;
}

} // namespace wimemchap
