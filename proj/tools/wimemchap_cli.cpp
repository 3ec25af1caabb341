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
//
// Command line harness. Subcommands:
//   simulate    emit a (optionally noisy) sampled channel tensor as CSV
//   fit         run one model fit and print the parameter estimate
//   bound       emit parameter-variance and prediction-error bound tables
//   experiment  full Monte Carlo run, results as CSV + JSON + NSE samples
//   report      regroup experiment results into per-figure CSV files
//
// Exit codes: 0 success, 2 configuration error, 3 run degraded beyond the
// failure ceiling.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "wimemchap/error.hpp"
#include "wimemchap/harness.hpp"

namespace wmc = wimemchap;

namespace
{

struct CommonArgs
{
    std::string config_path;
    int scenario = 1;
    std::string model = "all";
    std::vector<double> snr_db;
    std::vector<double> horizons;
    long long trials = -1;
    long long seed = -1;
    long long z_override = -1;
    long long n_paths = -1;
    std::string out;
    long long threads = -1;
    std::string profile;
    std::string paths_file;
    long long r = -1, t = -1;
};

void add_common(CLI::App *cmd, CommonArgs &a)
{
    cmd->add_option("--config", a.config_path, "key = value config file");
    cmd->add_option("--scenario", a.scenario, "1: fixed rays, 2: redrawn per trial")
        ->check(CLI::IsMember({1, 2}));
    cmd->add_option("--model", a.model, "doddoa, tssm, mssm or all");
    cmd->add_option("--snr", a.snr_db, "SNR grid in dB")->delimiter(',');
    cmd->add_option("--horizon-lambda", a.horizons, "prediction horizons in wavelengths")
        ->delimiter(',');
    cmd->add_option("--trials", a.trials, "Monte Carlo realizations");
    cmd->add_option("--seed", a.seed, "root RNG seed");
    cmd->add_option("--z", a.z_override, "fixed model order (bypasses order selection)");
    cmd->add_option("--paths", a.n_paths, "scenario-two ray count");
    cmd->add_option("--out", a.out, "output file or directory");
    cmd->add_option("--threads", a.threads, "worker threads for trials");
    cmd->add_option("--profile", a.profile, "desk (Q=30,K=32) or paper (Q=50,K=64,R=10,T=8)")
        ->check(CLI::IsMember({"desk", "paper"}));
    cmd->add_option("--paths-file", a.paths_file, "explicit ray list file");
    cmd->add_option("--r", a.r, "time window width R");
    cmd->add_option("--t", a.t, "frequency window width T");
}

void apply_profile(wmc::ExperimentConfig &cfg, const std::string &profile)
{
    if (profile == "desk")
    {
        cfg.channel.n_time = 30;
        cfg.channel.n_freq = 32;
        cfg.n_trials = 100;
        cfg.stacking.r = 0; // ceil(Q/2), ceil(K/2)
        cfg.stacking.t = 0;
    }
    else if (profile == "paper")
    {
        cfg.channel.n_time = 50;
        cfg.channel.n_freq = 64;
        cfg.n_trials = 500;
        // full-size windows make the covariance eigenproblem impractically
        // large at this grid; narrow windows keep it tractable
        cfg.stacking.r = 10;
        cfg.stacking.t = 8;
    }
}

wmc::ExperimentConfig build_config(const CommonArgs &a)
{
    wmc::ExperimentConfig cfg;
    if (!a.config_path.empty())
        cfg = wmc::experiment_from_kv(wmc::KeyValueFile::parse_file(a.config_path));
    if (!a.profile.empty())
        apply_profile(cfg, a.profile);
    cfg.scenario = a.scenario;
    if (a.model != "all")
        cfg.models = {wmc::model_from_string(a.model)};
    if (!a.snr_db.empty())
        cfg.snr_db_grid = a.snr_db;
    if (!a.horizons.empty())
        cfg.horizons_lambda = a.horizons;
    if (a.trials >= 0)
        cfg.n_trials = static_cast<arma::uword>(a.trials);
    if (a.seed >= 0)
        cfg.rng_seed = static_cast<std::uint64_t>(a.seed);
    if (a.z_override > 0)
        cfg.z_override = static_cast<arma::uword>(a.z_override);
    if (a.n_paths > 0)
        cfg.n_paths = static_cast<arma::uword>(a.n_paths);
    if (a.threads > 0)
        cfg.n_threads = static_cast<arma::uword>(a.threads);
    if (a.r > 0)
        cfg.stacking.r = static_cast<arma::uword>(a.r);
    if (a.t > 0)
        cfg.stacking.t = static_cast<arma::uword>(a.t);
    cfg.validate();
    return cfg;
}

wmc::PathSet paths_for(const CommonArgs &a, const wmc::ExperimentConfig &cfg)
{
    if (!a.paths_file.empty())
        return wmc::load_paths(a.paths_file);
    if (cfg.scenario == 1)
        return wmc::scenario_one_paths();
    return wmc::scenario_two_paths(cfg.channel, cfg.n_paths,
                                   wmc::derive_seed(cfg.rng_seed, 0x70617468, 0));
}

std::string fmt17(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

int cmd_simulate(const CommonArgs &a)
{
    const wmc::ExperimentConfig cfg = build_config(a);
    const wmc::PathSet paths = paths_for(a, cfg);
    wmc::ChannelTensor tensor = wmc::sample_grid(paths, cfg.channel);
    const double snr = cfg.snr_db_grid.front();
    if (std::isfinite(snr))
        tensor = wmc::add_noise(tensor, snr, wmc::derive_seed(cfg.rng_seed, 0x6E6F6973, 0));

    std::ostream *out = &std::cout;
    std::ofstream file;
    if (!a.out.empty())
    {
        file.open(a.out);
        if (!file)
            throw wmc::ConfigError("cannot open output file: " + a.out);
        out = &file;
    }
    *out << "q,k,n,m,re,im\n";
    for (arma::uword q = 0; q < cfg.channel.n_time; ++q)
        for (arma::uword k = 0; k < cfg.channel.n_freq; ++k)
        {
            const arma::cx_mat h = tensor.sample(q, k);
            for (arma::uword m = 0; m < h.n_cols; ++m)
                for (arma::uword n = 0; n < h.n_rows; ++n)
                    *out << q << ',' << k << ',' << n << ',' << m << ',' << fmt17(h(n, m).real())
                         << ',' << fmt17(h(n, m).imag()) << '\n';
        }
    std::cerr << "noise_var = " << fmt17(tensor.noise_var) << "\n";
    return 0;
}

void print_estimate(const wmc::ModelEstimate &est)
{
    std::cout << "model: " << wmc::to_string(est.model) << "\n";
    std::cout << "z_hat: " << est.z_hat
              << (est.diagnostics.order_overridden ? " (override)" : " (estimated)") << "\n";
    std::cout << "pairing_condition: " << fmt17(est.diagnostics.pairing_condition) << "\n";
    std::cout << "noise_var_hat: " << fmt17(est.diagnostics.noise_var_hat) << "\n";
    for (arma::uword z = 0; z < est.z_hat; ++z)
    {
        std::cout << "path " << z + 1 << ":";
        if (est.structural.mu_r.n_elem)
            std::cout << " mu_r=" << fmt17(est.structural.mu_r(z));
        if (est.structural.mu_t.n_elem)
            std::cout << " mu_t=" << fmt17(est.structural.mu_t(z));
        std::cout << " gamma=" << fmt17(est.structural.gamma(z))
                  << " eta=" << fmt17(est.structural.eta(z));
        switch (est.model)
        {
        case wmc::Model::dod_doa:
            std::cout << " beta=" << fmt17(est.amplitudes.betas(z).real()) << (est.amplitudes.betas(z).imag() < 0 ? "" : "+")
                      << fmt17(est.amplitudes.betas(z).imag()) << "j";
            break;
        case wmc::Model::tss:
            std::cout << " |s|=" << fmt17(arma::norm(est.amplitudes.tss[z]));
            break;
        case wmc::Model::mss:
            std::cout << " |S|_F=" << fmt17(arma::norm(est.amplitudes.mss[z], "fro"));
            break;
        }
        std::cout << "\n";
    }
}

int cmd_fit(const CommonArgs &a)
{
    wmc::ExperimentConfig cfg = build_config(a);
    const wmc::PathSet paths = paths_for(a, cfg);
    wmc::ChannelTensor tensor = wmc::sample_grid(paths, cfg.channel);
    const double snr = cfg.snr_db_grid.front();
    if (std::isfinite(snr))
        tensor = wmc::add_noise(tensor, snr, wmc::derive_seed(cfg.rng_seed, 0x6E6F6973, 0));

    wmc::FitOptions opts;
    opts.r = cfg.stacking.r;
    opts.t = cfg.stacking.t;
    opts.sigma_reg = cfg.stacking.sigma_reg;
    opts.z_override = cfg.z_override;
    opts.z_hint = cfg.n_paths;

    for (wmc::Model model : cfg.models)
    {
        print_estimate(wmc::fit(tensor, model, opts));
        std::cout << "\n";
    }
    return 0;
}

int cmd_bound(const CommonArgs &a)
{
    const wmc::ExperimentConfig cfg = build_config(a);
    const wmc::PathSet paths = paths_for(a, cfg);
    const wmc::ChannelTensor clean = wmc::sample_grid(paths, cfg.channel);
    const double entry_power = clean.mean_entry_power();
    const double denom = clean.mean_matrix_power();

    const std::string dir = a.out.empty() ? "." : a.out;
    std::filesystem::create_directories(dir);
    std::ofstream crb_file(dir + "/crb_params.csv");
    std::ofstream pred_file(dir + "/pred_bound.csv");
    if (!crb_file || !pred_file)
        throw wmc::ConfigError("cannot write bound tables under: " + dir);

    crb_file << "snr_db,parameter,path,sqrt_crb\n";
    pred_file << "snr_db,horizon_lambda,pred_bound_nmse_db\n";

    for (double snr : cfg.snr_db_grid)
    {
        if (!std::isfinite(snr))
            continue;
        const double sigma2 = entry_power / wmc::db_to_linear(snr);
        const wmc::FimReport fim = wmc::build_fim(paths, cfg.channel, sigma2);
        for (arma::uword z = 0; z < fim.n_paths; ++z)
        {
            crb_file << fmt17(snr) << ",mu_r," << z + 1 << ','
                     << fmt17(std::sqrt(fim.crb_diag(fim.idx_mu_r(z)))) << '\n';
            crb_file << fmt17(snr) << ",mu_t," << z + 1 << ','
                     << fmt17(std::sqrt(fim.crb_diag(fim.idx_mu_t(z)))) << '\n';
            crb_file << fmt17(snr) << ",gamma," << z + 1 << ','
                     << fmt17(std::sqrt(fim.crb_diag(fim.idx_gamma(z)))) << '\n';
            crb_file << fmt17(snr) << ",eta," << z + 1 << ','
                     << fmt17(std::sqrt(fim.crb_diag(fim.idx_eta(z)))) << '\n';
        }
        for (double h : cfg.horizons_lambda)
        {
            const long long q = static_cast<long long>(cfg.channel.n_time) - 1 +
                                std::llround(h * cfg.channel.spatial_rate_per_lambda);
            double acc = 0.0;
            for (arma::uword k = 0; k < cfg.channel.n_freq; ++k)
                acc +=
                    wmc::prediction_bound(fim, paths, cfg.channel, q, k, denom).normalized_trace;
            pred_file << fmt17(snr) << ',' << fmt17(h) << ','
                      << fmt17(wmc::linear_to_db(acc / cfg.channel.n_freq)) << '\n';
        }
    }
    std::cout << "bound tables written to " << dir << "\n";
    return 0;
}

int cmd_experiment(const CommonArgs &a)
{
    const wmc::ExperimentConfig cfg = build_config(a);
    const wmc::ResultTable table = wmc::run_experiment(cfg);

    const std::string dir = a.out.empty() ? "." : a.out;
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir + "/results.csv");
        wmc::write_result_csv(table, f);
    }
    {
        std::ofstream f(dir + "/results.json");
        wmc::write_result_json(table, cfg, f);
    }
    {
        std::ofstream f(dir + "/nse_samples.csv");
        wmc::write_nse_samples_csv(table, f);
    }
    std::cout << "results written to " << dir << (table.degraded ? " (DEGRADED)" : "") << "\n";
    if (table.degraded)
    {
        std::cerr << "run degraded: failure rate " << fmt17(table.max_failure_rate)
                  << " exceeded ceiling " << fmt17(cfg.failure_ceiling) << "\n";
        return 3;
    }
    return 0;
}

int cmd_report(const std::string &in_dir, const std::string &out_dir)
{
    std::ifstream rf(in_dir + "/results.csv");
    if (!rf)
        throw wmc::ConfigError("report: cannot open " + in_dir + "/results.csv");
    wmc::ResultTable table = wmc::read_result_csv(rf);
    std::ifstream sf(in_dir + "/nse_samples.csv");
    if (sf)
        wmc::read_nse_samples_csv(sf, table);

    const std::string dir = out_dir.empty() ? in_dir : out_dir;
    std::filesystem::create_directories(dir);
    wmc::write_report_figures(table, dir);
    std::cout << "figure tables written to " << dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    // Our own worker pool carries the parallelism; a fixed single-threaded
    // BLAS keeps results identical across pool widths.
    setenv("OPENBLAS_NUM_THREADS", "1", 0);
    setenv("OMP_NUM_THREADS", "1", 0);

    CLI::App app{"parametric wideband MIMO channel prediction harness"};
    app.require_subcommand(1);

    CommonArgs sim_args, fit_args, bound_args, exp_args;
    std::string report_in = ".", report_out;

    add_common(app.add_subcommand("simulate", "emit a sampled channel tensor"), sim_args);
    add_common(app.add_subcommand("fit", "single fit, print the estimate"), fit_args);
    add_common(app.add_subcommand("bound", "emit parameter/prediction bound tables"), bound_args);
    add_common(app.add_subcommand("experiment", "full Monte Carlo run"), exp_args);
    auto *report = app.add_subcommand("report", "regroup results into per-figure CSVs");
    report->add_option("--in", report_in, "directory holding results.csv");
    report->add_option("--out", report_out, "output directory (defaults to --in)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 2;
    }

    try
    {
        if (app.got_subcommand("simulate"))
            return cmd_simulate(sim_args);
        if (app.got_subcommand("fit"))
            return cmd_fit(fit_args);
        if (app.got_subcommand("bound"))
            return cmd_bound(bound_args);
        if (app.got_subcommand("experiment"))
            return cmd_experiment(exp_args);
        if (app.got_subcommand("report"))
            return cmd_report(report_in, report_out);
    }
    catch (const wmc::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
