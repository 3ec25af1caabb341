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

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "wimemchap/channel.hpp"
#include "wimemchap/error.hpp"

using namespace wimemchap;
using arma::cx_double;

TEST_CASE("derive_grid matches the evaluation setup", "[channel]")
{
    ChannelConfig cfg; // defaults carry the evaluation configuration
    const DerivedGrid g = derive_grid(cfg);
    // hand-derived: lambda = c / f_c, dt = lambda / (rate * v), df = B / K
    CHECK(g.lambda_m == Catch::Approx(2.998e8 / 2.1e9).epsilon(1e-12));
    CHECK(g.lambda_m == Catch::Approx(0.14276).epsilon(1e-4));
    CHECK(g.dt_s == Catch::Approx(g.lambda_m / (10.0 * 50.0 / 3.6)).epsilon(1e-12));
    CHECK(g.dt_s == Catch::Approx(1.0279e-3).epsilon(1e-4));
    CHECK(g.df_hz == Catch::Approx(312.5e3).epsilon(1e-12));

    ChannelConfig faster = cfg;
    faster.velocity_mps *= 2.0;
    const DerivedGrid g2 = derive_grid(faster);
    CHECK(g2.dt_s == Catch::Approx(g.dt_s / 2.0).epsilon(1e-12));
    CHECK(g2.df_hz == g.df_hz);
}

TEST_CASE("steering vectors", "[channel]")
{
    const arma::cx_vec a0 = steering_vector(0.0, 4);
    CHECK(arma::norm(a0 - arma::cx_vec(4, arma::fill::ones)) == 0.0);

    const arma::cx_vec a1 = steering_vector(pi, 2);
    CHECK(std::abs(a1(0) - cx_double(1, 0)) == 0.0);
    CHECK(std::abs(a1(1) - cx_double(-1, 0)) < 1e-15);

    const arma::cx_vec a2 = steering_vector(0.7, 3);
    CHECK(a2(0) == cx_double(1, 0)); // exactly one
    CHECK(std::abs(a2(1) - std::polar(1.0, 0.7)) < 1e-15);
    CHECK(std::abs(a2(2) - std::polar(1.0, 1.4)) < 1e-15);
}

TEST_CASE("fixed scenario rays", "[channel]")
{
    const PathSet ps = scenario_one_paths();
    REQUIRE(ps.size() == 6);
    CHECK(ps.paths[0].beta == cx_double(-0.76, 0.074));
    CHECK(ps.paths[0].aoa_rad == 0.49);
    CHECK(ps.paths[0].aod_rad == -2.90);
    CHECK(ps.paths[0].delay_s == 0.0);
    CHECK(ps.paths[0].doppler_rad_per_s == 185.10);
    CHECK(ps.paths[5].beta == cx_double(-0.33, 1.04));
    CHECK(ps.paths[5].aoa_rad == -0.02);
    CHECK(ps.paths[5].aod_rad == -1.60);
    CHECK(ps.paths[5].delay_s == Catch::Approx(155e-9));
    CHECK(ps.paths[5].doppler_rad_per_s == -156.92);
    CHECK_NOTHROW(ps.validate());
}

TEST_CASE("random scenario determinism and ranges", "[channel]")
{
    ChannelConfig cfg;
    const PathSet a = scenario_two_paths(cfg, 6, 42);
    const PathSet b = scenario_two_paths(cfg, 6, 42);
    REQUIRE(a.size() == 6);
    for (arma::uword z = 0; z < 6; ++z)
    {
        CHECK(a.paths[z].beta == b.paths[z].beta);
        CHECK(a.paths[z].aoa_rad == b.paths[z].aoa_rad);
        CHECK(a.paths[z].doppler_rad_per_s == b.paths[z].doppler_rad_per_s);
    }

    const PathSet c = scenario_two_paths(cfg, 3, 1);
    CHECK(c.paths[0].delay_s == 0.0);
    CHECK(c.paths[1].delay_s == Catch::Approx(60e-9));
    CHECK(c.paths[2].delay_s == Catch::Approx(75e-9));

    CHECK_THROWS_AS(scenario_two_paths(cfg, 7, 1), ConfigError);
    const std::vector<double> more = {0, 10, 20, 30, 40, 50, 60, 70};
    CHECK_NOTHROW(scenario_two_paths(cfg, 8, 1, &more));

    const DerivedGrid g = derive_grid(cfg);
    const double nu_max = 2.0 * pi * cfg.velocity_mps / g.lambda_m;
    for (int seed = 0; seed < 50; ++seed)
        for (const Path &p : scenario_two_paths(cfg, 6, seed).paths)
        {
            CHECK(std::abs(p.doppler_rad_per_s) <= nu_max);
            CHECK(p.aoa_rad >= -pi);
            CHECK(p.aoa_rad < pi);
        }
}

TEST_CASE("random scenario amplitude statistics", "[channel]")
{
    ChannelConfig cfg;
    double sum_re = 0, sum_im = 0, sum_sq = 0;
    const int n = 10000;
    RngStream rng(314, 0);
    for (int i = 0; i < n / 6 + 1; ++i)
        for (const Path &p : scenario_two_paths(cfg, 6, rng).paths)
        {
            sum_re += p.beta.real();
            sum_im += p.beta.imag();
            sum_sq += std::norm(p.beta);
        }
    const double count = 6.0 * (n / 6 + 1);
    CHECK(std::abs(sum_re / count) < 0.05);
    CHECK(std::abs(sum_im / count) < 0.05);
    CHECK(std::abs(sum_sq / count - 1.0) < 0.1);
}

TEST_CASE("channel_response zero-phase and time-shift cases", "[channel]")
{
    ChannelConfig cfg;
    PathSet single;
    single.paths = {{cx_double(1, 0), 0.0, 0.0, 0.0, 185.10}};
    const arma::cx_mat h0 = channel_response(single, cfg, 0, 0);
    CHECK(arma::norm(h0 - arma::cx_mat(2, 2, arma::fill::ones), "fro") < 1e-14);

    // advancing q by one multiplies every entry by exp(j doppler dt)
    const DerivedGrid g = derive_grid(cfg);
    const cx_double factor = std::polar(1.0, 185.10 * g.dt_s);
    CHECK(std::abs(185.10 * g.dt_s - 0.19026) < 1e-4);
    const arma::cx_mat h1 = channel_response(single, cfg, 1, 0);
    CHECK(arma::norm(h1 - factor * h0, "fro") < 1e-12);
}

TEST_CASE("channel_response equals a scalar-loop oracle", "[channel]")
{
    ChannelConfig cfg;
    const PathSet ps = scenario_one_paths();
    const DerivedGrid g = derive_grid(cfg);
    RngStream rng(5, 0);
    for (int rep = 0; rep < 10; ++rep)
    {
        const long long q = static_cast<long long>(rng.uniform(-20, 80));
        const long long k = static_cast<long long>(rng.uniform(-10, 70));
        const arma::cx_mat h = channel_response(ps, cfg, q, k);
        for (arma::uword n = 0; n < cfg.n_rx; ++n)
            for (arma::uword m = 0; m < cfg.n_tx; ++m)
            {
                cx_double acc = 0.0;
                for (const Path &p : ps.paths)
                {
                    const double mu_r = 2.0 * pi * cfg.d_rx_lambda * std::sin(p.aoa_rad);
                    const double mu_t = 2.0 * pi * cfg.d_tx_lambda * std::sin(p.aod_rad);
                    acc += p.beta *
                           std::polar(1.0, n * mu_r + m * mu_t +
                                               q * p.doppler_rad_per_s * g.dt_s -
                                               k * 2.0 * pi * g.df_hz * p.delay_s);
                }
                CHECK(std::abs(h(n, m) - acc) < 1e-12 * std::max(1.0, std::abs(acc)));
            }
    }
}

TEST_CASE("channel_response is linear in the path set", "[channel]")
{
    ChannelConfig cfg;
    const PathSet all = scenario_one_paths();
    PathSet first3, last3;
    first3.paths.assign(all.paths.begin(), all.paths.begin() + 3);
    last3.paths.assign(all.paths.begin() + 3, all.paths.end());
    const arma::cx_mat sum =
        channel_response(first3, cfg, 7, 9) + channel_response(last3, cfg, 7, 9);
    CHECK(arma::norm(channel_response(all, cfg, 7, 9) - sum, "fro") < 1e-12);
}

TEST_CASE("mu conversion round trip", "[channel]")
{
    ChannelConfig cfg;
    RngStream rng(77, 0);
    for (int i = 0; i < 100; ++i)
    {
        Path p;
        p.aoa_rad = rng.uniform(-pi / 2, pi / 2);
        const double mu = 2.0 * pi * cfg.d_rx_lambda * std::sin(p.aoa_rad);
        CHECK(std::abs(theta_from_mu(mu, cfg.d_rx_lambda) - p.aoa_rad) < 1e-12);
    }
}

TEST_CASE("sample_grid definitional checks", "[channel]")
{
    ChannelConfig cfg;
    cfg.n_time = 1;
    cfg.n_freq = 1;
    const PathSet ps = scenario_one_paths();
    const ChannelTensor t1 = sample_grid(ps, cfg);
    CHECK(arma::norm(t1.sample(0, 0) - channel_response(ps, cfg, 0, 0), "fro") == 0.0);

    cfg.n_time = 5;
    cfg.n_freq = 4;
    const ChannelTensor t = sample_grid(ps, cfg);
    for (arma::uword q = 0; q < 5; ++q)
        for (arma::uword k = 0; k < 4; ++k)
            CHECK(arma::norm(t.sample(q, k) - channel_response(ps, cfg, q, k), "fro") == 0.0);
    CHECK(t.noise_var == 0.0);
}

TEST_CASE("add_noise sentinel, statistics, determinism", "[channel]")
{
    ChannelConfig cfg; // 50 x 64 grid
    const ChannelTensor clean = sample_grid(scenario_one_paths(), cfg);

    const ChannelTensor same = add_noise(clean, std::numeric_limits<double>::infinity(), 1);
    CHECK(same.noise_var == 0.0);
    CHECK(arma::norm(arma::vectorise(same.samples - clean.samples)) == 0.0);

    const ChannelTensor noisy = add_noise(clean, 0.0, 99);
    const double p_clean = clean.mean_entry_power();
    CHECK(noisy.noise_var == Catch::Approx(p_clean)); // 0 dB
    const double measured =
        arma::accu(arma::square(arma::abs(noisy.samples - clean.samples))) /
        static_cast<double>(clean.samples.n_elem);
    CHECK(measured == Catch::Approx(p_clean).epsilon(0.05));

    const ChannelTensor noisy2 = add_noise(clean, 0.0, 99);
    CHECK(arma::norm(arma::vectorise(noisy2.samples - noisy.samples)) == 0.0);

    CHECK_THROWS_AS(add_noise(clean, std::nan(""), 1), ContractError);
    CHECK_THROWS_AS(add_noise(clean, -std::numeric_limits<double>::infinity(), 1), ContractError);
    CHECK_THROWS_AS(add_noise(noisy, 10.0, 1), ContractError);
}

TEST_CASE("path and config files round trip", "[channel]")
{
    const std::string path = "test_paths_tmp.txt";
    const PathSet ps = scenario_one_paths();
    save_paths(ps, path);
    const PathSet loaded = load_paths(path);
    REQUIRE(loaded.size() == ps.size());
    for (arma::uword z = 0; z < ps.size(); ++z)
    {
        CHECK(loaded.paths[z].beta == ps.paths[z].beta);
        CHECK(loaded.paths[z].aoa_rad == ps.paths[z].aoa_rad);
        CHECK(loaded.paths[z].delay_s == Catch::Approx(ps.paths[z].delay_s).margin(1e-18));
        CHECK(loaded.paths[z].doppler_rad_per_s == ps.paths[z].doppler_rad_per_s);
    }
    std::remove(path.c_str());

    const std::string cfg_path = "test_cfg_tmp.txt";
    {
        std::ofstream f(cfg_path);
        f << "n_rx = 4\nn_tx = 3\nn_time = 12\nn_freq = 8\ncarrier_hz = 2.6e9\n";
    }
    const ChannelConfig cfg = ChannelConfig::from_file(cfg_path);
    CHECK(cfg.n_rx == 4);
    CHECK(cfg.n_tx == 3);
    CHECK(cfg.n_time == 12);
    CHECK(cfg.carrier_hz == 2.6e9);
    CHECK(cfg.bandwidth_hz == 20e6); // untouched default
    std::remove(cfg_path.c_str());

    CHECK_THROWS_AS(load_paths("definitely_missing_file.txt"), ConfigError);
}

TEST_CASE("config validation", "[channel]")
{
    ChannelConfig cfg;
    cfg.n_freq = 2000; // exceeds total subcarriers
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = ChannelConfig{};
    cfg.carrier_hz = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
