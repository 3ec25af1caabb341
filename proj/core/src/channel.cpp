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

#include "wimemchap/channel.hpp"
#include "wimemchap/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace wimemchap
{

void ChannelConfig::validate() const
{
    if (n_rx < 1 || n_tx < 1 || n_time < 1 || n_freq < 1 || n_subcarriers_total < 1)
        throw ConfigError("channel config: all counts must be >= 1");
    if (n_subcarriers_total < n_freq)
        throw ConfigError("channel config: n_subcarriers_total >= n_freq required");
    if (!(carrier_hz > 0.0) || !(bandwidth_hz > 0.0) || !(velocity_mps > 0.0) ||
        !(spatial_rate_per_lambda > 0.0) || !(d_rx_lambda > 0.0) || !(d_tx_lambda > 0.0))
        throw ConfigError("channel config: physical quantities must be > 0");
}

ChannelConfig ChannelConfig::from_kv(const KeyValueFile &kv)
{
    ChannelConfig c;
    auto set_count = [&](const char *key, arma::uword &field) {
        if (kv.has(key))
        {
            long long v = kv.get_int(key);
            if (v < 1)
                throw ConfigError(std::string("channel config: ") + key + " must be >= 1");
            field = static_cast<arma::uword>(v);
        }
    };
    set_count("n_rx", c.n_rx);
    set_count("n_tx", c.n_tx);
    set_count("n_time", c.n_time);
    set_count("n_freq", c.n_freq);
    set_count("n_subcarriers_total", c.n_subcarriers_total);
    if (kv.has("carrier_hz"))
        c.carrier_hz = kv.get_real("carrier_hz");
    if (kv.has("bandwidth_hz"))
        c.bandwidth_hz = kv.get_real("bandwidth_hz");
    if (kv.has("velocity_mps"))
        c.velocity_mps = kv.get_real("velocity_mps");
    if (kv.has("spatial_rate_per_lambda"))
        c.spatial_rate_per_lambda = kv.get_real("spatial_rate_per_lambda");
    if (kv.has("d_rx_lambda"))
        c.d_rx_lambda = kv.get_real("d_rx_lambda");
    if (kv.has("d_tx_lambda"))
        c.d_tx_lambda = kv.get_real("d_tx_lambda");
    c.validate();
    return c;
}

ChannelConfig ChannelConfig::from_file(const std::string &path)
{
    return from_kv(KeyValueFile::parse_file(path));
}

DerivedGrid derive_grid(const ChannelConfig &config)
{
    config.validate();
    DerivedGrid g;
    g.lambda_m = speed_of_light_mps / config.carrier_hz;
    g.dt_s = g.lambda_m / (config.spatial_rate_per_lambda * config.velocity_mps);
    g.df_hz = config.bandwidth_hz / static_cast<double>(config.n_freq);
    return g;
}

void PathSet::validate() const
{
    if (paths.empty())
        throw ContractError("path set: at least one path required");
    for (const auto &p : paths)
    {
        if (p.delay_s < 0.0)
            throw ContractError("path set: delays must be >= 0");
        if (p.aoa_rad < -pi || p.aoa_rad >= pi || p.aod_rad < -pi || p.aod_rad >= pi)
            throw ContractError("path set: angles must lie in [-pi, pi)");
    }
    // Rays must be pairwise distinct in the full parameter 5-tuple.
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = i + 1; j < paths.size(); ++j)
        {
            const Path &a = paths[i], &b = paths[j];
            if (a.beta == b.beta && a.aoa_rad == b.aoa_rad && a.aod_rad == b.aod_rad &&
                a.delay_s == b.delay_s && a.doppler_rad_per_s == b.doppler_rad_per_s)
                throw ContractError("path set: two paths share the full parameter tuple");
        }
}

double mu_rx_of(const Path &p, const ChannelConfig &config)
{
    return 2.0 * pi * config.d_rx_lambda * std::sin(p.aoa_rad);
}

double mu_tx_of(const Path &p, const ChannelConfig &config)
{
    return 2.0 * pi * config.d_tx_lambda * std::sin(p.aod_rad);
}

double gamma_of(const Path &p, const DerivedGrid &grid)
{
    return p.doppler_rad_per_s * grid.dt_s;
}

double eta_of(const Path &p, const DerivedGrid &grid)
{
    return 2.0 * pi * grid.df_hz * p.delay_s;
}

double theta_from_mu(double mu, double d_lambda)
{
    return std::asin(mu / (2.0 * pi * d_lambda));
}

arma::cx_vec steering_vector(double mu_rad, arma::uword n_elem)
{
    if (n_elem < 1)
        throw ContractError("steering_vector: n_elem must be >= 1");
    arma::cx_vec a(n_elem);
    a(0) = 1.0;
    for (arma::uword i = 1; i < n_elem; ++i)
        a(i) = std::polar(1.0, static_cast<double>(i) * mu_rad);
    return a;
}

PathSet scenario_one_paths()
{
    // Fixed urban-macro rays: amplitude, arrival, departure, delay [ns], Doppler [rad/s].
    PathSet ps;
    ps.paths = {
        {{-0.76, 0.074}, 0.49, -2.90, 0e-9, 185.10},
        {{-0.76, 0.30}, -1.89, 0.99, 60e-9, -462.10},
        {{-1.41, 0.14}, -2.48, 2.99, 75e-9, 497.31},
        {{0.16, -1.15}, -1.88, 1.46, 145e-9, -331.90},
        {{0.37, -0.82}, -2.66, 2.05, 150e-9, 208.61},
        {{-0.33, 1.04}, -0.02, -1.60, 155e-9, -156.92},
    };
    return ps;
}

const std::vector<double> &uma_delays_ns()
{
    static const std::vector<double> delays = {0.0, 60.0, 75.0, 145.0, 150.0, 155.0};
    return delays;
}

PathSet scenario_two_paths(const ChannelConfig &config, arma::uword n_paths, RngStream &rng,
                           const std::vector<double> *delays_ns_override)
{
    if (n_paths < 1)
        throw ConfigError("scenario two: n_paths must be >= 1");
    const std::vector<double> &delays = delays_ns_override ? *delays_ns_override : uma_delays_ns();
    if (n_paths > delays.size())
        throw ConfigError("scenario two: " + std::to_string(n_paths) +
                          " paths requested but only " + std::to_string(delays.size()) +
                          " delay entries available (supply a delay list)");

    const DerivedGrid grid = derive_grid(config);
    const double nu_max = 2.0 * pi * config.velocity_mps / grid.lambda_m;

    PathSet ps;
    ps.paths.reserve(n_paths);
    for (arma::uword z = 0; z < n_paths; ++z)
    {
        Path p;
        p.beta = rng.complex_normal();
        p.aoa_rad = rng.uniform(-pi, pi);
        p.aod_rad = rng.uniform(-pi, pi);
        p.delay_s = delays[z] * 1e-9;
        p.doppler_rad_per_s = rng.uniform(-nu_max, nu_max);
        ps.paths.push_back(p);
    }
    return ps;
}

PathSet scenario_two_paths(const ChannelConfig &config, arma::uword n_paths, std::uint64_t rng_seed,
                           const std::vector<double> *delays_ns_override)
{
    RngStream rng(rng_seed, 0);
    return scenario_two_paths(config, n_paths, rng, delays_ns_override);
}

arma::cx_mat channel_response(const PathSet &paths, const ChannelConfig &config,
                              long long q, long long k)
{
    const DerivedGrid grid = derive_grid(config);
    arma::cx_mat h(config.n_rx, config.n_tx, arma::fill::zeros);
    for (const auto &p : paths.paths)
    {
        const arma::cx_vec ar = steering_vector(mu_rx_of(p, config), config.n_rx);
        const arma::cx_vec at = steering_vector(mu_tx_of(p, config), config.n_tx);
        const double phase = static_cast<double>(q) * gamma_of(p, grid) -
                             static_cast<double>(k) * eta_of(p, grid);
        h += (p.beta * std::polar(1.0, phase)) * (ar * at.st());
    }
    return h;
}

double ChannelTensor::mean_entry_power() const
{
    return arma::accu(arma::square(arma::abs(samples))) / static_cast<double>(samples.n_elem);
}

double ChannelTensor::mean_matrix_power() const
{
    // mean over (q,k) of |H(q,k)|_F^2 = mean entry power * N * M
    return mean_entry_power() * static_cast<double>(config.n_rx * config.n_tx);
}

ChannelTensor sample_grid(const PathSet &paths, const ChannelConfig &config)
{
    config.validate();
    paths.validate();
    ChannelTensor t;
    t.config = config;
    t.samples.set_size(config.n_rx, config.n_tx, config.n_time * config.n_freq);
    for (arma::uword q = 0; q < config.n_time; ++q)
        for (arma::uword k = 0; k < config.n_freq; ++k)
            t.samples.slice(q * config.n_freq + k) =
                channel_response(paths, config, static_cast<long long>(q), static_cast<long long>(k));
    t.noise_var = 0.0;
    return t;
}

ChannelTensor add_noise(const ChannelTensor &tensor, double snr_db, std::uint64_t rng_seed)
{
    if (tensor.noise_var != 0.0)
        throw ContractError("add_noise: input tensor already carries noise");
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
        throw ContractError("add_noise: snr_db must be finite or +inf (clean sentinel)");
    if (snr_db == std::numeric_limits<double>::infinity())
        return tensor;

    const double sigma2 = tensor.mean_entry_power() / db_to_linear(snr_db);
    const double amp = std::sqrt(sigma2);

    ChannelTensor out = tensor;
    RngStream rng(rng_seed, 0);
    const arma::uword q_len = tensor.config.n_time, k_len = tensor.config.n_freq;
    for (arma::uword q = 0; q < q_len; ++q)
        for (arma::uword k = 0; k < k_len; ++k)
        {
            arma::cx_mat &slice = out.samples.slice(q * k_len + k);
            for (arma::uword m = 0; m < slice.n_cols; ++m)
                for (arma::uword n = 0; n < slice.n_rows; ++n)
                    slice(n, m) += amp * rng.complex_normal();
        }
    out.noise_var = sigma2;
    return out;
}

PathSet load_paths(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open path file: " + path);
    PathSet ps;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(f, line))
    {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ss(line);
        double re, im, aoa, aod, delay_ns, doppler;
        if (!(ss >> re))
            continue; // blank line
        if (!(ss >> im >> aoa >> aod >> delay_ns >> doppler))
            throw ConfigError("path file line " + std::to_string(line_no) +
                              ": expected 'beta_re beta_im aoa aod delay_ns doppler_rad_s'");
        ps.paths.push_back({{re, im}, aoa, aod, delay_ns * 1e-9, doppler});
    }
    ps.validate();
    return ps;
}

void save_paths(const PathSet &paths, const std::string &path)
{
    std::ofstream f(path);
    if (!f)
        throw ConfigError("cannot open path file for writing: " + path);
    char buf[256];
    for (const auto &p : paths.paths)
    {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g %.17g %.17g\n",
                      p.beta.real(), p.beta.imag(), p.aoa_rad, p.aod_rad,
                      p.delay_s * 1e9, p.doppler_rad_per_s);
        f << buf;
    }
}

} // namespace wimemchap
