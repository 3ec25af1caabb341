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

#ifndef WIMEMCHAP_CHANNEL_HPP
#define WIMEMCHAP_CHANNEL_HPP

#include <armadillo>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "wimemchap/linfix.hpp"

namespace wimemchap
{

// Fixed so derived quantities are bit-stable across builds.
inline constexpr double speed_of_light_mps = 2.998e8;

// Physical and sampling configuration of the simulated MIMO-OFDM link.
struct ChannelConfig
{
    arma::uword n_rx = 2;   // N, receive array elements
    arma::uword n_tx = 2;   // M, transmit array elements
    arma::uword n_time = 50; // Q, temporal snapshots of the response
    arma::uword n_freq = 64; // K, pilot subcarriers sampled across the band
    double carrier_hz = 2.1e9;
    double bandwidth_hz = 20e6;
    arma::uword n_subcarriers_total = 1024;
    double velocity_mps = 50.0 / 3.6; // 50 km/h
    double spatial_rate_per_lambda = 10.0; // channel samples per wavelength travelled
    double d_rx_lambda = 0.5; // element spacing in wavelengths
    double d_tx_lambda = 0.5;

    void validate() const; // throws ConfigError

    static ChannelConfig from_kv(const KeyValueFile &kv);
    static ChannelConfig from_file(const std::string &path);
};

// Sampling intervals implied by the physical configuration.
struct DerivedGrid
{
    double dt_s;     // snapshot period: lambda / (spatial_rate * velocity)
    double df_hz;    // pilot spacing: bandwidth / n_freq
    double lambda_m; // carrier wavelength
};

DerivedGrid derive_grid(const ChannelConfig &config);

// One propagation ray of the double-directional model.
struct Path
{
    std::complex<double> beta; // complex amplitude
    double aoa_rad;            // direction of arrival, in [-pi, pi)
    double aod_rad;            // direction of departure, in [-pi, pi)
    double delay_s;            // >= 0
    double doppler_rad_per_s;
};

struct PathSet
{
    std::vector<Path> paths;

    arma::uword size() const { return static_cast<arma::uword>(paths.size()); }
    void validate() const; // throws ContractError
};

// Spatial frequencies and normalized phase increments of a ray. All parameter
// comparisons happen in this space; the uniform-linear-array theta ambiguity
// (theta vs pi - theta) never enters.
double mu_rx_of(const Path &p, const ChannelConfig &config);    // 2 pi d_r sin(aoa)
double mu_tx_of(const Path &p, const ChannelConfig &config);    // 2 pi d_t sin(aod)
double gamma_of(const Path &p, const DerivedGrid &grid);        // doppler * dt
double eta_of(const Path &p, const DerivedGrid &grid);          // 2 pi df * delay
double theta_from_mu(double mu, double d_lambda);               // valid for |theta| <= pi/2

// Element i carries phase exp(j i mu); the first element is exactly 1.
arma::cx_vec steering_vector(double mu_rad, arma::uword n_elem);

// The six fixed rays of the urban-macro evaluation scenario.
PathSet scenario_one_paths();

// Urban-macro delay profile in nanoseconds; scenario two draws delays from it.
const std::vector<double> &uma_delays_ns();

// Random rays: beta ~ CN(0,1); angles uniform on [-pi, pi); delays taken in
// order from uma_delays_ns() unless a caller list is supplied; Doppler uniform
// on [-2 pi v / lambda, 2 pi v / lambda]. Deterministic under a fixed seed.
PathSet scenario_two_paths(const ChannelConfig &config, arma::uword n_paths, std::uint64_t rng_seed,
                           const std::vector<double> *delays_ns_override = nullptr);
PathSet scenario_two_paths(const ChannelConfig &config, arma::uword n_paths, RngStream &rng,
                           const std::vector<double> *delays_ns_override = nullptr);

// Sampled frequency response and, optionally, the injected estimation noise.
struct ChannelTensor
{
    ChannelConfig config;
    arma::cx_cube samples;  // n_rx x n_tx x (n_time * n_freq)
    double noise_var = 0.0; // per-entry complex noise variance, 0 for clean tensors

    arma::cx_mat sample(arma::uword q, arma::uword k) const
    {
        return samples.slice(q * config.n_freq + k);
    }
    // mean |entry|^2 over the whole grid
    double mean_entry_power() const;
    // mean Frobenius-norm-squared of the per-(q,k) matrices (NSE denominator)
    double mean_matrix_power() const;
};

// N x M response at integer grid position (q, k); indices may lie outside the
// observed grid, which is exactly what prediction evaluates.
arma::cx_mat channel_response(const PathSet &paths, const ChannelConfig &config,
                              long long q, long long k);

// Clean tensor over q = 0..Q-1, k = 0..K-1.
ChannelTensor sample_grid(const PathSet &paths, const ChannelConfig &config);

// Adds i.i.d. circular complex Gaussian noise with per-entry variance
// mean_entry_power / 10^(snr_db/10). snr_db = +inf is the clean sentinel.
ChannelTensor add_noise(const ChannelTensor &tensor, double snr_db, std::uint64_t rng_seed);

// Plain-text path list, one ray per line:
// "beta_re beta_im aoa aod delay_ns doppler_rad_s"
PathSet load_paths(const std::string &path);
void save_paths(const PathSet &paths, const std::string &path);

} // namespace wimemchap

#endif
