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

#include <benchmark/benchmark.h>

#include "wimemchap/crb.hpp"
#include "wimemchap/harness.hpp"
#include "wimemchap/predictor.hpp"

namespace wmc = wimemchap;

namespace
{

wmc::ChannelTensor desk_tensor(double snr_db)
{
    wmc::ChannelConfig cfg;
    cfg.n_time = 30;
    cfg.n_freq = 32;
    const wmc::ChannelTensor clean = wmc::sample_grid(wmc::scenario_one_paths(), cfg);
    return std::isfinite(snr_db) ? wmc::add_noise(clean, snr_db, 1) : clean;
}

void bm_sample_grid(benchmark::State &state)
{
    wmc::ChannelConfig cfg;
    cfg.n_time = 30;
    cfg.n_freq = 32;
    const wmc::PathSet ps = wmc::scenario_one_paths();
    for (auto _ : state)
    {
        auto t = wmc::sample_grid(ps, cfg);
        benchmark::DoNotOptimize(t.samples.memptr());
    }
}
BENCHMARK(bm_sample_grid);

void bm_build_stacked(benchmark::State &state)
{
    const wmc::ChannelTensor t = desk_tensor(15.0);
    const auto model = static_cast<wmc::Model>(state.range(0));
    for (auto _ : state)
    {
        auto sd = wmc::build_stacked(t, model, 15, 16);
        benchmark::DoNotOptimize(sd.matrix.memptr());
    }
}
BENCHMARK(bm_build_stacked)->Arg(0)->Arg(1)->Arg(2);

void bm_subspace(benchmark::State &state)
{
    const wmc::ChannelTensor t = desk_tensor(15.0);
    const auto model = static_cast<wmc::Model>(state.range(0));
    const wmc::StackedData sd = wmc::build_stacked(t, model, 15, 16);
    for (auto _ : state)
    {
        auto sp = wmc::analyze_stacked(sd);
        auto split = wmc::split_from_spectrum(sd, sp, 6);
        benchmark::DoNotOptimize(split.signal_basis.memptr());
    }
}
BENCHMARK(bm_subspace)->Arg(0)->Arg(1)->Arg(2);

void bm_fit(benchmark::State &state)
{
    const wmc::ChannelTensor t = desk_tensor(15.0);
    const auto model = static_cast<wmc::Model>(state.range(0));
    wmc::FitOptions opts;
    opts.z_override = 6;
    for (auto _ : state)
    {
        auto est = wmc::fit(t, model, opts);
        benchmark::DoNotOptimize(est.z_hat);
    }
}
BENCHMARK(bm_fit)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void bm_predict(benchmark::State &state)
{
    const wmc::ChannelTensor t = desk_tensor(15.0);
    wmc::FitOptions opts;
    opts.z_override = 6;
    const wmc::ModelEstimate est = wmc::fit(t, wmc::Model::dod_doa, opts);
    wmc::PredictionRequest req;
    req.q_indices = {39};
    for (arma::uword k = 0; k < 32; ++k)
        req.k_indices.push_back(k);
    for (auto _ : state)
    {
        auto grid = wmc::predict(est, req, t.config);
        benchmark::DoNotOptimize(grid.samples.memptr());
    }
}
BENCHMARK(bm_predict);

void bm_build_fim(benchmark::State &state)
{
    wmc::ChannelConfig cfg;
    cfg.n_time = 30;
    cfg.n_freq = 32;
    const wmc::PathSet ps = wmc::scenario_one_paths();
    for (auto _ : state)
    {
        auto rep = wmc::build_fim(ps, cfg, 0.05);
        benchmark::DoNotOptimize(rep.crb_diag.memptr());
    }
}
BENCHMARK(bm_build_fim);

void bm_prediction_bound(benchmark::State &state)
{
    wmc::ChannelConfig cfg;
    cfg.n_time = 30;
    cfg.n_freq = 32;
    const wmc::PathSet ps = wmc::scenario_one_paths();
    const wmc::FimReport rep = wmc::build_fim(ps, cfg, 0.05);
    const double power = wmc::mean_grid_power(ps, cfg);
    for (auto _ : state)
    {
        auto pb = wmc::prediction_bound(rep, ps, cfg, 39, 0, power);
        benchmark::DoNotOptimize(pb.normalized_trace);
    }
}
BENCHMARK(bm_prediction_bound);

} // namespace

BENCHMARK_MAIN();
