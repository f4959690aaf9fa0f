// SPDX-License-Identifier: Apache-2.0
//
// beammis - beam misalignment analytics for mmWave NR analog beamforming
// Copyright (C) 2026 The beammis authors
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

#include <catch_amalgamated.hpp>

#include "beammis/montecarlo_sim.hpp"

#include <cmath>
#include <set>
#include <vector>

using namespace beammis;
using Catch::Approx;

namespace {

// tau_sweep = tau_ss * n_sets at numerology 3 (112 symbols per ms).
SweepTiming timing_of(int tau_ss_ms, std::int64_t n_sets, Symbols residual_symbols) {
    SweepTiming t;
    t.tau_ss_ms = tau_ss_ms;
    t.n_sweep_sets = n_sets;
    t.n_complete_sets = n_sets - 1;
    t.sweep_symbols_c = (n_sets - 1) * tau_ss_ms * 112;
    t.sweep_symbols_r = residual_symbols;
    return t;
}

}  // namespace

TEST_CASE("seed derivation separates streams", "[montecarlo_sim]")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t rep = 0; rep < 16; ++rep) {
        for (std::uint64_t stream = 0; stream < 32; ++stream) seen.insert(derive_seed(42, rep, stream));
    }
    CHECK(seen.size() == 16 * 32);
    CHECK(derive_seed(42, 3, 5) == derive_seed(42, 3, 5));
    CHECK(derive_seed(42, 3, 5) != derive_seed(43, 3, 5));
}

TEST_CASE("sampled misalignment durations", "[montecarlo_sim]")
{
    const SweepTiming single = timing_of(20, 1, 112);
    Rng rng(derive_seed(1, 0, 0));
    for (int i = 0; i < 10000; ++i) {
        const double t = sample_t_m(single, 1.0, rng);
        CHECK(t >= 2.0);
        CHECK(t <= 22.0);
    }

    const SimEstimate e = estimate_t_m(single, 1.0, 1000000, 42);
    CHECK(std::abs(e.mean - 12.0) <= 3.0 * e.standard_error);
    CHECK(e.standard_error > 0.0);

    for (std::int64_t n : {2, 4}) {
        const SweepTiming t = timing_of(20, n, 56);
        const SimEstimate est = estimate_t_m(t, 1.0, 1000000, 7);
        CHECK(std::abs(est.mean - expected_t_m(t, 1.0)) <= 3.0 * est.standard_error);
    }
    CHECK_THROWS_AS(estimate_t_m(single, 1.0, 1, 42), std::domain_error);
}

TEST_CASE("overlap construction", "[montecarlo_sim]")
{
    CHECK(overlap_episode(10.0, 10.0, 0.0) == 10.0);
    CHECK(overlap_episode(10.0, 10.0, 10.0) == 20.0);
    CHECK(overlap_episode(10.0, 2.0, 3.0) == 10.0);

    const SimEstimate f = simulate_overlap_factor(12.0, 1000000, 42);
    CHECK(f.mean == Approx(1.5).margin(0.002));
    const SimEstimate scaled = simulate_overlap_factor(120.0, 1000000, 42);
    CHECK(scaled.mean == Approx(f.mean).epsilon(1e-12));

    const SimEstimate m = simulate_overlap_factor_second_moment(12.0, 1000000, 42);
    CHECK(m.mean == Approx(5.0 / 3.0).margin(0.002));

    CHECK_THROWS_AS(simulate_overlap_factor(12.0, 100, 42), std::domain_error);
    CHECK_THROWS_AS(simulate_overlap_factor(0.0, 10000, 42), std::domain_error);
}

TEST_CASE("interval union", "[montecarlo_sim]")
{
    const std::vector<Interval> a{{0, 2}, {5, 6}, {10, 12}};
    const std::vector<Interval> b{{1, 3}, {6, 7}, {20, 21}};
    const auto u = detail::merge_union(a, b);
    REQUIRE(u.size() == 4);
    CHECK(u[0].start == 0);
    CHECK(u[0].end == 3);
    CHECK(u[1].start == 5);
    CHECK(u[1].end == 7);
    CHECK(u[3].end == 21);
    CHECK(detail::clipped_length(u, 20.5) == Approx(3 + 2 + 2 + 0.5));
}

TEST_CASE("absorbed occupancy of a single end", "[montecarlo_sim]")
{
    // beta = 1/s and E[T_M] = 100 ms.
    const SweepTiming t = timing_of(160, 1, 8);
    const double t_proc = 100.0 - 80.0 - t.t_sweep_r_ms();
    REQUIRE(expected_t_m(t, t_proc) == Approx(100.0));
    Rng arrivals(derive_seed(9, 0, 0));
    Rng durations(derive_seed(9, 0, 1));
    const double horizon_ms = 1e7;
    const auto trace = detail::simulate_side(1.0, t, t_proc, horizon_ms, arrivals, durations);
    const double occupancy = detail::clipped_length(trace.episodes, horizon_ms) / horizon_ms;
    CHECK(occupancy == Approx(0.095).margin(0.01));
    CHECK(occupancy == Approx(0.1 / 1.1).margin(0.003));
    CHECK(trace.load_sum_ms / horizon_ms == Approx(0.1).margin(0.003));
    CHECK(occupancy <= trace.load_sum_ms / horizon_ms);
}

TEST_CASE("simulation is reproducible", "[montecarlo_sim]")
{
    SimConfig cfg;
    cfg.scenario.n_beam_bs = 32;
    cfg.replications = 4;
    const SimulationResult a = simulate(cfg);
    const SimulationResult b = simulate(cfg);
    cfg.parallel = true;
    const SimulationResult c = simulate(cfg);
    for (const auto* other : {&b, &c}) {
        CHECK(a.gamma_bs.mean == other->gamma_bs.mean);
        CHECK(a.gamma_total.mean == other->gamma_total.mean);
        CHECK(a.gamma_total.standard_error == other->gamma_total.standard_error);
        CHECK(a.e_gain.mean == other->e_gain.mean);
        CHECK(a.big_gamma_ms.mean == other->big_gamma_ms.mean);
    }
    cfg.seed = 43;
    CHECK(simulate(cfg).gamma_bs.mean != a.gamma_bs.mean);

    cfg.replications = 1;
    CHECK_THROWS_AS(simulate(cfg), std::domain_error);
}

TEST_CASE("simulated fractions match the model", "[montecarlo_sim]")
{
    SimConfig cfg;
    cfg.scenario.speed_mps = 4.0;
    cfg.scenario.n_beam_bs = 32;
    cfg.replications = 10;
    const SimulationResult r = simulate(cfg);
    const MisalignmentReport& a = r.analytic;
    CHECK(std::abs(z_score(r.gamma_bs.mean, a.bs.gamma, r.gamma_bs.standard_error)) <= 3.0);
    CHECK(std::abs(z_score(r.gamma_ue.mean, a.ue.gamma, r.gamma_ue.standard_error)) <= 3.0);
    CHECK(r.gamma_bs.standard_error > 0.0);

    // Union against inclusion-exclusion on the simulated occupancies, per replication.
    std::vector<double> diff;
    for (const auto& rep : r.replications) {
        diff.push_back(rep.union_fraction -
                       (rep.occupancy_bs + rep.occupancy_ue - rep.occupancy_bs * rep.occupancy_ue));
    }
    const SimEstimate d = summarize("union_minus_independent", diff, cfg.seed);
    CHECK(std::abs(d.mean) <= 3.0 * d.standard_error + 1e-12);
}

TEST_CASE("degenerate event streams", "[montecarlo_sim]")
{
    SimConfig cfg;
    cfg.scenario.speed_mps = 0.0;
    const SimulationResult still = simulate(cfg);
    CHECK(still.gamma_total.mean == 0.0);
    CHECK(still.gamma_total.standard_error == 0.0);
    CHECK(still.e_gain.mean == Approx((1.0 - still.analytic.eta_oh) * 64.0));
    CHECK(z_score(still.e_gain.mean, still.analytic.e_gain, still.e_gain.standard_error) == 0.0);

    // BS end only.
    const SweepTiming t = timing_of(20, 2, 56);
    const ReplicationResult bs_only = run_replication(cfg.scenario, t, 0.5, 0.0, 2000.0, 5, 0);
    CHECK(bs_only.occupancy_ue == 0.0);
    CHECK(bs_only.union_fraction == Approx(bs_only.occupancy_bs).epsilon(1e-12));
    CHECK(bs_only.events_ue == 0);
}

TEST_CASE("simulated gain", "[montecarlo_sim]")
{
    SimConfig cfg;
    const SimEstimate base = simulate_gain(cfg);
    const double analytic = average_gain(cfg.scenario).e_gain;
    CHECK(base.mean == Approx(analytic).epsilon(0.02));

    cfg.scenario.n_beam_bs = 64;
    cfg.scenario.speed_mps = 4.0;
    const SimEstimate slow = simulate_gain(cfg);
    cfg.scenario.speed_mps = 8.0;
    const SimEstimate fast = simulate_gain(cfg);
    CHECK(fast.mean < slow.mean);
}

TEST_CASE("z scores", "[montecarlo_sim]")
{
    CHECK(z_score(1.0, 1.0, 0.0) == 0.0);
    CHECK(std::isinf(z_score(1.1, 1.0, 0.0)));
    CHECK(z_score(1.2, 1.0, 0.1) == Approx(2.0));
}
