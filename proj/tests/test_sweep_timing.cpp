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

#include "beammis/commands.hpp"
#include "beammis/sweep_timing.hpp"

#include <stdexcept>

using namespace beammis;
using Catch::Approx;

namespace {

SsbGrid grid_of(SsbCase c, TddPattern p, SlotFilter f = SlotFilter::DlOnly) {
    return effective_start_symbols(c, p, GridOptions{f});
}

}  // namespace

TEST_CASE("sweep times at set boundaries", "[sweep_timing]")
{
    const auto f_a = grid_of(SsbCase::F, TddPattern::a());
    const SweepTiming t64 = sweep_time_closed_form(f_a, {64, 20});
    CHECK(t64.sweep_symbols() == 447);
    CHECK(t64.n_complete_sets == 0);
    CHECK(t64.residual_ssbs == 64);
    CHECK(t64.tau_sweep_ms() == 20.0);
    CHECK(t64.n_sweep_sets == 1);

    const SweepTiming t65 = sweep_time_closed_form(f_a, {65, 20});
    CHECK(t65.sweep_symbols_c == 20 * 448);
    CHECK(t65.sweep_symbols_r == 6);
    CHECK(t65.t_sweep_ms() == Approx(20.0 + 6 * 0.03125 / 14).epsilon(1e-12));
    CHECK(t65.tau_sweep_ms() == 40.0);
    CHECK(t65.n_sweep_sets == 2);

    const auto g_b = grid_of(SsbCase::G, TddPattern::b());
    const SweepTiming t128 = sweep_time_closed_form(g_b, {128, 20});
    CHECK(t128.t_sweep_c_ms() == 20.0);
    CHECK(t128.residual_ssbs == 64);
}

TEST_CASE("case D pattern A sweep symbols", "[sweep_timing]")
{
    const auto d_a = grid_of(SsbCase::D, TddPattern::a());
    const auto symbols = [&](std::int64_t n) { return sweep_time_closed_form(d_a, {n, 20}); };
    CHECK(symbols(1).sweep_symbols_r == 8);
    CHECK(symbols(1).t_sweep_ms() == Approx(8 * 0.125 / 14).epsilon(1e-12));
    CHECK(symbols(16).sweep_symbols_r == 108);
    CHECK(symbols(17).sweep_symbols_r == 148);
    CHECK(symbols(52).sweep_symbols_r == 488);
    CHECK(symbols(53).sweep_symbols_c == 2240);
    CHECK(symbols(53).sweep_symbols_r == 8);
    CHECK(symbols(64).sweep_symbols_r == 80);

    CHECK(sweep_time_closed_form(grid_of(SsbCase::D, TddPattern::b()), {50, 20}).sweep_symbols_r == 432);
    CHECK(sweep_time_closed_form(grid_of(SsbCase::D, TddPattern::b(), SlotFilter::DlAndSpecial), {52, 20})
              .sweep_symbols_r == 444);
    CHECK(sweep_time_closed_form(grid_of(SsbCase::D, TddPattern::a(), SlotFilter::DlAndSpecial), {56, 20})
              .sweep_symbols_r == 500);
}

TEST_CASE("full sets leave the whole grid as residual", "[sweep_timing]")
{
    for (const auto& cfg : commands::all_grid_configs()) {
        const SsbGrid grid = cfg.build();
        for (std::int64_t k = 1; k <= 4; ++k) {
            const SweepTiming t = sweep_time_closed_form(grid, {k * grid.l_eff(), 20});
            CHECK(t.residual_ssbs == grid.l_eff());
            CHECK(t.n_complete_sets == k - 1);
        }
    }
}

TEST_CASE("closed form and lookup agree on every configuration", "[sweep_timing]")
{
    for (int tau : kAllowedTauSsMs) {
        const auto rep = commands::validate_equivalence(512, tau);
        CHECK(rep.checks == 6144);
        CHECK(rep.failures == 0);
    }
    // Single SSB per slot and a 4:6:4 split.
    std::vector<commands::GridConfig> extra;
    for (SsbCase c : kAllCases) {
        for (SlotFilter f : kAllFilters) {
            extra.push_back({c, TddPattern::a(), GridOptions{f, 1}});
            extra.push_back({c, TddPattern::b(TddPattern::kSplitB4), GridOptions{f}});
        }
    }
    const auto rep = commands::validate_equivalence(300, 20, sweep_time_closed_form, extra);
    CHECK(rep.failures == 0);
}

TEST_CASE("timing invariants", "[sweep_timing]")
{
    for (const auto& cfg : commands::all_grid_configs()) {
        const SsbGrid grid = cfg.build();
        double previous = 0.0;
        for (std::int64_t n = 1; n <= 300; ++n) {
            const SweepTiming t = sweep_time(grid, {n, 20});
            CHECK(t.sweep_symbols() == t.sweep_symbols_c + t.sweep_symbols_r);
            CHECK(t.t_sweep_ms() == Approx(t.t_sweep_c_ms() + t.t_sweep_r_ms()).epsilon(1e-14));
            CHECK(t.tau_sweep_ms() >= t.t_sweep_ms());
            CHECK(t.tau_sweep_ms() == static_cast<double>(t.n_sweep_sets) * 20.0);
            const SweepPeriod period = sweep_period(t.t_sweep_ms(), 20);
            CHECK(period.n_sweep_sets == t.n_sweep_sets);
            CHECK(t.t_sweep_r_ms() < 5.0);
            if ((n - 1) % grid.l_eff() != 0) {
                CHECK(t.t_sweep_ms() - previous >= grid.numerology().symbol_duration_ms() - 1e-12);
            } else if (n > 1) {
                CHECK(t.t_sweep_ms() - previous > 15.0);
            }
            previous = t.t_sweep_ms();
        }
    }
}

TEST_CASE("shortest periodicity minimises the sweep period", "[sweep_timing]")
{
    for (const auto& cfg : commands::all_grid_configs()) {
        const SsbGrid grid = cfg.build();
        for (std::int64_t n : {1, 16, 52, 64, 65, 128, 200, 512}) {
            const double best = sweep_time(grid, {n, 5}).tau_sweep_ms();
            for (int tau : kAllowedTauSsMs) CHECK(best <= sweep_time(grid, {n, tau}).tau_sweep_ms());
        }
    }
}

TEST_CASE("sweep period rounding", "[sweep_timing]")
{
    CHECK(sweep_period(1.0, 20).tau_sweep_ms == 20.0);
    CHECK(sweep_period(1.0, 20).n_sweep_sets == 1);
    CHECK(sweep_period(20.0134, 20).tau_sweep_ms == 40.0);
    CHECK(sweep_period(20.0134, 20).n_sweep_sets == 2);
    CHECK(sweep_period(5.0, 5).n_sweep_sets == 1);
    CHECK_THROWS_AS(sweep_period(0.0, 20), std::domain_error);
}

TEST_CASE("invalid sweep requests", "[sweep_timing]")
{
    const auto grid = grid_of(SsbCase::D, TddPattern::a());
    CHECK_THROWS_AS(sweep_time_closed_form(grid, {0, 20}), std::domain_error);
    CHECK_THROWS_AS(sweep_time_oracle(grid, {0, 20}), std::domain_error);
    CHECK_THROWS_AS(sweep_time(grid, {4, 15}), std::domain_error);
}

TEST_CASE("partially filled slots fall back to the lookup", "[sweep_timing]")
{
    const SsbGrid ragged(SsbCase::F, TddPattern::a(), GridOptions{}, {2, 9, 16});
    CHECK_FALSE(ragged.uniform_slots());
    CHECK_THROWS_AS(sweep_time_closed_form(ragged, {3, 20}), ConfigError);
    CHECK(sweep_time(ragged, {3, 20}) == sweep_time_oracle(ragged, {3, 20}));
    CHECK(sweep_time(ragged, {3, 20}).sweep_symbols_r == 20);
}

TEST_CASE("validation reports the first mismatch", "[sweep_timing]")
{
    const commands::SweepFn off_by_one = [](const SsbGrid& grid, const SweepRequest& req) {
        SweepTiming t = sweep_time_closed_form(grid, req);
        if (req.n_ssb_req == 37) ++t.sweep_symbols_r;
        return t;
    };
    const auto rep = commands::validate_equivalence(64, 20, off_by_one);
    CHECK(rep.failures == 12);
    REQUIRE(rep.first.has_value());
    CHECK(rep.first->n_req == 37);
    CHECK(rep.first->config.ssb_case == SsbCase::D);
    CHECK(rep.first->closed_form.sweep_symbols_r == rep.first->oracle.sweep_symbols_r + 1);

    std::ostringstream os;
    CHECK(commands::validate(os, rep) == 1);
    CHECK(os.str().find("closed_form") != std::string::npos);

    std::ostringstream trivial;
    CHECK(commands::validate(trivial, commands::validate_equivalence(1, 20)) == 0);
    CHECK(trivial.str() == "checks,failures,status\n12,0,pass\n");
}
