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

#include "beammis/ssb_schedule.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

using namespace beammis;

TEST_CASE("candidate start symbols", "[ssb_schedule]")
{
    const auto d = agnostic_start_symbols(SsbCase::D);
    REQUIRE(d.size() == 64);
    CHECK(std::vector<int>(d.begin(), d.begin() + 4) == std::vector<int>{4, 8, 16, 20});
    // n = 4 is skipped: the fifth group starts at 28 * 5.
    CHECK(d[16] == 144);

    const auto f = agnostic_start_symbols(SsbCase::F);
    REQUIRE(f.size() == 64);
    CHECK(std::vector<int>(f.begin(), f.begin() + 4) == std::vector<int>{2, 9, 16, 23});

    const auto g = agnostic_start_symbols(SsbCase::G);
    REQUIRE(g.size() == 64);
    CHECK(g.back() == 443);
    CHECK(std::is_sorted(g.begin(), g.end()));
}

TEST_CASE("effective SSB counts per configuration", "[ssb_schedule]")
{
    const auto count = [](SsbCase c, TddPattern p, SlotFilter f) {
        return effective_start_symbols(c, p, GridOptions{f}).l_eff();
    };
    CHECK(count(SsbCase::D, TddPattern::a(), SlotFilter::DlOnly) == 52);
    CHECK(count(SsbCase::D, TddPattern::a(), SlotFilter::DlAndSpecial) == 56);
    CHECK(count(SsbCase::D, TddPattern::b(), SlotFilter::DlOnly) == 50);
    CHECK(count(SsbCase::D, TddPattern::b(), SlotFilter::DlAndSpecial) == 52);
    for (SsbCase c : {SsbCase::F, SsbCase::G}) {
        for (TddVariant v : kAllVariants) {
            for (SlotFilter f : kAllFilters) CHECK(count(c, TddPattern::of(v), f) == 64);
        }
    }
    const auto f = effective_start_symbols(SsbCase::F, TddPattern::a());
    const auto all = agnostic_start_symbols(SsbCase::F);
    CHECK(std::equal(f.start_symbols().begin(), f.start_symbols().end(), all.begin(), all.end()));
}

TEST_CASE("grid invariants hold for every configuration", "[ssb_schedule]")
{
    for (SsbCase c : kAllCases) {
        const auto agnostic = agnostic_start_symbols(c);
        for (TddVariant v : kAllVariants) {
            const TddPattern p = TddPattern::of(v);
            const auto dl = effective_start_symbols(c, p, GridOptions{SlotFilter::DlOnly});
            const auto dls = effective_start_symbols(c, p, GridOptions{SlotFilter::DlAndSpecial});
            CHECK(dls.l_eff() >= dl.l_eff());
            for (const auto* grid : {&dl, &dls}) {
                int capacity = 0;
                for (const auto& s : grid->segments()) capacity += s.capacity;
                CHECK(capacity == grid->l_eff());
                CHECK(grid->cumulative_capacity(grid->segments().size()) == grid->l_eff());
                for (int l : grid->start_symbols()) {
                    CHECK(l % 14 <= 10);
                    CHECK(std::binary_search(agnostic.begin(), agnostic.end(), l));
                }
                CHECK(std::is_sorted(grid->start_symbols().begin(), grid->start_symbols().end()));
                CHECK(grid->uniform_slots());
            }
            for (int l : dl.start_symbols()) {
                CHECK(std::find(dls.start_symbols().begin(), dls.start_symbols().end(), l) !=
                      dls.start_symbols().end());
            }
        }
    }
}

TEST_CASE("segments of the case D pattern A grid", "[ssb_schedule]")
{
    const auto grid = effective_start_symbols(SsbCase::D, TddPattern::a());
    const std::vector<BurstSegment> expected{{16, 0, 8, 2}, {10, 10, 5, 5}, {16, 20, 8, 2}, {10, 30, 5, 5}};
    CHECK(std::vector<BurstSegment>(grid.segments().begin(), grid.segments().end()) == expected);
    CHECK(grid.leading_gap_slots() == 0);
    CHECK(grid.window_slots() == 40);
    CHECK(grid.cumulative_capacity(0) == 0);
    CHECK(grid.cumulative_capacity(2) == 26);
}

TEST_CASE("single segment of the case F pattern A grid", "[ssb_schedule]")
{
    const auto grid = effective_start_symbols(SsbCase::F, TddPattern::a());
    REQUIRE(grid.segments().size() == 1);
    CHECK(grid.segments()[0] == BurstSegment{64, 0, 32, 160 - 32});
}

TEST_CASE("segmentation of an explicit symbol list", "[ssb_schedule]")
{
    const std::vector<int> starts{2, 9, 16, 58};
    const auto segs = segmentation(starts, 10);
    REQUIRE(segs.size() == 2);
    CHECK(segs[0] == BurstSegment{3, 0, 2, 2});
    CHECK(segs[1] == BurstSegment{1, 4, 1, 5});
    CHECK_THROWS_AS(segmentation(starts, 4), ConfigError);
}

TEST_CASE("grid options", "[ssb_schedule]")
{
    const auto one = effective_start_symbols(SsbCase::F, TddPattern::a(), GridOptions{SlotFilter::DlOnly, 1});
    CHECK(one.l_eff() == 32);
    CHECK(one.uniform_slots());
    for (int l : one.start_symbols()) CHECK(l % 14 == 2);

    CHECK_THROWS_AS(effective_start_symbols(SsbCase::F, TddPattern::a(), GridOptions{SlotFilter::DlOnly, 3}),
                    ConfigError);

    // Symbol-level admission: the 4:6:4 special slot only has room before symbol 4.
    const GridOptions strict{SlotFilter::DlAndSpecial, 2, SpecialAdmission::DlSymbols};
    const auto role_based = effective_start_symbols(SsbCase::D, TddPattern::b(TddPattern::kSplitB4),
                                                    GridOptions{SlotFilter::DlAndSpecial});
    const auto symbol_based = effective_start_symbols(SsbCase::D, TddPattern::b(TddPattern::kSplitB4), strict);
    CHECK(symbol_based.l_eff() < role_based.l_eff());
    CHECK(symbol_based.l_eff() >= effective_start_symbols(SsbCase::D, TddPattern::b()).l_eff());
}
