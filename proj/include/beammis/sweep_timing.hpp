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

#pragma once

// Beam sweep time for a request of N SSBs served from consecutive burst sets.
//
// Two independent routes are provided:
//  - sweep_time_closed_form: segment/gap capacity model with per-segment
//    residual allocation and indicator functions, using the per-case start
//    symbol tables for the last occupied slot.
//  - sweep_time_oracle: direct lookup of the final SSB's start symbol in the
//    effective start-symbol list.
// Both produce whole symbol counts; milliseconds are derived on demand.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "beammis/numerology.hpp"
#include "beammis/ssb_schedule.hpp"

namespace beammis {

inline constexpr std::array<int, 6> kAllowedTauSsMs{5, 10, 20, 40, 80, 160};

[[nodiscard]] constexpr bool is_allowed_tau_ss(int tau_ss_ms) noexcept {
  return std::find(kAllowedTauSsMs.begin(), kAllowedTauSsMs.end(), tau_ss_ms) != kAllowedTauSsMs.end();
}

struct SweepRequest {
  std::int64_t n_ssb_req;  ///< N_beam_BS * N_beam_UE
  int tau_ss_ms;           ///< burst-set periodicity
};

/// Result of a sweep time computation. Stored as integer symbol counts at the
/// grid's numerology; the *_ms accessors are presentation conversions.
struct SweepTiming {
  Numerology numerology{3};
  int tau_ss_ms = 20;
  Symbols sweep_symbols_c = 0;  ///< complete burst sets
  Symbols sweep_symbols_r = 0;  ///< residual burst set, up to the end of the last SSB
  std::int64_t n_complete_sets = 0;
  std::int64_t residual_ssbs = 0;
  std::int64_t n_sweep_sets = 0;  ///< burst sets per sweep period

  [[nodiscard]] Symbols sweep_symbols() const noexcept { return sweep_symbols_c + sweep_symbols_r; }
  [[nodiscard]] double t_sweep_c_ms() const noexcept { return numerology.to_ms(sweep_symbols_c); }
  [[nodiscard]] double t_sweep_r_ms() const noexcept { return numerology.to_ms(sweep_symbols_r); }
  [[nodiscard]] double t_sweep_ms() const noexcept { return numerology.to_ms(sweep_symbols()); }
  [[nodiscard]] double tau_sweep_ms() const noexcept {
    return static_cast<double>(n_sweep_sets) * tau_ss_ms;
  }

  friend bool operator==(const SweepTiming&, const SweepTiming&) = default;
};

struct SweepPeriod {
  double tau_sweep_ms;
  std::int64_t n_sweep_sets;
};

/// Rounds a sweep time up to a whole number of burst-set periods.
[[nodiscard]] inline SweepPeriod sweep_period(double t_sweep_ms, int tau_ss_ms) {
  if (!(t_sweep_ms > 0.0)) throw std::domain_error("sweep time must be positive");
  if (tau_ss_ms <= 0) throw std::domain_error("burst-set periodicity must be positive");
  const auto n = static_cast<std::int64_t>(std::ceil(t_sweep_ms / tau_ss_ms));
  return {static_cast<double>(n) * tau_ss_ms, n};
}

namespace detail {

inline void validate(const SweepRequest& req) {
  if (req.n_ssb_req < 1) throw std::domain_error("requested SSB count must be at least 1");
  if (!is_allowed_tau_ss(req.tau_ss_ms)) {
    throw std::domain_error("burst-set periodicity must be one of 5,10,20,40,80,160 ms, got " +
                            std::to_string(req.tau_ss_ms));
  }
}

[[nodiscard]] constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) noexcept {
  return (a + b - 1) / b;
}

// In-slot start symbol of the first SSB of a slot. Case D alternates
// {4, 8} / {2, 6} between even and odd slots; F and G always use {2, 9}.
[[nodiscard]] constexpr int first_start_in_slot(SsbCase c, std::int64_t slot) noexcept {
  if (c == SsbCase::D) return slot % 2 == 0 ? 4 : 2;
  return 2;
}

[[nodiscard]] constexpr int last_start_in_slot(SsbCase c, std::int64_t slot, int ssb_per_slot) noexcept {
  if (ssb_per_slot == 1) return first_start_in_slot(c, slot);
  if (c == SsbCase::D) return slot % 2 == 0 ? 8 : 6;
  return 9;
}

}  // namespace detail

/// Closed-form sweep time over the grid's burst segments.
///
/// With C(n) the cumulative segment capacity, n_c = ceil(N / C(N_SS)) - 1
/// complete sets are followed by n_r = N - n_c * C(N_SS) residual SSBs,
/// distributed as r(n) = min(c(n), max(0, n_r - C(n - 1))). Segments before
/// the last one with residual SSBs contribute their full slots plus their
/// trailing gap; the last one contributes up to the end of its final SSB,
/// whose position depends on whether r(n) fills its last slot.
///
/// Requires every SSB slot to carry exactly ssb_per_slot SSBs; throws
/// ConfigError otherwise.
[[nodiscard]] inline SweepTiming sweep_time_closed_form(const SsbGrid& grid, const SweepRequest& req) {
  detail::validate(req);
  if (!grid.uniform_slots()) {
    throw ConfigError("closed-form sweep time needs every SSB slot fully occupied");
  }
  const auto segs = grid.segments();
  const std::size_t n_ss = segs.size();
  const std::int64_t per_slot = grid.ssb_per_slot();
  const Numerology num = grid.numerology();

  // Index 0 and n_ss + 1 are the boundary values of the segment sequences.
  std::vector<std::int64_t> cap(n_ss + 2, 0), cum(n_ss + 2, 0), gap(n_ss + 2, 0);
  std::vector<std::int64_t> r(n_ss + 2, 0), i1(n_ss + 2, 0);
  gap[0] = grid.leading_gap_slots();
  for (std::size_t n = 1; n <= n_ss; ++n) {
    cap[n] = segs[n - 1].capacity;
    cum[n] = cum[n - 1] + cap[n];
    gap[n] = segs[n - 1].gap_slots;
  }
  const std::int64_t total = cum[n_ss];
  const std::int64_t n_c = detail::ceil_div(req.n_ssb_req, total) - 1;
  const std::int64_t n_r = req.n_ssb_req - n_c * total;

  for (std::size_t n = 1; n <= n_ss; ++n) {
    r[n] = std::min(cap[n], std::max<std::int64_t>(0, n_r - cum[n - 1]));
    i1[n] = r[n] > 0 ? 1 : 0;
  }

  Symbols sweep_r = gap[0] * kSymbolsPerSlot;
  for (std::size_t n = 1; n <= n_ss; ++n) {
    if (i1[n] == 0) continue;
    const std::int64_t i2 = i1[n] - i1[n + 1];
    const Symbols lambda = (1 - i2) * ((r[n] / per_slot) * kSymbolsPerSlot + gap[n] * kSymbolsPerSlot);

    std::int64_t last_slot = detail::ceil_div(r[n], per_slot) - 1;
    for (std::size_t k = 1; k <= n; ++k) last_slot += gap[n - k] + r[n - k] / per_slot;

    Symbols term = 0;
    if (r[n] % per_slot == 0) {
      const Symbols remaining_after_last =
          kSymbolsPerSlot -
          (detail::last_start_in_slot(grid.ssb_case(), last_slot, static_cast<int>(per_slot)) + kSymbolsPerSsb);
      term = lambda + i2 * ((r[n] / per_slot) * kSymbolsPerSlot - remaining_after_last);
    } else {
      const Symbols end_of_first = detail::first_start_in_slot(grid.ssb_case(), last_slot) + kSymbolsPerSsb;
      term = lambda + i2 * ((r[n] / per_slot) * kSymbolsPerSlot + end_of_first);
    }
    sweep_r += i1[n] * term;
  }

  const Symbols per_set = req.tau_ss_ms * num.symbols_per_ms();
  const Symbols sweep_c = n_c * per_set;
  return SweepTiming{num, req.tau_ss_ms, sweep_c, sweep_r, n_c, n_r,
                     detail::ceil_div(sweep_c + sweep_r, per_set)};
}

/// Reference sweep time by direct lookup: SSB i (1-based) goes to burst set
/// (i-1) / l_eff at list position (i-1) % l_eff; the sweep ends with the last
/// symbol of the final SSB.
[[nodiscard]] inline SweepTiming sweep_time_oracle(const SsbGrid& grid, const SweepRequest& req) {
  detail::validate(req);
  const auto starts = grid.start_symbols();
  const auto l_eff = static_cast<std::int64_t>(starts.size());
  const std::int64_t last_set = (req.n_ssb_req - 1) / l_eff;
  const std::int64_t position = (req.n_ssb_req - 1) % l_eff;
  const Symbols set_symbols = req.tau_ss_ms * grid.numerology().symbols_per_ms();
  const Symbols tail = starts[static_cast<std::size_t>(position)] + kSymbolsPerSsb;
  const Symbols total = last_set * set_symbols + tail;
  std::int64_t sets = total / set_symbols;
  if (sets * set_symbols < total) ++sets;
  return SweepTiming{grid.numerology(), req.tau_ss_ms, last_set * set_symbols, tail, last_set, position + 1, sets};
}

/// Closed form where it applies, reference lookup for grids with partially
/// filled slots.
[[nodiscard]] inline SweepTiming sweep_time(const SsbGrid& grid, const SweepRequest& req) {
  return grid.uniform_slots() ? sweep_time_closed_form(grid, req) : sweep_time_oracle(grid, req);
}

}  // namespace beammis
