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

// SSB candidate start symbols within the first half-frame and their
// restriction to the DL part of a TDD frame.
//
// Start symbols are relative to the first symbol of the half-frame. The
// burst-set window is that half-frame (5 ms). A grid is further decomposed
// into burst segments (maximal runs of consecutive SSB-carrying slots) each
// followed by a gap of slots without SSBs.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "beammis/numerology.hpp"
#include "beammis/tdd_frames.hpp"

namespace beammis {

enum class SsbCase { D, F, G };

enum class SlotFilter { DlOnly, DlAndSpecial };

/// How an SSB that touches the special slot is admitted under DlAndSpecial.
enum class SpecialAdmission {
  SlotRole,   ///< any SSB in an S slot is admitted
  DlSymbols,  ///< only SSBs whose four symbols sit in the special slot's DL part
};

inline constexpr std::array<SsbCase, 3> kAllCases{SsbCase::D, SsbCase::F, SsbCase::G};
inline constexpr std::array<TddVariant, 2> kAllVariants{TddVariant::A, TddVariant::B};
inline constexpr std::array<SlotFilter, 2> kAllFilters{SlotFilter::DlOnly, SlotFilter::DlAndSpecial};

inline constexpr int kBurstWindowMs = 5;

[[nodiscard]] constexpr std::string_view to_string(SsbCase c) noexcept {
  switch (c) {
    case SsbCase::D: return "D";
    case SsbCase::F: return "F";
    case SsbCase::G: return "G";
  }
  return "?";
}

[[nodiscard]] constexpr std::string_view to_string(SlotFilter f) noexcept {
  return f == SlotFilter::DlOnly ? "dl" : "dl+s";
}

/// D -> 120 kHz, F -> 480 kHz, G -> 960 kHz.
[[nodiscard]] constexpr Numerology numerology_of(SsbCase c) noexcept {
  switch (c) {
    case SsbCase::D: return Numerology(3);
    case SsbCase::F: return Numerology(5);
    case SsbCase::G: return Numerology(6);
  }
  return Numerology(3);
}

/// Framestructure-agnostic candidate start symbols, ascending.
[[nodiscard]] inline std::vector<int> agnostic_start_symbols(SsbCase c) {
  std::vector<int> out;
  out.reserve(64);
  if (c == SsbCase::D) {
    for (int n = 0; n <= 18; ++n) {
      if (n % 5 == 4) continue;  // n in {0..3, 5..8, 10..13, 15..18}
      for (int offset : {4, 8, 16, 20}) out.push_back(offset + 28 * n);
    }
  } else {
    for (int n = 0; n < 32; ++n) {
      for (int offset : {2, 9}) out.push_back(offset + 14 * n);
    }
  }
  return out;
}

struct GridOptions {
  SlotFilter filter = SlotFilter::DlOnly;
  int ssb_per_slot = 2;
  SpecialAdmission admission = SpecialAdmission::SlotRole;

  friend constexpr bool operator==(const GridOptions&, const GridOptions&) = default;
};

/// One burst segment: `slots` consecutive SSB slots starting at `first_slot`
/// holding `capacity` SSBs, followed by `gap_slots` slots without SSBs (up to
/// the next segment, or to the end of the burst window for the last one).
struct BurstSegment {
  int capacity;
  std::int64_t first_slot;
  std::int64_t slots;
  std::int64_t gap_slots;

  friend constexpr bool operator==(const BurstSegment&, const BurstSegment&) = default;
};

/// Decompose ascending start symbols into burst segments over a window of
/// `window_slots` slots. Every SSB must fit inside one slot.
[[nodiscard]] inline std::vector<BurstSegment> segmentation(std::span<const int> start_symbols,
                                                           std::int64_t window_slots) {
  std::vector<BurstSegment> segments;
  std::int64_t prev_slot = -1;
  for (int l : start_symbols) {
    const std::int64_t slot = l / kSymbolsPerSlot;
    if (slot >= window_slots) throw ConfigError("SSB start symbol beyond the burst window");
    if (!segments.empty() && slot == prev_slot) {
      ++segments.back().capacity;
    } else if (!segments.empty() && slot == prev_slot + 1) {
      ++segments.back().capacity;
      ++segments.back().slots;
    } else {
      if (!segments.empty()) segments.back().gap_slots = slot - prev_slot - 1;
      segments.push_back({1, slot, 1, 0});
    }
    prev_slot = slot;
  }
  if (!segments.empty()) segments.back().gap_slots = window_slots - prev_slot - 1;
  return segments;
}

class SsbGrid {
 public:
  SsbGrid(SsbCase ssb_case, TddPattern pattern, GridOptions options, std::vector<int> start_symbols)
      : case_(ssb_case),
        pattern_(pattern),
        options_(options),
        start_symbols_(std::move(start_symbols)),
        segments_(segmentation(start_symbols_, window_slots())) {
    if (start_symbols_.empty()) throw ConfigError("SSB grid is empty for this configuration");
  }

  [[nodiscard]] SsbCase ssb_case() const noexcept { return case_; }
  [[nodiscard]] const TddPattern& pattern() const noexcept { return pattern_; }
  [[nodiscard]] const GridOptions& options() const noexcept { return options_; }
  [[nodiscard]] Numerology numerology() const noexcept { return numerology_of(case_); }
  [[nodiscard]] int ssb_per_slot() const noexcept { return options_.ssb_per_slot; }

  [[nodiscard]] std::span<const int> start_symbols() const noexcept { return start_symbols_; }
  [[nodiscard]] int l_eff() const noexcept { return static_cast<int>(start_symbols_.size()); }
  [[nodiscard]] std::span<const BurstSegment> segments() const noexcept { return segments_; }

  /// Slots before the first segment.
  [[nodiscard]] std::int64_t leading_gap_slots() const noexcept { return segments_.front().first_slot; }
  [[nodiscard]] std::int64_t window_slots() const noexcept {
    return numerology().slots_in_ms(kBurstWindowMs);
  }

  /// C(n): total capacity of segments 1..n (C(0) = 0).
  [[nodiscard]] int cumulative_capacity(std::size_t n) const noexcept {
    int total = 0;
    for (std::size_t k = 0; k < n && k < segments_.size(); ++k) total += segments_[k].capacity;
    return total;
  }

  /// True when every SSB-carrying slot carries exactly ssb_per_slot SSBs.
  [[nodiscard]] bool uniform_slots() const noexcept {
    for (const auto& s : segments_) {
      if (s.capacity != s.slots * options_.ssb_per_slot) return false;
    }
    return true;
  }

 private:
  SsbCase case_;
  TddPattern pattern_;
  GridOptions options_;
  std::vector<int> start_symbols_;
  std::vector<BurstSegment> segments_;
};

namespace detail {

[[nodiscard]] inline bool admitted(const TddPattern& pattern, Numerology num, const GridOptions& opt,
                                   int start_symbol) {
  for (int sym = start_symbol; sym < start_symbol + kSymbolsPerSsb; ++sym) {
    switch (slot_role(pattern, num, sym / kSymbolsPerSlot)) {
      case SlotRole::DL: break;
      case SlotRole::UL: return false;
      case SlotRole::S:
        if (opt.filter == SlotFilter::DlOnly) return false;
        if (opt.admission == SpecialAdmission::DlSymbols &&
            sym % kSymbolsPerSlot >= pattern.special_split().dl_symbols) {
          return false;
        }
        break;
    }
  }
  return true;
}

}  // namespace detail

/// Candidate start symbols whose SSB lies entirely in slots allowed by the
/// filter, at most `ssb_per_slot` per slot (earliest kept).
[[nodiscard]] inline SsbGrid effective_start_symbols(SsbCase ssb_case, const TddPattern& pattern,
                                                     GridOptions options = {}) {
  if (options.ssb_per_slot != 1 && options.ssb_per_slot != 2) {
    throw ConfigError("ssb_per_slot must be 1 or 2");
  }
  const Numerology num = numerology_of(ssb_case);
  std::vector<int> kept;
  std::int64_t slot = -1;
  int in_slot = 0;
  for (int l : agnostic_start_symbols(ssb_case)) {
    if (l / kSymbolsPerSlot != (l + kSymbolsPerSsb - 1) / kSymbolsPerSlot) continue;
    if (!detail::admitted(pattern, num, options, l)) continue;
    if (l / kSymbolsPerSlot != slot) {
      slot = l / kSymbolsPerSlot;
      in_slot = 0;
    }
    if (in_slot == options.ssb_per_slot) continue;
    ++in_slot;
    kept.push_back(l);
  }
  return SsbGrid(ssb_case, pattern, options, std::move(kept));
}

}  // namespace beammis
