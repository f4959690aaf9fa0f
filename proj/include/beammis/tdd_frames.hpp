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

// Harmonized CEPT TDD frame structures scaled proportionally over numerology.
//
// Pattern A: 2.5 ms period, 2^(mu+1)-1 DL slots, one special slot, 2^(mu-1)
//            UL slots. Special slot DL:GP:UL = 10:2:2.
// Pattern B: 5 ms period, 2^(mu+2)-1 DL slots, one special slot, 2^mu UL
//            slots. Special slot 6:4:4 (default) or 4:6:4.
//
// Within one period the slots are laid out as a contiguous DL run, a single
// special slot, then a contiguous UL run.

#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "beammis/numerology.hpp"

namespace beammis {

enum class TddVariant { A, B };

enum class SlotRole { DL, S, UL };

[[nodiscard]] constexpr std::string_view to_string(TddVariant v) noexcept {
  return v == TddVariant::A ? "a" : "b";
}

[[nodiscard]] constexpr std::string_view to_string(SlotRole r) noexcept {
  switch (r) {
    case SlotRole::DL: return "DL";
    case SlotRole::S: return "S";
    case SlotRole::UL: return "UL";
  }
  return "?";
}

/// Symbol split of the special slot.
struct SpecialSplit {
  int dl_symbols;
  int gp_symbols;
  int ul_symbols;

  friend constexpr bool operator==(const SpecialSplit&, const SpecialSplit&) = default;
};

class TddPattern {
 public:
  static constexpr SpecialSplit kSplitA{10, 2, 2};
  static constexpr SpecialSplit kSplitB6{6, 4, 4};
  static constexpr SpecialSplit kSplitB4{4, 6, 4};

  [[nodiscard]] static constexpr TddPattern a() { return TddPattern(TddVariant::A, kSplitA); }
  [[nodiscard]] static constexpr TddPattern b(SpecialSplit split = kSplitB6) {
    return TddPattern(TddVariant::B, split);
  }
  [[nodiscard]] static constexpr TddPattern of(TddVariant v) { return v == TddVariant::A ? a() : b(); }

  [[nodiscard]] constexpr TddVariant variant() const noexcept { return variant_; }
  [[nodiscard]] constexpr const SpecialSplit& special_split() const noexcept { return split_; }

  /// Period in half-milliseconds (5 for A, 10 for B) so it stays integral.
  [[nodiscard]] constexpr int period_half_ms() const noexcept { return variant_ == TddVariant::A ? 5 : 10; }
  [[nodiscard]] constexpr double period_ms() const noexcept { return period_half_ms() / 2.0; }

  friend constexpr bool operator==(const TddPattern&, const TddPattern&) = default;

 private:
  constexpr TddPattern(TddVariant v, SpecialSplit split) : variant_(v), split_(split) {
    if (split.dl_symbols < 0 || split.gp_symbols < 0 || split.ul_symbols < 0 ||
        split.dl_symbols + split.gp_symbols + split.ul_symbols != kSymbolsPerSlot) {
      throw std::invalid_argument("special slot split must be non-negative and sum to 14 symbols");
    }
    if (v == TddVariant::A && !(split == kSplitA)) {
      throw std::invalid_argument("pattern A uses the 10:2:2 special slot split");
    }
    if (v == TddVariant::B && !(split == kSplitB6) && !(split == kSplitB4)) {
      throw std::invalid_argument("pattern B uses a 6:4:4 or 4:6:4 special slot split");
    }
  }

  TddVariant variant_;
  SpecialSplit split_;
};

struct SlotCounts {
  std::int64_t dl;
  std::int64_t s;
  std::int64_t ul;
  std::int64_t total;

  friend constexpr bool operator==(const SlotCounts&, const SlotCounts&) = default;
};

/// Slot counts per TDD period at numerology `num`.
[[nodiscard]] constexpr SlotCounts slot_counts(const TddPattern& pattern, Numerology num) noexcept {
  const std::int64_t p = std::int64_t{1} << num.mu();
  if (pattern.variant() == TddVariant::A) {
    // 2^(mu+1) - 1 DL, 1 S, 2^(mu-1) UL
    return {2 * p - 1, 1, p / 2, 5 * p / 2};
  }
  return {4 * p - 1, 1, p, 5 * p};
}

/// Role of an absolute slot index; indices wrap with the TDD period.
[[nodiscard]] constexpr SlotRole slot_role(const TddPattern& pattern, Numerology num,
                                           std::int64_t slot_index) {
  if (slot_index < 0) throw std::domain_error("slot index must be non-negative");
  const SlotCounts c = slot_counts(pattern, num);
  const std::int64_t k = slot_index % c.total;
  if (k < c.dl) return SlotRole::DL;
  if (k == c.dl) return SlotRole::S;
  return SlotRole::UL;
}

/// DL symbols in one TDD period, optionally counting the special slot's DL part.
[[nodiscard]] constexpr Symbols dl_symbols_per_period(const TddPattern& pattern, Numerology num,
                                                      bool include_special_dl) noexcept {
  const SlotCounts c = slot_counts(pattern, num);
  return c.dl * kSymbolsPerSlot + (include_special_dl ? pattern.special_split().dl_symbols : 0);
}

/// Exact DL symbol count over slots [0, n_slots).
///
/// Whole periods are counted in bulk and a trailing partial period slot by slot.
[[nodiscard]] constexpr Symbols dl_symbols_in_slots(const TddPattern& pattern, Numerology num,
                                                    std::int64_t n_slots, bool include_special_dl) {
  if (n_slots < 0) throw std::domain_error("slot window must be non-negative");
  const SlotCounts c = slot_counts(pattern, num);
  Symbols total = (n_slots / c.total) * dl_symbols_per_period(pattern, num, include_special_dl);
  for (std::int64_t s = (n_slots / c.total) * c.total; s < n_slots; ++s) {
    switch (slot_role(pattern, num, s)) {
      case SlotRole::DL: total += kSymbolsPerSlot; break;
      case SlotRole::S: total += include_special_dl ? pattern.special_split().dl_symbols : 0; break;
      case SlotRole::UL: break;
    }
  }
  return total;
}

}  // namespace beammis
