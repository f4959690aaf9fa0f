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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace beammis {

/// Signed symbol count. All schedule arithmetic is done in whole symbols.
using Symbols = std::int64_t;

inline constexpr int kSymbolsPerSlot = 14;
inline constexpr int kSymbolsPerSsb = 4;

/// Raised when a configuration is internally inconsistent (empty grid,
/// unknown enum spelling, unsupported combination).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// NR numerology index mu with subcarrier spacing 15 * 2^mu kHz.
///
/// Only the FR2-relevant range 1..6 is accepted. Durations are exposed both as
/// exact integer counts per millisecond and as floating point conveniences for
/// presentation.
class Numerology {
 public:
  static constexpr int kMinMu = 1;
  static constexpr int kMaxMu = 6;

  constexpr explicit Numerology(int mu) : mu_(checked(mu)) {}

  [[nodiscard]] constexpr int mu() const noexcept { return mu_; }
  [[nodiscard]] constexpr int scs_khz() const noexcept { return 15 << mu_; }
  [[nodiscard]] constexpr int slots_per_ms() const noexcept { return 1 << mu_; }
  [[nodiscard]] constexpr Symbols symbols_per_ms() const noexcept {
    return static_cast<Symbols>(kSymbolsPerSlot) << mu_;
  }
  [[nodiscard]] constexpr double slot_duration_ms() const noexcept {
    return 1.0 / static_cast<double>(slots_per_ms());
  }
  [[nodiscard]] constexpr double symbol_duration_ms() const noexcept {
    return 1.0 / static_cast<double>(symbols_per_ms());
  }
  [[nodiscard]] constexpr double to_ms(Symbols symbols) const noexcept {
    return static_cast<double>(symbols) / static_cast<double>(symbols_per_ms());
  }
  /// Slots spanned by a whole number of milliseconds.
  [[nodiscard]] constexpr std::int64_t slots_in_ms(std::int64_t ms) const noexcept {
    return ms * slots_per_ms();
  }

  friend constexpr bool operator==(Numerology, Numerology) = default;

 private:
  static constexpr int checked(int mu) {
    if (mu < kMinMu || mu > kMaxMu) {
      throw std::domain_error("numerology mu must be in 1..6, got " + std::to_string(mu));
    }
    return mu;
  }

  int mu_;
};

}  // namespace beammis
