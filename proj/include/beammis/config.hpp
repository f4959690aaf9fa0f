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

// Flat key=value scenario files.
//
//   # comment
//   case = D            D | F | G
//   pattern = a         a | b
//   special_split = 6:4:4   pattern b only: 6:4:4 | 4:6:4
//   filter = dl         dl | dl+s
//   admission = role    role | dl-symbols
//   ssb_per_slot = 2    1 | 2
//   isd = 100           m (clears lambda)
//   lambda = 1.2e-4     BS/m^2 (clears isd)
//   density_model = inverse-square   inverse-square | as-printed
//   speed = 2           m/s
//   nbs = 16
//   nue = 4
//   tau_ss = 20         ms
//   tproc = 1           ms

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <string>
#include <string_view>
#include <system_error>

#include "beammis/misalignment_model.hpp"

namespace beammis::config {

inline constexpr std::array<std::string_view, 14> kKeys{
    "case", "pattern", "special_split", "filter", "admission", "ssb_per_slot", "isd",
    "lambda", "density_model", "speed", "nbs", "nue", "tau_ss", "tproc"};

[[nodiscard]] inline bool is_key(std::string_view key) {
  return std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
}

[[nodiscard]] inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[nodiscard]] inline double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError("bad number for '" + std::string(key) + "': " + std::string(v));
  }
  return out;
}

[[nodiscard]] inline int parse_int(std::string_view key, std::string_view v) {
  int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError("bad integer for '" + std::string(key) + "': " + std::string(v));
  }
  return out;
}

[[nodiscard]] inline SsbCase parse_case(std::string_view v) {
  if (v == "D" || v == "d") return SsbCase::D;
  if (v == "F" || v == "f") return SsbCase::F;
  if (v == "G" || v == "g") return SsbCase::G;
  throw ConfigError("unknown SSB case: " + std::string(v));
}

[[nodiscard]] inline TddVariant parse_variant(std::string_view v) {
  if (v == "a" || v == "A") return TddVariant::A;
  if (v == "b" || v == "B") return TddVariant::B;
  throw ConfigError("unknown TDD pattern: " + std::string(v));
}

[[nodiscard]] inline SlotFilter parse_filter(std::string_view v) {
  if (v == "dl") return SlotFilter::DlOnly;
  if (v == "dl+s") return SlotFilter::DlAndSpecial;
  throw ConfigError("unknown slot filter: " + std::string(v));
}

[[nodiscard]] inline SpecialSplit parse_split(std::string_view v) {
  if (v == "6:4:4") return TddPattern::kSplitB6;
  if (v == "4:6:4") return TddPattern::kSplitB4;
  if (v == "10:2:2") return TddPattern::kSplitA;
  throw ConfigError("unknown special slot split: " + std::string(v));
}

/// Applies one setting. Unknown keys and malformed values throw ConfigError.
inline void apply(Scenario& s, std::string_view key, std::string_view raw) {
  const std::string v = trim(raw);
  if (key == "case") {
    s.ssb_case = parse_case(v);
  } else if (key == "pattern") {
    if (parse_variant(v) == TddVariant::A) s.pattern = TddPattern::a();
    else if (s.pattern.variant() == TddVariant::A) s.pattern = TddPattern::b();
  } else if (key == "special_split") {
    const SpecialSplit split = parse_split(v);
    if (s.pattern.variant() == TddVariant::A) {
      if (!(split == TddPattern::kSplitA)) throw ConfigError("special_split 6:4:4 / 4:6:4 needs pattern = b first");
    } else {
      if (split == TddPattern::kSplitA) throw ConfigError("pattern b uses a 6:4:4 or 4:6:4 split");
      s.pattern = TddPattern::b(split);
    }
  } else if (key == "filter") {
    s.grid.filter = parse_filter(v);
  } else if (key == "admission") {
    if (v == "role") s.grid.admission = SpecialAdmission::SlotRole;
    else if (v == "dl-symbols") s.grid.admission = SpecialAdmission::DlSymbols;
    else throw ConfigError("unknown admission mode: " + v);
  } else if (key == "ssb_per_slot") {
    s.grid.ssb_per_slot = parse_int(key, v);
  } else if (key == "isd") {
    s.isd_m = parse_double(key, v);
    s.lambda_per_m2.reset();
  } else if (key == "lambda") {
    s.lambda_per_m2 = parse_double(key, v);
    s.isd_m.reset();
  } else if (key == "density_model") {
    if (v == "inverse-square") s.density_model = DensityModel::InverseSquare;
    else if (v == "as-printed") s.density_model = DensityModel::AsPrinted;
    else throw ConfigError("unknown density model: " + v);
  } else if (key == "speed") {
    s.speed_mps = parse_double(key, v);
  } else if (key == "nbs") {
    s.n_beam_bs = parse_int(key, v);
  } else if (key == "nue") {
    s.n_beam_ue = parse_int(key, v);
  } else if (key == "tau_ss") {
    s.tau_ss_ms = parse_int(key, v);
  } else if (key == "tproc") {
    s.t_proc_ms = parse_double(key, v);
  } else {
    throw ConfigError("unknown scenario key: " + std::string(key));
  }
}

/// Reads key=value lines into `s`. Blank lines and '#' comments are skipped.
inline void load(Scenario& s, std::istream& in) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    apply(s, trim(std::string_view(t).substr(0, eq)), std::string_view(t).substr(eq + 1));
  }
}

}  // namespace beammis::config
