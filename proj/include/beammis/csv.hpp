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

#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

namespace beammis::csv {

/// Shortest general-format rendering with at most 6 significant digits.
/// Independent of the global locale.
[[nodiscard]] inline std::string num(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

[[nodiscard]] inline std::string num(std::int64_t v) { return std::to_string(v); }
[[nodiscard]] inline std::string num(int v) { return std::to_string(v); }
[[nodiscard]] inline std::string num(std::uint64_t v) { return std::to_string(v); }

/// RFC 4180 field quoting: fields containing a comma, quote or line break
/// are wrapped in double quotes with embedded quotes doubled.
[[nodiscard]] inline std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}

  void row(std::initializer_list<std::string_view> fields) {
    bool first = true;
    for (auto f : fields) {
      if (!first) os_ << ',';
      os_ << quote(f);
      first = false;
    }
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

}  // namespace beammis::csv
