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

// Report generators behind the command-line front end. Each writes CSV to a
// stream and returns a process exit code; none touches global state, so the
// same inputs always give byte-identical output.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "beammis/config.hpp"
#include "beammis/csv.hpp"
#include "beammis/misalignment_model.hpp"
#include "beammis/montecarlo_sim.hpp"
#include "beammis/ssb_schedule.hpp"
#include "beammis/sweep_timing.hpp"

namespace beammis::commands {

/// One (case, pattern, grid options) combination.
struct GridConfig {
  SsbCase ssb_case = SsbCase::D;
  TddPattern pattern = TddPattern::a();
  GridOptions options{};

  [[nodiscard]] SsbGrid build() const { return effective_start_symbols(ssb_case, pattern, options); }
};

/// All 3 cases x 2 patterns x 2 filters with default grid options.
[[nodiscard]] inline std::vector<GridConfig> all_grid_configs() {
  std::vector<GridConfig> out;
  for (SsbCase c : kAllCases) {
    for (TddVariant v : kAllVariants) {
      for (SlotFilter f : kAllFilters) out.push_back({c, TddPattern::of(v), GridOptions{f}});
    }
  }
  return out;
}

/// Effective SSBs per burst set, one row per case in the table layout.
inline int table1(std::ostream& os) {
  csv::Writer w(os);
  w.row({"case", "scs_khz", "agnostic", "a_dl", "a_dl_s", "b_dl", "b_dl_s"});
  for (SsbCase c : kAllCases) {
    const auto count = [c](TddVariant v, SlotFilter f) {
      return csv::num(effective_start_symbols(c, TddPattern::of(v), GridOptions{f}).l_eff());
    };
    w.row({to_string(c), csv::num(numerology_of(c).scs_khz()),
           csv::num(static_cast<int>(agnostic_start_symbols(c).size())), count(TddVariant::A, SlotFilter::DlOnly),
           count(TddVariant::A, SlotFilter::DlAndSpecial), count(TddVariant::B, SlotFilter::DlOnly),
           count(TddVariant::B, SlotFilter::DlAndSpecial)});
  }
  return 0;
}

/// Sweep time against the number of requested SSBs.
inline int sweep_curve(std::ostream& os, const std::vector<GridConfig>& configs, std::int64_t n_min,
                       std::int64_t n_max, int tau_ss_ms) {
  if (n_min < 1 || n_max < n_min) throw ConfigError("n_req range must satisfy 1 <= min <= max");
  csv::Writer w(os);
  w.row({"case", "pattern", "filter", "n_req", "t_sweep_ms", "tau_sweep_ms", "n_sweep_sets"});
  for (const auto& cfg : configs) {
    const SsbGrid grid = cfg.build();
    for (std::int64_t n = n_min; n <= n_max; ++n) {
      const SweepTiming t = sweep_time(grid, {n, tau_ss_ms});
      w.row({to_string(cfg.ssb_case), to_string(cfg.pattern.variant()), to_string(cfg.options.filter), csv::num(n),
             csv::num(t.t_sweep_ms()), csv::num(t.tau_sweep_ms()), csv::num(t.n_sweep_sets)});
    }
  }
  return 0;
}

/// Start symbols with their slot and segment, one row per SSB.
inline int grid_dump(std::ostream& os, const GridConfig& cfg) {
  const SsbGrid grid = cfg.build();
  csv::Writer w(os);
  w.row({"case", "pattern", "filter", "ssb_index", "start_symbol", "slot", "segment", "segment_capacity",
         "gap_after_slots"});
  const auto segs = grid.segments();
  std::size_t seg = 0;
  int index = 0;
  for (int l : grid.start_symbols()) {
    const std::int64_t slot = l / kSymbolsPerSlot;
    while (slot >= segs[seg].first_slot + segs[seg].slots) ++seg;
    w.row({to_string(cfg.ssb_case), to_string(cfg.pattern.variant()), to_string(cfg.options.filter),
           csv::num(index++), csv::num(l), csv::num(slot), csv::num(static_cast<int>(seg + 1)),
           csv::num(segs[seg].capacity), csv::num(segs[seg].gap_slots)});
  }
  return 0;
}

/// A sweep axis: a scenario key and the values it takes.
struct Axis {
  std::string name;
  std::vector<std::string> values;
};

/// Parses "key=v1,v2,..." or "key=first:last[:step]" (numeric range).
[[nodiscard]] inline Axis parse_axis(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos) throw ConfigError("axis must look like key=values");
  Axis axis{config::trim(spec.substr(0, eq)), {}};
  if (!config::is_key(axis.name)) throw ConfigError("axis must name a scenario key, got " + axis.name);
  const std::string body = config::trim(spec.substr(eq + 1));
  if (body.find(':') != std::string::npos && axis.name != "special_split") {
    std::vector<double> parts;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(config::parse_double(axis.name, config::trim(tok)));
    if (parts.size() < 2 || parts.size() > 3) throw ConfigError("range must be first:last[:step]");
    const double step = parts.size() == 3 ? parts[2] : 1.0;
    if (!(step > 0.0) || parts[1] < parts[0]) throw ConfigError("range must be increasing with a positive step");
    const auto count = static_cast<std::int64_t>(std::floor((parts[1] - parts[0]) / step + 1e-9)) + 1;
    for (std::int64_t i = 0; i < count; ++i) axis.values.push_back(csv::num(parts[0] + static_cast<double>(i) * step));
  } else {
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (auto t = config::trim(tok); !t.empty()) axis.values.push_back(std::move(t));
    }
  }
  if (axis.values.empty()) throw ConfigError("axis has no values");
  return axis;
}

/// Misalignment metrics along an axis. Rows with a fraction above 1 are still
/// emitted, with valid = 0.
inline int metric_curves(std::ostream& os, const Scenario& base, const Axis& axis, bool gain_db) {
  csv::Writer w(os);
  w.row({axis.name, "big_gamma_ms", "gamma_bs", "gamma_ue", "gamma_total", "eta_oh",
         gain_db ? "e_gain_db" : "e_gain", "valid"});
  for (const auto& value : axis.values) {
    Scenario s = base;
    config::apply(s, axis.name, value);
    const MisalignmentReport r = average_gain(s);
    const double gain = gain_db ? 10.0 * std::log10(r.e_gain) : r.e_gain;
    w.row({value, csv::num(r.big_gamma_ms), csv::num(r.bs.gamma), csv::num(r.ue.gamma), csv::num(r.gamma_total),
           csv::num(r.eta_oh), csv::num(gain), r.valid() ? "1" : "0"});
  }
  return 0;
}

using SweepFn = std::function<SweepTiming(const SsbGrid&, const SweepRequest&)>;

struct Mismatch {
  GridConfig config;
  std::int64_t n_req;
  SweepTiming closed_form;
  SweepTiming oracle;
};

struct ValidationReport {
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::optional<Mismatch> first;
};

/// Compares `closed_form` against the reference lookup for every
/// configuration and 1 <= n_req <= n_max.
[[nodiscard]] inline ValidationReport validate_equivalence(std::int64_t n_max, int tau_ss_ms,
                                                           const SweepFn& closed_form = sweep_time_closed_form,
                                                           const std::vector<GridConfig>& configs = all_grid_configs()) {
  if (n_max < 1) throw ConfigError("n_req_max must be at least 1");
  ValidationReport rep;
  for (const auto& cfg : configs) {
    const SsbGrid grid = cfg.build();
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const SweepRequest req{n, tau_ss_ms};
      const SweepTiming a = closed_form(grid, req);
      const SweepTiming b = sweep_time_oracle(grid, req);
      ++rep.checks;
      if (!(a == b)) {
        ++rep.failures;
        if (!rep.first) rep.first = Mismatch{cfg, n, a, b};
      }
    }
  }
  return rep;
}

inline int validate(std::ostream& os, const ValidationReport& rep) {
  csv::Writer w(os);
  w.row({"checks", "failures", "status"});
  w.row({csv::num(rep.checks), csv::num(rep.failures), rep.failures == 0 ? "pass" : "fail"});
  if (rep.first) {
    const Mismatch& m = *rep.first;
    os << '\n';
    w.row({"case", "pattern", "filter", "n_req", "route", "sweep_symbols_c", "sweep_symbols_r", "n_complete_sets",
           "residual_ssbs", "n_sweep_sets"});
    const auto line = [&](std::string_view route, const SweepTiming& t) {
      w.row({to_string(m.config.ssb_case), to_string(m.config.pattern.variant()), to_string(m.config.options.filter),
             csv::num(m.n_req), route, csv::num(t.sweep_symbols_c), csv::num(t.sweep_symbols_r),
             csv::num(t.n_complete_sets), csv::num(t.residual_ssbs), csv::num(t.n_sweep_sets)});
    };
    line("closed_form", m.closed_form);
    line("oracle", m.oracle);
  }
  return rep.failures == 0 ? 0 : 1;
}

struct ComparisonRow {
  std::string metric;
  double analytic;
  SimEstimate simulated;
  bool gated;  ///< counts toward the exit status
  [[nodiscard]] double z() const noexcept {
    return z_score(simulated.mean, analytic, simulated.standard_error);
  }
};

/// Analytic-vs-simulated rows. Gamma is reported but not gated: the episode
/// mean and the weighted duration are different quantities once overlaps are
/// frequent.
[[nodiscard]] inline std::vector<ComparisonRow> comparison_rows(const SimulationResult& sim) {
  const MisalignmentReport& a = sim.analytic;
  const auto occupancy = [](double load) { return load / (1.0 + load); };
  return {
      {"gamma_bs", a.bs.gamma, sim.gamma_bs, true},
      {"gamma_ue", a.ue.gamma, sim.gamma_ue, true},
      {"occupancy_bs", occupancy(a.bs.gamma), sim.occupancy_bs, true},
      {"occupancy_ue", occupancy(a.ue.gamma), sim.occupancy_ue, true},
      {"gamma_total", a.gamma_total, sim.gamma_total, true},
      {"big_gamma_ms", a.big_gamma_ms, sim.big_gamma_ms, false},
      {"e_gain", a.e_gain, sim.e_gain, true},
  };
}

inline int simulate(std::ostream& os, const SimConfig& cfg, double z_max) {
  const SimulationResult sim = beammis::simulate(cfg);
  csv::Writer w(os);
  w.row({"metric", "analytic", "simulated", "stderr", "z_score", "seed"});
  bool ok = true;
  for (const auto& row : comparison_rows(sim)) {
    const double z = row.z();
    if (row.gated && !(std::abs(z) <= z_max)) ok = false;
    w.row({row.metric, csv::num(row.analytic), csv::num(row.simulated.mean), csv::num(row.simulated.standard_error),
           csv::num(z), csv::num(cfg.seed)});
  }
  return ok ? 0 : 1;
}

}  // namespace beammis::commands
