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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "beammis/commands.hpp"
#include "beammis/config.hpp"

namespace {

using namespace beammis;

// Scenario flags in the order they are applied on top of the config file.
struct ScenarioFlags {
  std::vector<std::pair<std::string, std::string>> flag_to_key{
      {"--case", "case"},       {"--pattern", "pattern"},     {"--special-split", "special_split"},
      {"--filter", "filter"},   {"--admission", "admission"}, {"--ssb-per-slot", "ssb_per_slot"},
      {"--isd", "isd"},         {"--lambda", "lambda"},       {"--density-model", "density_model"},
      {"--speed", "speed"},     {"--nbs", "nbs"},             {"--nue", "nue"},
      {"--tau-ss", "tau_ss"},   {"--tproc", "tproc"}};
  std::vector<std::string> values = std::vector<std::string>(flag_to_key.size());
  std::vector<CLI::Option*> options = std::vector<CLI::Option*>(flag_to_key.size(), nullptr);

  void add(CLI::App& app) {
    const char* help[] = {"SSB case D|F|G",
                          "TDD pattern a|b",
                          "pattern b special slot split 6:4:4|4:6:4",
                          "slot filter dl|dl+s",
                          "special slot admission role|dl-symbols",
                          "SSBs per slot 1|2",
                          "inter-site distance [m]",
                          "BS density [1/m^2], instead of --isd",
                          "ISD to density conversion inverse-square|as-printed",
                          "UE speed [m/s]",
                          "BS beams",
                          "UE beams",
                          "burst-set periodicity [ms]",
                          "processing time [ms]"};
    for (std::size_t i = 0; i < flag_to_key.size(); ++i) {
      options[i] = app.add_option(flag_to_key[i].first, values[i], help[i]);
    }
  }

  [[nodiscard]] bool given(std::string_view key) const {
    for (std::size_t i = 0; i < flag_to_key.size(); ++i) {
      if (flag_to_key[i].second == key) return options[i]->count() > 0;
    }
    return false;
  }

  void apply(Scenario& s) const {
    for (std::size_t i = 0; i < flag_to_key.size(); ++i) {
      if (options[i]->count() > 0) config::apply(s, flag_to_key[i].second, values[i]);
    }
  }
};

std::vector<commands::GridConfig> selected_configs(const ScenarioFlags& flags, const Scenario& s) {
  std::vector<commands::GridConfig> out;
  for (SsbCase c : kAllCases) {
    if (flags.given("case") && c != s.ssb_case) continue;
    for (TddVariant v : kAllVariants) {
      if (flags.given("pattern") && v != s.pattern.variant()) continue;
      const TddPattern pattern = v == s.pattern.variant() ? s.pattern : TddPattern::of(v);
      for (SlotFilter f : kAllFilters) {
        if (flags.given("filter") && f != s.grid.filter) continue;
        GridOptions opt = s.grid;
        opt.filter = f;
        out.push_back({c, pattern, opt});
      }
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beam misalignment analytics for mmWave NR analog beamforming"};
  app.require_subcommand(1);
  app.fallthrough();

  ScenarioFlags flags;
  flags.add(app);
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 42;
  bool db = false;
  app.add_option("--config", config_path, "key=value scenario file; flags override it")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "output CSV path (default stdout)");
  app.add_option("--seed", seed, "random seed for simulate");
  app.add_flag("--db", db, "report gain columns in dB");

  auto* table1 = app.add_subcommand("table1", "effective SSBs per burst set for every case, pattern and filter");

  auto* sweep = app.add_subcommand("sweep-curve", "sweep time against requested SSBs");
  std::int64_t n_min = 1;
  std::int64_t n_max = 512;
  sweep->add_option("--n-min", n_min, "first N_req");
  sweep->add_option("--n-max", n_max, "last N_req");

  std::string axis_spec = "nbs=1:128";
  std::vector<CLI::App*> curves;
  const std::pair<const char*, const char*> curve_commands[] = {
      {"duration-curve", "misalignment duration along a scenario axis"},
      {"fraction-curve", "misalignment fractions along a scenario axis"},
      {"gain-curve", "average beamforming gain along a scenario axis"}};
  for (const auto& [name, help] : curve_commands) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("--axis", axis_spec, "key=v1,v2,... or key=first:last[:step]")->capture_default_str();
    curves.push_back(c);
  }

  auto* grid = app.add_subcommand("grid-dump", "effective SSB start symbols and segments");

  auto* validate = app.add_subcommand("validate", "closed-form sweep time against the reference lookup");
  std::int64_t validate_max = 512;
  validate->add_option("--n-max", validate_max, "largest N_req checked");

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo comparison with the analytic model");
  int replications = 20;
  double horizon_s = 0.0;
  double z_max = 4.0;
  bool parallel = false;
  simulate->add_option("--replications", replications, "independent replications (>= 2)");
  simulate->add_option("--horizon", horizon_s, "simulated seconds per replication (0 = automatic)");
  simulate->add_option("--z-max", z_max, "largest accepted |z|");
  simulate->add_flag("--parallel", parallel, "run replications concurrently");

  CLI11_PARSE(app, argc, argv);

  try {
    Scenario scenario;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      config::load(scenario, in);
    }
    flags.apply(scenario);

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) {
        std::cerr << "cannot open " << out_path << '\n';
        return 2;
      }
    }
    std::ostream& os = out_path.empty() ? std::cout : file;

    if (*table1) return commands::table1(os);
    if (*sweep) return commands::sweep_curve(os, selected_configs(flags, scenario), n_min, n_max, scenario.tau_ss_ms);
    for (auto* c : curves) {
      if (*c) {
        scenario.validate();
        return commands::metric_curves(os, scenario, commands::parse_axis(axis_spec), db);
      }
    }
    if (*grid) return commands::grid_dump(os, {scenario.ssb_case, scenario.pattern, scenario.grid});
    if (*validate) {
      const auto report = commands::validate_equivalence(validate_max, scenario.tau_ss_ms);
      const int rc = commands::validate(os, report);
      if (rc != 0) std::cerr << "closed form and reference lookup disagree\n";
      return rc;
    }
    if (*simulate) {
      const SimConfig cfg{scenario, horizon_s, seed, replications, parallel};
      const int rc = commands::simulate(os, cfg, z_max);
      if (rc != 0) std::cerr << "at least one metric exceeds |z| > " << z_max << '\n';
      return rc;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
