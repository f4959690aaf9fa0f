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

// Misalignment analytics.
//
// Misalignment events at each end arrive as a Poisson process with rate
//   beta = N_beam * sqrt(lambda) * v / pi.
// Each event lasts T_M = T_next + T_last + T_proc, with
//   E[T_M] = tau_sweep / 2 + (1 - 1/N) T_SS + (1/N) T_sweep,r + T_proc
// where N is the number of burst sets per sweep period. Fractions follow
// gamma = beta * E[T_M], combined by inclusion-exclusion, and weigh the
// single-sided and overlapping episode durations into Gamma. The average
// beamforming gain uses main-lobe gain N and side-lobe gain 1/N at each end,
// derated by the SSB overhead.
//
// Units: ms for durations, m for distances, m/s for speed, events/s for
// rates, linear gain.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "beammis/numerology.hpp"
#include "beammis/ssb_schedule.hpp"
#include "beammis/sweep_timing.hpp"
#include "beammis/tdd_frames.hpp"

namespace beammis {

inline constexpr double kBurstWindowDurationMs = kBurstWindowMs;

/// Inter-site distance to BS density conversion.
enum class DensityModel {
  InverseSquare,  ///< lambda = 4 / (pi d^2), BSs per m^2
  AsPrinted,      ///< lambda = 4 / (pi d), the unsquared form
};

[[nodiscard]] constexpr std::string_view to_string(DensityModel m) noexcept {
  return m == DensityModel::InverseSquare ? "inverse-square" : "as-printed";
}

enum class Side { BS, UE };

/// Full parameter bundle for one evaluation. Exactly one of `isd_m` and
/// `lambda_per_m2` is set; the other is derived.
struct Scenario {
  std::optional<double> isd_m = 100.0;
  std::optional<double> lambda_per_m2;
  DensityModel density_model = DensityModel::InverseSquare;
  double speed_mps = 2.0;
  int n_beam_bs = 16;
  int n_beam_ue = 4;
  int tau_ss_ms = 20;
  double t_proc_ms = 1.0;
  SsbCase ssb_case = SsbCase::D;
  TddPattern pattern = TddPattern::a();
  GridOptions grid{};

  [[nodiscard]] std::int64_t n_ssb_req() const noexcept {
    return static_cast<std::int64_t>(n_beam_bs) * n_beam_ue;
  }
  [[nodiscard]] double lambda() const;
  void validate() const;
};

[[nodiscard]] inline double density_from_isd(double d_isd_m,
                                             DensityModel model = DensityModel::InverseSquare) {
  if (!(d_isd_m > 0.0) || !std::isfinite(d_isd_m)) {
    throw std::domain_error("inter-site distance must be positive");
  }
  const double denom = model == DensityModel::InverseSquare ? d_isd_m * d_isd_m : d_isd_m;
  return 4.0 / (std::numbers::pi * denom);
}

inline double Scenario::lambda() const {
  if (lambda_per_m2) return *lambda_per_m2;
  if (isd_m) return density_from_isd(*isd_m, density_model);
  throw ConfigError("scenario needs an inter-site distance or a BS density");
}

inline void Scenario::validate() const {
  if (isd_m.has_value() == lambda_per_m2.has_value()) {
    throw ConfigError("set exactly one of inter-site distance and BS density");
  }
  if (isd_m && !(*isd_m > 0.0)) throw ConfigError("inter-site distance must be positive");
  if (lambda_per_m2 && !(*lambda_per_m2 > 0.0)) throw ConfigError("BS density must be positive");
  if (!(speed_mps >= 0.0) || !std::isfinite(speed_mps)) throw ConfigError("speed must be non-negative");
  if (n_beam_bs < 1 || n_beam_ue < 1) throw ConfigError("beam counts must be at least 1");
  if (!is_allowed_tau_ss(tau_ss_ms)) throw ConfigError("tau_ss must be one of 5,10,20,40,80,160 ms");
  if (!(t_proc_ms >= 0.0) || !std::isfinite(t_proc_ms)) throw ConfigError("processing time must be non-negative");
}

/// Misalignment event rate in events per second.
[[nodiscard]] inline double misalignment_rate(int n_beam, double lambda_per_m2, double speed_mps) {
  if (n_beam < 1) throw std::domain_error("beam count must be at least 1");
  if (!(lambda_per_m2 > 0.0)) throw std::domain_error("BS density must be positive");
  if (!(speed_mps >= 0.0)) throw std::domain_error("speed must be non-negative");
  return n_beam * std::sqrt(lambda_per_m2) * speed_mps / std::numbers::pi;
}

/// Probability of at least one misalignment event within `tau_s` seconds.
[[nodiscard]] inline double misalignment_prob(double beta_per_s, double tau_s) {
  if (!(tau_s >= 0.0)) throw std::domain_error("observation period must be non-negative");
  if (!(beta_per_s >= 0.0)) throw std::domain_error("rate must be non-negative");
  return -std::expm1(-beta_per_s * tau_s);
}

[[nodiscard]] inline double expected_t_next(double tau_sweep_ms) {
  if (!(tau_sweep_ms > 0.0)) throw std::domain_error("sweep period must be positive");
  return tau_sweep_ms / 2.0;
}

[[nodiscard]] inline double expected_t_last(std::int64_t n_sweep_sets, double t_ss_ms, double t_sweep_r_ms) {
  if (n_sweep_sets < 1) throw std::domain_error("sweep needs at least one burst set");
  const double inv = 1.0 / static_cast<double>(n_sweep_sets);
  return (1.0 - inv) * t_ss_ms + inv * t_sweep_r_ms;
}

[[nodiscard]] inline double expected_t_m(double tau_sweep_ms, std::int64_t n_sweep_sets, double t_sweep_r_ms,
                                         double t_proc_ms) {
  return expected_t_next(tau_sweep_ms) + expected_t_last(n_sweep_sets, kBurstWindowDurationMs, t_sweep_r_ms) +
         t_proc_ms;
}

/// Expected misalignment duration; identical for the BS and UE ends.
[[nodiscard]] inline double expected_t_m(const SweepTiming& timing, double t_proc_ms) {
  return expected_t_m(timing.tau_sweep_ms(), timing.n_sweep_sets, timing.t_sweep_r_ms(), t_proc_ms);
}

/// Expected length of an overlapping episode where the second end misaligns
/// uniformly within the first end's episode:
///   E[T_BS] + E[T_UE^2] / (2 E[T_BS]),  E[T_UE^2] = (4/3) E[T_UE]^2
/// with T_UE modelled as uniform on [0, 2 E[T_UE]]. Equal means give 5/3.
[[nodiscard]] inline double overlap_duration(double e_t_bs_ms, double e_t_ue_ms) {
  if (!(e_t_bs_ms > 0.0)) throw std::domain_error("first episode duration must be positive");
  if (!(e_t_ue_ms >= 0.0)) throw std::domain_error("second episode duration must be non-negative");
  const double second_moment = e_t_ue_ms * e_t_ue_ms / 3.0 + e_t_ue_ms * e_t_ue_ms;
  return e_t_bs_ms + second_moment / (2.0 * e_t_bs_ms);
}

/// A misalignment fraction together with the gamma <= 1 validity condition.
struct Fraction {
  double value;
  bool valid;
};

[[nodiscard]] inline Fraction gamma_fraction(double beta_per_s, double e_t_m_ms) {
  if (!(beta_per_s >= 0.0) || !(e_t_m_ms >= 0.0)) throw std::domain_error("rate and duration must be non-negative");
  const double g = beta_per_s * e_t_m_ms / 1000.0;
  return {g, g <= 1.0};
}

namespace detail {
[[nodiscard]] constexpr double union_fraction(double a, double b) noexcept { return a + b - a * b; }
}  // namespace detail

/// Fraction of time at least one end is misaligned (independent ends).
[[nodiscard]] inline double gamma_total(double gamma_bs, double gamma_ue) {
  if (!(gamma_bs >= 0.0 && gamma_bs <= 1.0) || !(gamma_ue >= 0.0 && gamma_ue <= 1.0)) {
    throw std::domain_error("misalignment fractions must lie in [0, 1]");
  }
  return detail::union_fraction(gamma_bs, gamma_ue);
}

/// Share of misaligned time that is BS-only, UE-only, or both.
struct Weights {
  double p_b;
  double p_u;
  double p_bu;
};

/// Empty when neither end ever misaligns.
[[nodiscard]] inline std::optional<Weights> weights(double gamma_bs, double gamma_ue) {
  const double total = detail::union_fraction(gamma_bs, gamma_ue);
  if (total == 0.0) return std::nullopt;
  return Weights{gamma_bs * (1.0 - gamma_ue) / total, gamma_ue * (1.0 - gamma_bs) / total,
                 gamma_bs * gamma_ue / total};
}

/// Gamma: weighted episode duration.
[[nodiscard]] inline double overall_duration(const Weights& w, double e_t_bs_ms, double e_t_ue_ms,
                                             double e_t_bu_ms) {
  if (std::abs(w.p_b + w.p_u + w.p_bu - 1.0) > 1e-9) throw std::domain_error("weights must sum to 1");
  return w.p_b * e_t_bs_ms + w.p_u * e_t_ue_ms + w.p_bu * e_t_bu_ms;
}

/// Fraction of DL symbols taken by SSBs over one sweep period. Special-slot DL
/// symbols count in the denominator only when the grid admits the S slot.
[[nodiscard]] inline double ssb_overhead(const Scenario& scenario, const SweepTiming& timing) {
  const Numerology num = timing.numerology;
  const std::int64_t window_slots = timing.n_sweep_sets * num.slots_in_ms(timing.tau_ss_ms);
  const Symbols dl = dl_symbols_in_slots(scenario.pattern, num, window_slots,
                                         scenario.grid.filter == SlotFilter::DlAndSpecial);
  const auto ssb_symbols = static_cast<double>(scenario.n_ssb_req()) * kSymbolsPerSsb;
  return ssb_symbols / static_cast<double>(dl);
}

/// Expected antenna gain of one end: main lobe while aligned, side lobe
/// while misaligned.
[[nodiscard]] constexpr double expected_end_gain(double gamma, int n_beam) noexcept {
  return (1.0 - gamma) * n_beam + gamma / n_beam;
}

struct SideMetrics {
  Side side;
  double beta_per_s;
  double e_t_m_ms;
  double gamma;
  bool valid;
};

struct MisalignmentReport {
  int l_eff = 0;
  SweepTiming timing;
  SideMetrics bs{Side::BS, 0, 0, 0, true};
  SideMetrics ue{Side::UE, 0, 0, 0, true};
  double e_t_bu_ms = 0;
  double gamma_total = 0;
  std::optional<Weights> weights;  ///< empty in the no-misalignment state
  double big_gamma_ms = 0;         ///< 0 in the no-misalignment state
  double eta_oh = 0;
  double e_gain = 0;

  [[nodiscard]] bool valid() const noexcept { return bs.valid && ue.valid; }
};

/// Evaluates the full chain for one scenario: grid, sweep timing, rates,
/// durations, fractions, weights, Gamma, SSB overhead and E[G].
///
/// Fractions above 1 are kept as computed and marked invalid.
[[nodiscard]] inline MisalignmentReport average_gain(const Scenario& scenario) {
  scenario.validate();
  const SsbGrid grid = effective_start_symbols(scenario.ssb_case, scenario.pattern, scenario.grid);
  MisalignmentReport rep;
  rep.l_eff = grid.l_eff();
  rep.timing = sweep_time(grid, {scenario.n_ssb_req(), scenario.tau_ss_ms});

  const double lambda = scenario.lambda();
  const double e_t_m = expected_t_m(rep.timing, scenario.t_proc_ms);
  const auto side = [&](Side s, int n_beam) {
    const double beta = misalignment_rate(n_beam, lambda, scenario.speed_mps);
    const Fraction g = gamma_fraction(beta, e_t_m);
    return SideMetrics{s, beta, e_t_m, g.value, g.valid};
  };
  rep.bs = side(Side::BS, scenario.n_beam_bs);
  rep.ue = side(Side::UE, scenario.n_beam_ue);

  rep.e_t_bu_ms = overlap_duration(rep.bs.e_t_m_ms, rep.ue.e_t_m_ms);
  rep.gamma_total = detail::union_fraction(rep.bs.gamma, rep.ue.gamma);
  rep.weights = weights(rep.bs.gamma, rep.ue.gamma);
  if (rep.weights) {
    const Weights& w = *rep.weights;
    rep.big_gamma_ms = w.p_b * rep.bs.e_t_m_ms + w.p_u * rep.ue.e_t_m_ms + w.p_bu * rep.e_t_bu_ms;
  }
  rep.eta_oh = ssb_overhead(scenario, rep.timing);
  rep.e_gain = (1.0 - rep.eta_oh) * expected_end_gain(rep.bs.gamma, scenario.n_beam_bs) *
               expected_end_gain(rep.ue.gamma, scenario.n_beam_ue);
  return rep;
}

}  // namespace beammis
