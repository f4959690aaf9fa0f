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

// Stochastic cross-check of the misalignment analytics.
//
// Each replication draws two independent Poisson event streams (BS, UE).
// Every event samples a duration T_M = T_next + T_last + T_proc. An event
// arriving while its own end is already misaligned is absorbed: it does not
// open or extend an episode, but its duration still counts toward the load
// (mean number of outstanding events, the Little's-law quantity
// beta * E[T_M]). Occupancy is the fraction of time an end is misaligned;
// the union of both ends' episodes gives the total fraction, the mean
// episode length Gamma and the time-averaged gain.
//
// Replications are independent and seeded from (seed, replication index);
// results are merged in replication order, so parallel and serial runs are
// bit-identical.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "beammis/misalignment_model.hpp"
#include "beammis/ssb_schedule.hpp"
#include "beammis/sweep_timing.hpp"

namespace beammis {

using Rng = std::mt19937_64;

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for sub-stream `stream` of replication `replication`.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replication,
                                                  std::uint64_t stream) noexcept {
  std::uint64_t s = seed;
  std::uint64_t out = splitmix64(s);
  s ^= replication * 0xD1B54A32D192ED03ULL;
  out ^= splitmix64(s);
  s ^= stream * 0x8CB92BA72F3D8DD7ULL;
  out ^= splitmix64(s);
  return out;
}

struct SimConfig {
  Scenario scenario;
  double horizon_s = 0.0;  ///< per replication; 0 picks recommended_horizon_s
  std::uint64_t seed = 42;
  int replications = 20;
  bool parallel = false;
};

struct SimEstimate {
  std::string metric;
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Mean and standard error of `values` (sample standard deviation / sqrt(n)).
[[nodiscard]] inline SimEstimate summarize(std::string metric, std::span<const double> values, std::uint64_t seed) {
  SimEstimate e{std::move(metric), 0.0, 0.0, static_cast<std::int64_t>(values.size()), seed};
  if (values.empty()) return e;
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
    e.mean = values.front();
    return e;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.standard_error = std::sqrt(ss / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
  }
  return e;
}

/// One draw of the misalignment duration in ms.
[[nodiscard]] inline double sample_t_m(const SweepTiming& timing, double t_proc_ms, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double t_next = unit(rng) * timing.tau_sweep_ms();
  const double p_full = 1.0 - 1.0 / static_cast<double>(timing.n_sweep_sets);
  const double t_last = unit(rng) < p_full ? kBurstWindowDurationMs : timing.t_sweep_r_ms();
  return t_next + t_last + t_proc_ms;
}

[[nodiscard]] inline SimEstimate estimate_t_m(const SweepTiming& timing, double t_proc_ms, std::int64_t n_samples,
                                              std::uint64_t seed) {
  if (n_samples < 2) throw std::domain_error("need at least two samples");
  Rng rng(derive_seed(seed, 0, 0));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double t = sample_t_m(timing, t_proc_ms, rng);
    sum += t;
    sum_sq += t * t;
  }
  const auto n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {"t_m_ms", mean, std::sqrt(var / n), n_samples, seed};
}

/// Length of an overlapping episode: the first end misaligns at 0 for
/// `t_first`, the second at `delta` for `t_second`.
[[nodiscard]] constexpr double overlap_episode(double t_first, double t_second, double delta) noexcept {
  return std::max(t_first, delta + t_second);
}

/// Monte-Carlo mean of overlap_episode(T, T, delta) / T with delta uniform
/// on [0, T] and deterministic T.
[[nodiscard]] inline SimEstimate simulate_overlap_factor(double e_t_m_ms, std::int64_t n_samples, std::uint64_t seed) {
  if (n_samples < 10000) throw std::domain_error("overlap factor needs at least 1e4 samples");
  if (!(e_t_m_ms > 0.0)) throw std::domain_error("duration must be positive");
  Rng rng(derive_seed(seed, 0, 1));
  std::uniform_real_distribution<double> delta(0.0, e_t_m_ms);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double f = overlap_episode(e_t_m_ms, e_t_m_ms, delta(rng)) / e_t_m_ms;
    sum += f;
    sum_sq += f * f;
  }
  const auto n = static_cast<double>(n_samples);
  const double mean = sum / n;
  return {"overlap_factor", mean, std::sqrt(std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) / n), n_samples,
          seed};
}

/// Monte-Carlo mean of (E + T^2 / (2E)) / E with T uniform on [0, 2E]: the
/// second-moment step that turns the overlap integral into a factor of 5/3.
[[nodiscard]] inline SimEstimate simulate_overlap_factor_second_moment(double e_t_m_ms, std::int64_t n_samples,
                                                                       std::uint64_t seed) {
  if (n_samples < 10000) throw std::domain_error("overlap factor needs at least 1e4 samples");
  if (!(e_t_m_ms > 0.0)) throw std::domain_error("duration must be positive");
  Rng rng(derive_seed(seed, 0, 2));
  std::uniform_real_distribution<double> duration(0.0, 2.0 * e_t_m_ms);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double t = duration(rng);
    const double f = (e_t_m_ms + t * t / (2.0 * e_t_m_ms)) / e_t_m_ms;
    sum += f;
    sum_sq += f * f;
  }
  const auto n = static_cast<double>(n_samples);
  const double mean = sum / n;
  return {"overlap_factor_second_moment", mean,
          std::sqrt(std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) / n), n_samples, seed};
}

struct Interval {
  double start;
  double end;
};

/// Per-replication raw measurements.
struct ReplicationResult {
  double load_bs = 0;       ///< sum of all sampled durations / horizon
  double load_ue = 0;
  double occupancy_bs = 0;  ///< misaligned time fraction
  double occupancy_ue = 0;
  double union_fraction = 0;
  double both_fraction = 0;
  double mean_episode_ms = 0;  ///< mean length of maximal union intervals
  std::int64_t episodes = 0;
  std::int64_t events_bs = 0;
  std::int64_t events_ue = 0;
};

namespace detail {

struct SideTrace {
  std::vector<Interval> episodes;
  double load_sum_ms = 0;
  std::int64_t events = 0;
};

inline SideTrace simulate_side(double beta_per_s, const SweepTiming& timing, double t_proc_ms, double horizon_ms,
                               Rng& arrivals, Rng& durations) {
  SideTrace trace;
  if (beta_per_s <= 0.0) return trace;
  std::exponential_distribution<double> gap(beta_per_s / 1000.0);
  double t = 0.0;
  double busy_until = -std::numeric_limits<double>::infinity();
  for (;;) {
    t += gap(arrivals);
    if (t >= horizon_ms) break;
    const double d = sample_t_m(timing, t_proc_ms, durations);
    trace.load_sum_ms += d;
    ++trace.events;
    if (t >= busy_until) {
      trace.episodes.push_back({t, t + d});
      busy_until = t + d;
    }
  }
  return trace;
}

[[nodiscard]] inline double clipped_length(std::span<const Interval> xs, double horizon_ms) {
  double total = 0.0;
  for (const auto& x : xs) total += std::min(x.end, horizon_ms) - x.start;
  return total;
}

/// Maximal runs covered by either sorted, non-overlapping list.
[[nodiscard]] inline std::vector<Interval> merge_union(std::span<const Interval> a, std::span<const Interval> b) {
  std::vector<Interval> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    const bool take_a = j == b.size() || (i < a.size() && a[i].start <= b[j].start);
    const Interval next = take_a ? a[i++] : b[j++];
    if (!out.empty() && next.start <= out.back().end) {
      out.back().end = std::max(out.back().end, next.end);
    } else {
      out.push_back(next);
    }
  }
  return out;
}

}  // namespace detail

[[nodiscard]] inline ReplicationResult run_replication(const Scenario& scenario, const SweepTiming& timing,
                                                       double beta_bs, double beta_ue, double horizon_s,
                                                       std::uint64_t seed, std::uint64_t replication) {
  Rng bs_arrivals(derive_seed(seed, replication, 10));
  Rng bs_durations(derive_seed(seed, replication, 11));
  Rng ue_arrivals(derive_seed(seed, replication, 20));
  Rng ue_durations(derive_seed(seed, replication, 21));
  const double horizon_ms = horizon_s * 1000.0;
  const auto bs = detail::simulate_side(beta_bs, timing, scenario.t_proc_ms, horizon_ms, bs_arrivals, bs_durations);
  const auto ue = detail::simulate_side(beta_ue, timing, scenario.t_proc_ms, horizon_ms, ue_arrivals, ue_durations);
  const auto joint = detail::merge_union(bs.episodes, ue.episodes);

  ReplicationResult r;
  r.load_bs = bs.load_sum_ms / horizon_ms;
  r.load_ue = ue.load_sum_ms / horizon_ms;
  r.occupancy_bs = detail::clipped_length(bs.episodes, horizon_ms) / horizon_ms;
  r.occupancy_ue = detail::clipped_length(ue.episodes, horizon_ms) / horizon_ms;
  r.union_fraction = detail::clipped_length(joint, horizon_ms) / horizon_ms;
  r.both_fraction = r.occupancy_bs + r.occupancy_ue - r.union_fraction;
  r.episodes = static_cast<std::int64_t>(joint.size());
  if (!joint.empty()) {
    double len = 0.0;
    for (const auto& x : joint) len += x.end - x.start;
    r.mean_episode_ms = len / static_cast<double>(joint.size());
  }
  r.events_bs = bs.events;
  r.events_ue = ue.events;
  return r;
}

/// Horizon per replication giving about `min_events` events in total.
[[nodiscard]] inline double recommended_horizon_s(double beta_bs, double beta_ue, int replications,
                                                  double min_events = 1e5) {
  const double rate = beta_bs + beta_ue;
  if (rate <= 0.0) return 1.0;
  return min_events / (rate * std::max(1, replications));
}

struct SimulationResult {
  MisalignmentReport analytic;
  double horizon_s = 0;
  SimEstimate gamma_bs;      ///< load, estimates beta_BS * E[T_M]
  SimEstimate gamma_ue;
  SimEstimate occupancy_bs;  ///< fraction of time the BS end is misaligned
  SimEstimate occupancy_ue;
  SimEstimate gamma_total;   ///< fraction of time either end is misaligned
  SimEstimate big_gamma_ms;  ///< mean maximal misalignment episode
  SimEstimate e_gain;        ///< time-averaged gain
  std::vector<ReplicationResult> replications;
};

[[nodiscard]] inline double instantaneous_gain_average(const ReplicationResult& r, double eta_oh, int n_bs, int n_ue) {
  const double bs_only = r.occupancy_bs - r.both_fraction;
  const double ue_only = r.occupancy_ue - r.both_fraction;
  const double aligned = 1.0 - r.union_fraction;
  const double nb = n_bs;
  const double nu = n_ue;
  return (1.0 - eta_oh) *
         (aligned * nb * nu + bs_only * nu / nb + ue_only * nb / nu + r.both_fraction / (nb * nu));
}

[[nodiscard]] inline SimulationResult simulate(const SimConfig& cfg) {
  if (cfg.replications < 2) throw std::domain_error("need at least two replications for a standard error");
  SimulationResult out;
  out.analytic = average_gain(cfg.scenario);
  const SweepTiming& timing = out.analytic.timing;
  const double beta_bs = out.analytic.bs.beta_per_s;
  const double beta_ue = out.analytic.ue.beta_per_s;
  out.horizon_s = cfg.horizon_s > 0.0 ? cfg.horizon_s : recommended_horizon_s(beta_bs, beta_ue, cfg.replications);

  const auto run = [&](int rep) {
    return run_replication(cfg.scenario, timing, beta_bs, beta_ue, out.horizon_s, cfg.seed,
                           static_cast<std::uint64_t>(rep));
  };
  out.replications.resize(static_cast<std::size_t>(cfg.replications));
  if (cfg.parallel) {
    std::vector<std::future<ReplicationResult>> jobs;
    jobs.reserve(out.replications.size());
    for (int rep = 0; rep < cfg.replications; ++rep) jobs.push_back(std::async(std::launch::async, run, rep));
    for (std::size_t i = 0; i < jobs.size(); ++i) out.replications[i] = jobs[i].get();
  } else {
    for (int rep = 0; rep < cfg.replications; ++rep) out.replications[static_cast<std::size_t>(rep)] = run(rep);
  }

  const auto collect = [&](const char* name, auto field) {
    std::vector<double> v;
    v.reserve(out.replications.size());
    for (const auto& r : out.replications) v.push_back(field(r));
    return summarize(name, v, cfg.seed);
  };
  out.gamma_bs = collect("gamma_bs", [](const ReplicationResult& r) { return r.load_bs; });
  out.gamma_ue = collect("gamma_ue", [](const ReplicationResult& r) { return r.load_ue; });
  out.occupancy_bs = collect("occupancy_bs", [](const ReplicationResult& r) { return r.occupancy_bs; });
  out.occupancy_ue = collect("occupancy_ue", [](const ReplicationResult& r) { return r.occupancy_ue; });
  out.gamma_total = collect("gamma_total", [](const ReplicationResult& r) { return r.union_fraction; });
  out.big_gamma_ms = collect("big_gamma_ms", [](const ReplicationResult& r) { return r.mean_episode_ms; });
  const double eta = out.analytic.eta_oh;
  const int n_bs = cfg.scenario.n_beam_bs;
  const int n_ue = cfg.scenario.n_beam_ue;
  out.e_gain = collect("e_gain", [&](const ReplicationResult& r) { return instantaneous_gain_average(r, eta, n_bs, n_ue); });
  return out;
}

struct FractionEstimates {
  SimEstimate gamma_bs;
  SimEstimate gamma_ue;
  SimEstimate occupancy_bs;
  SimEstimate occupancy_ue;
  SimEstimate gamma_total;
  SimEstimate big_gamma_ms;
};

[[nodiscard]] inline FractionEstimates simulate_fractions(const SimConfig& cfg) {
  auto r = simulate(cfg);
  return {std::move(r.gamma_bs),     std::move(r.gamma_ue),    std::move(r.occupancy_bs),
          std::move(r.occupancy_ue), std::move(r.gamma_total), std::move(r.big_gamma_ms)};
}

[[nodiscard]] inline SimEstimate simulate_gain(const SimConfig& cfg) { return simulate(cfg).e_gain; }

/// Standardized difference; 0 when both agree exactly with zero spread.
[[nodiscard]] inline double z_score(double simulated, double analytic, double standard_error) noexcept {
  if (standard_error > 0.0) return (simulated - analytic) / standard_error;
  if (simulated == analytic) return 0.0;
  return simulated > analytic ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

}  // namespace beammis
