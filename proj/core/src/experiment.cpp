// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#include "bellbeam/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "bellbeam/errors.hpp"
#include "bellbeam/rng.hpp"

namespace bellbeam {

namespace {

constexpr double kPi = std::numbers::pi;

int spin_index(Outcome a) { return a == Outcome::Plus ? 0 : 1; }

struct CumulativeTable {
  // Thresholds over the outcomes (+,+), (+,-), (-,+), (-,-); the last one is
  // pinned to 1 so every u in [0,1) lands.
  std::array<double, 4> cum;

  static CumulativeTable from(const JointProbabilityTable& table) {
    CumulativeTable out{};
    double acc = 0.0;
    const auto& p = table.flat();
    for (int k = 0; k < 4; ++k) {
      acc += p[k];
      out.cum[k] = acc;
    }
    out.cum[3] = 1.0;
    return out;
  }

  int draw(double u) const noexcept {
    for (int k = 0; k < 3; ++k)
      if (u < cum[k]) return k;
    return 3;
  }
};

}  // namespace

std::string_view to_string(SettingPair pair) noexcept {
  switch (pair) {
    case SettingPair::R1T1: return "r1t1";
    case SettingPair::R1T2: return "r1t2";
    case SettingPair::R2T1: return "r2t1";
    case SettingPair::R2T2: return "r2t2";
  }
  return "invalid";
}

SubEnsembleCounts::SubEnsembleCounts(int bins) : bins_(bins) {
  if (bins < 1) throw std::domain_error("histogram needs at least one bin");
  edges_.resize(bins_ + 1);
  for (int i = 0; i <= bins_; ++i)
    edges_[i] = kPi * static_cast<double>(i) / bins_;
  both_.assign(static_cast<std::size_t>(bins_) * bins_, 0);
  theta_spin_.assign(static_cast<std::size_t>(bins_) * 2, 0);
  spin_theta_.assign(static_cast<std::size_t>(bins_) * 2, 0);
}

int SubEnsembleCounts::bin_of(double theta) const noexcept {
  const int idx = static_cast<int>(theta / kPi * bins_);
  return std::clamp(idx, 0, bins_ - 1);
}

void SubEnsembleCounts::add(const TrialRecord& r) {
  const SettingPair pair = r.pair();
  ++n_[static_cast<int>(pair)];
  switch (pair) {
    case SettingPair::R1T1:
      ++both_[static_cast<std::size_t>(bin_of(r.side1.theta())) * bins_ +
              bin_of(r.side2.theta())];
      break;
    case SettingPair::R1T2:
      ++theta_spin_[static_cast<std::size_t>(bin_of(r.side1.theta())) * 2 +
                    spin_index(r.side2.spin())];
      break;
    case SettingPair::R2T1:
      ++spin_theta_[static_cast<std::size_t>(spin_index(r.side1.spin())) *
                        bins_ +
                    bin_of(r.side2.theta())];
      break;
    case SettingPair::R2T2:
      ++spin_spin_[spin_index(r.side1.spin()) * 2 +
                   spin_index(r.side2.spin())];
      break;
  }
}

void SubEnsembleCounts::merge(const SubEnsembleCounts& other) {
  if (other.bins_ != bins_)
    throw std::domain_error("cannot merge histograms with different binning");
  for (std::size_t i = 0; i < both_.size(); ++i) both_[i] += other.both_[i];
  for (std::size_t i = 0; i < theta_spin_.size(); ++i)
    theta_spin_[i] += other.theta_spin_[i];
  for (std::size_t i = 0; i < spin_theta_.size(); ++i)
    spin_theta_[i] += other.spin_theta_[i];
  for (int i = 0; i < 4; ++i) {
    spin_spin_[i] += other.spin_spin_[i];
    n_[i] += other.n_[i];
  }
}

std::uint64_t SubEnsembleCounts::total() const noexcept {
  return n_[0] + n_[1] + n_[2] + n_[3];
}

std::uint64_t SubEnsembleCounts::both(int bin1, int bin2) const {
  return both_.at(static_cast<std::size_t>(bin1) * bins_ + bin2);
}
std::uint64_t SubEnsembleCounts::theta_spin(int bin1, Outcome b) const {
  return theta_spin_.at(static_cast<std::size_t>(bin1) * 2 + spin_index(b));
}
std::uint64_t SubEnsembleCounts::spin_theta(Outcome a, int bin2) const {
  return spin_theta_.at(static_cast<std::size_t>(spin_index(a)) * bins_ +
                        bin2);
}
std::uint64_t SubEnsembleCounts::spin_spin(Outcome a, Outcome b) const {
  return spin_spin_.at(spin_index(a) * 2 + spin_index(b));
}

TrialResult run_trials(const ExperimentConfig& config) {
  const double q = config.scatter_probability;
  if (!(q >= 0.0 && q <= 1.0))
    throw std::domain_error("scatter probability must lie in [0, 1]");
  if (config.trials < 1) throw std::domain_error("need at least one trial");
  if (config.bins < 1) throw std::domain_error("need at least one bin");
  if (config.threads < 0)
    throw std::domain_error("thread count must be nonnegative");

  const MeasurementSettings settings = MeasurementSettings::standard();
  // One Born table per setting pair; trials then only consume uniforms.
  std::array<CumulativeTable, 4> tables{
      CumulativeTable::from(
          joint_probabilities(config.state, settings.r1, settings.t1)),
      CumulativeTable::from(
          joint_probabilities(config.state, settings.r1, settings.t2)),
      CumulativeTable::from(
          joint_probabilities(config.state, settings.r2, settings.t1)),
      CumulativeTable::from(
          joint_probabilities(config.state, settings.r2, settings.t2))};

  const std::uint64_t n = config.trials;
  std::vector<TrialRecord> records(n);

  unsigned workers = config.threads > 0
                         ? static_cast<unsigned>(config.threads)
                         : std::max(1u, std::min(
                               std::thread::hardware_concurrency(), 16u));
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, n));

  const std::uint64_t trial_key = substream_seed(config.seed, kTrialStream);

  const auto worker = [&](std::uint64_t lo, std::uint64_t hi,
                          SubEnsembleCounts& counts) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      SplitMix64 g(substream_seed(trial_key, i));
      // Fixed draw order per trial: routing flags, joint outcome, angles.
      const bool scatter1 = uniform_01(g) < q;
      const bool scatter2 = uniform_01(g) < q;
      const int pair_index = (scatter1 ? 0 : 2) + (scatter2 ? 0 : 1);
      const int joint = tables[pair_index].draw(uniform_01(g));
      const Outcome a1 = joint < 2 ? Outcome::Plus : Outcome::Minus;
      const Outcome a2 = (joint & 1) == 0 ? Outcome::Plus : Outcome::Minus;

      TrialRecord rec;
      rec.index = i;
      rec.side1 =
          scatter1
              ? SideOutcome{true, config.channel1.density(a1).sample(g)}
              : SideOutcome{false, outcome_value(a1)};
      rec.side2 =
          scatter2
              ? SideOutcome{true, config.channel2.density(a2).sample(g)}
              : SideOutcome{false, outcome_value(a2)};
      records[i] = rec;
      counts.add(rec);
    }
  };

  SubEnsembleCounts merged(config.bins);
  if (workers <= 1) {
    worker(0, n, merged);
  } else {
    std::vector<SubEnsembleCounts> partials(workers,
                                            SubEnsembleCounts(config.bins));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi = std::min(n, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi, std::ref(partials[w]));
    }
    for (auto& t : pool) t.join();
    for (const auto& partial : partials) merged.merge(partial);
  }

  if (merged.total() != n)
    throw std::logic_error("sub-ensemble totals do not add up to the trial "
                           "count");
  return TrialResult{std::move(records), std::move(merged)};
}

std::vector<HistogramRow> histogram_export(const SubEnsembleCounts& counts) {
  const int bins = counts.bins();
  const auto& edges = counts.edges();
  const double nan = std::nan("");
  std::vector<HistogramRow> rows;
  rows.reserve(static_cast<std::size_t>(bins) * bins + 4 * bins + 4);

  const auto spin_label = [](Outcome a) {
    return a == Outcome::Plus ? std::string("S+") : std::string("S-");
  };
  constexpr std::array<Outcome, 2> kOutcomes{Outcome::Plus, Outcome::Minus};

  for (int i = 0; i < bins; ++i)
    for (int j = 0; j < bins; ++j)
      rows.push_back({SettingPair::R1T1, std::to_string(i),
                      std::to_string(j), edges[i], edges[i + 1], edges[j],
                      edges[j + 1], counts.both(i, j)});
  for (int i = 0; i < bins; ++i)
    for (Outcome b : kOutcomes)
      rows.push_back({SettingPair::R1T2, std::to_string(i), spin_label(b),
                      edges[i], edges[i + 1], nan, nan,
                      counts.theta_spin(i, b)});
  for (Outcome a : kOutcomes)
    for (int j = 0; j < bins; ++j)
      rows.push_back({SettingPair::R2T1, spin_label(a), std::to_string(j),
                      nan, nan, edges[j], edges[j + 1],
                      counts.spin_theta(a, j)});
  for (Outcome a : kOutcomes)
    for (Outcome b : kOutcomes)
      rows.push_back({SettingPair::R2T2, spin_label(a), spin_label(b), nan,
                      nan, nan, nan, counts.spin_spin(a, b)});
  return rows;
}

}  // namespace bellbeam
