// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
//
// The trial engine: prepares atom pairs, routes each atom through the
// scattered/unscattered branch of its channel, draws the joint measurement
// outcome from the Born rule, replaces scattered outcomes by angles drawn
// from the channel's DCS density, and accumulates the four sub-ensembles.
#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "bellbeam/dcs.hpp"
#include "bellbeam/quantum.hpp"

namespace bellbeam {

inline constexpr std::uint64_t kDefaultSeed = 0xBE11BEA3ull;

/// The four setting combinations realized by the scatter/direct routing.
/// Side I: scattered -> r1 (Z), direct -> r2 (X).
/// Side II: scattered -> t1 ((Z+X)/sqrt 2), direct -> t2 ((Z-X)/sqrt 2).
enum class SettingPair : int { R1T1 = 0, R1T2 = 1, R2T1 = 2, R2T2 = 3 };

inline constexpr std::array<SettingPair, 4> kAllSettingPairs{
    SettingPair::R1T1, SettingPair::R1T2, SettingPair::R2T1,
    SettingPair::R2T2};

std::string_view to_string(SettingPair pair) noexcept;

struct ExperimentConfig {
  BipartiteState state = make_werner(1.0);
  double scatter_probability = 0.5;  // per atom, independent between sides
  std::uint64_t trials = 100000;
  std::uint64_t seed = kDefaultSeed;
  DcsPair channel1 = default_channel1();  // Z-measurement densities
  DcsPair channel2 = default_channel2();  // (Z+X)/sqrt(2) densities
  int bins = 40;                          // per continuous axis on [0, pi]
  int threads = 0;                        // 0 = hardware concurrency
};

/// Outcome of one side of one trial: either a scattering angle or a direct
/// +-1 reading.
struct SideOutcome {
  bool scattered;
  double value;  // theta in [0, pi] if scattered, else +-1

  double theta() const noexcept { return value; }
  Outcome spin() const noexcept {
    return value >= 0 ? Outcome::Plus : Outcome::Minus;
  }
};

struct TrialRecord {
  std::uint64_t index;
  SideOutcome side1, side2;

  SettingPair pair() const noexcept {
    return static_cast<SettingPair>((side1.scattered ? 0 : 2) +
                                    (side2.scattered ? 0 : 1));
  }
};

/// Binned counts of the four sub-ensembles: theta x theta for (r1,t1),
/// theta x {S+,S-} for (r1,t2), {S+,S-} x theta for (r2,t1) and the 2x2
/// table for (r2,t2). Merging partial counts is exact and commutative.
class SubEnsembleCounts {
 public:
  explicit SubEnsembleCounts(int bins);

  void add(const TrialRecord& record);
  void merge(const SubEnsembleCounts& other);

  int bins() const noexcept { return bins_; }
  /// bins+1 uniform edges on [0, pi]; theta = pi lands in the last bin.
  const std::vector<double>& edges() const noexcept { return edges_; }

  std::uint64_t total() const noexcept;
  std::uint64_t count(SettingPair pair) const noexcept {
    return n_[static_cast<int>(pair)];
  }

  std::uint64_t both(int bin1, int bin2) const;
  std::uint64_t theta_spin(int bin1, Outcome b) const;
  std::uint64_t spin_theta(Outcome a, int bin2) const;
  std::uint64_t spin_spin(Outcome a, Outcome b) const;

  int bin_of(double theta) const noexcept;

 private:
  int bins_;
  std::vector<double> edges_;
  std::vector<std::uint64_t> both_;        // bins x bins, row-major
  std::vector<std::uint64_t> theta_spin_;  // bins x 2
  std::vector<std::uint64_t> spin_theta_;  // 2 x bins
  std::array<std::uint64_t, 4> spin_spin_{};
  std::array<std::uint64_t, 4> n_{};
};

struct TrialResult {
  std::vector<TrialRecord> records;
  SubEnsembleCounts counts;
};

/// Runs config.trials independent pairs. Per-trial substreams are derived
/// from (seed, trial index), so the result is bit-identical for any thread
/// count and any execution order. Throws std::domain_error on an invalid
/// config (scatter probability outside [0,1], zero trials, bins < 1, ...).
TrialResult run_trials(const ExperimentConfig& config);

/// One cell of the long-format histogram table. Spin axes carry the labels
/// "S+"/"S-" and no edges; theta axes carry the bin index and its edges.
struct HistogramRow {
  SettingPair pair;
  std::string axis1, axis2;
  double axis1_lo, axis1_hi;  // NaN for spin axes
  double axis2_lo, axis2_hi;
  std::uint64_t count;
};

/// All cells (including empty ones) of the four sub-ensembles; the summed
/// counts equal the trial total.
std::vector<HistogramRow> histogram_export(const SubEnsembleCounts& counts);

}  // namespace bellbeam
