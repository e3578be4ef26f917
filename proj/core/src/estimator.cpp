// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#include "bellbeam/estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "bellbeam/errors.hpp"
#include "bellbeam/rng.hpp"
#include "bellbeam/summation.hpp"

namespace bellbeam {

namespace {

void validate_signs(const SignPattern& signs) {
  int minus_count = 0;
  for (int s : signs) {
    if (s != 1 && s != -1)
      throw std::domain_error("CHSH sign pattern entries must be +-1");
    if (s == -1) ++minus_count;
  }
  if (minus_count != 1)
    throw std::domain_error("CHSH sign pattern must have exactly one -1");
}

double record_weight(const TrialRecord& r, const VKernel& kernel1,
                     const VKernel& kernel2) {
  const double w1 = r.side1.scattered
                        ? kernel1.decode_weight(r.side1.theta())
                        : r.side1.value;
  const double w2 = r.side2.scattered
                        ? kernel2.decode_weight(r.side2.theta())
                        : r.side2.value;
  return w1 * w2;
}

TermEstimate term_from_weights(const std::vector<double>& weights) {
  const std::size_t n = weights.size();
  NeumaierSum sum;
  for (double w : weights) sum.add(w);
  const double mean = sum.value() / static_cast<double>(n);

  NeumaierSum sq;
  for (double w : weights) sq.add((w - mean) * (w - mean));
  const double variance = sq.value() / static_cast<double>(n - 1);
  return TermEstimate{mean,
                      std::sqrt(std::max(variance, 0.0) /
                                static_cast<double>(n)),
                      n};
}

}  // namespace

TermEstimate estimate_term(std::span<const TrialRecord> sub_ensemble,
                           const VKernel& kernel1, const VKernel& kernel2) {
  if (sub_ensemble.size() < 2)
    throw InsufficientDataError(
        "sub-ensemble has fewer than two trials; no correlation estimate");
  const SettingPair pair = sub_ensemble.front().pair();
  std::vector<double> weights;
  weights.reserve(sub_ensemble.size());
  for (const TrialRecord& r : sub_ensemble) {
    if (r.pair() != pair)
      throw std::domain_error(
          "estimate_term requires records from a single sub-ensemble");
    weights.push_back(record_weight(r, kernel1, kernel2));
  }
  return term_from_weights(weights);
}

ChshEstimate assemble_S(const std::array<TermEstimate, 4>& terms,
                        const SignPattern& signs, double violation_sigmas) {
  validate_signs(signs);
  NeumaierSum s;
  double variance = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (terms[k].count == 0)
      throw InsufficientDataError(
          std::string("missing correlation term for sub-ensemble ") +
          std::string(to_string(static_cast<SettingPair>(k))));
    s.add(signs[k] * terms[k].value);
    variance += terms[k].std_error * terms[k].std_error;
  }

  ChshEstimate estimate;
  estimate.terms = terms;
  estimate.signs = signs;
  estimate.S = s.value();
  estimate.std_error = std::sqrt(variance);
  estimate.se_method = "delta";
  estimate.violation_sigmas = violation_sigmas;
  estimate.violated =
      std::abs(estimate.S) - 2.0 > violation_sigmas * estimate.std_error;
  return estimate;
}

ChshEstimate estimate_chsh(std::span<const TrialRecord> records,
                           const VKernel& kernel1, const VKernel& kernel2,
                           const EstimatorOptions& opts) {
  validate_signs(opts.signs);

  // One weight stream per sub-ensemble; estimation is a pure fold over it.
  std::array<std::vector<double>, 4> weights;
  for (const TrialRecord& r : records)
    weights[static_cast<int>(r.pair())].push_back(
        record_weight(r, kernel1, kernel2));

  std::array<TermEstimate, 4> terms;
  for (int k = 0; k < 4; ++k) {
    if (weights[k].size() < 2)
      throw InsufficientDataError(
          std::string("sub-ensemble ") +
          std::string(to_string(static_cast<SettingPair>(k))) +
          " has fewer than two trials");
    terms[k] = term_from_weights(weights[k]);
  }

  ChshEstimate estimate =
      assemble_S(terms, opts.signs, opts.violation_sigmas);

  if (opts.bootstrap) {
    if (opts.bootstrap_resamples < 2)
      throw std::domain_error("bootstrap needs at least two resamples");
    const int resamples = opts.bootstrap_resamples;
    std::vector<double> stats(resamples);
    for (int r = 0; r < resamples; ++r) {
      SplitMix64 g(substream_seed(opts.bootstrap_seed, r));
      double s_r = 0.0;
      for (int k = 0; k < 4; ++k) {
        const auto& w = weights[k];
        const std::uint64_t n = w.size();
        NeumaierSum sum;
        for (std::uint64_t i = 0; i < n; ++i) {
          const auto pick =
              static_cast<std::uint64_t>(uniform_01(g) * n);
          sum.add(w[std::min(pick, n - 1)]);
        }
        s_r += opts.signs[k] * sum.value() / static_cast<double>(n);
      }
      stats[r] = s_r;
    }
    NeumaierSum mean_sum;
    for (double s : stats) mean_sum.add(s);
    const double mean = mean_sum.value() / resamples;
    NeumaierSum var_sum;
    for (double s : stats) var_sum.add((s - mean) * (s - mean));
    estimate.std_error = std::sqrt(var_sum.value() / (resamples - 1));
    estimate.se_method = "bootstrap";
    estimate.violated = std::abs(estimate.S) - 2.0 >
                        opts.violation_sigmas * estimate.std_error;
  }

  return estimate;
}

double theoretical_S(double p, const MeasurementSettings& settings,
                     const SignPattern& signs) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("werner parameter p must lie in [0, 1]");
  const double coefficient = std::abs(
      chsh_discrete(make_werner(1.0), settings.r1, settings.r2, settings.t1,
                    settings.t2, signs));
  return coefficient * p;
}

double theoretical_S(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("werner parameter p must lie in [0, 1]");
  // E(r_i, t_j) is linear in p for the Werner family, so the whole curve is
  // the p = 1 magnitude computed once from the discrete statistic.
  static const double coefficient = std::abs(chsh_discrete(
      make_werner(1.0), QubitObservable::pauli_z(),
      QubitObservable::pauli_x(), QubitObservable::zx_plus(),
      QubitObservable::zx_minus(), kDefaultSigns));
  return coefficient * p;
}

std::vector<SweepPoint> sweep_p(std::span<const double> p_grid,
                                const ExperimentConfig& base,
                                const EstimatorOptions& opts) {
  if (p_grid.empty()) throw std::domain_error("sweep grid is empty");
  for (double p : p_grid)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::domain_error("sweep grid values must lie in [0, 1]");

  const VKernel kernel1(base.channel1);
  const VKernel kernel2(base.channel2);
  const std::uint64_t sweep_key = substream_seed(base.seed, kSweepStream);

  std::vector<SweepPoint> points;
  points.reserve(p_grid.size());
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    ExperimentConfig config = base;
    config.state = make_werner(p_grid[i]);
    config.seed = substream_seed(sweep_key, i);

    EstimatorOptions point_opts = opts;
    point_opts.bootstrap_seed = substream_seed(config.seed, kBootstrapStream);

    const TrialResult result = run_trials(config);
    const ChshEstimate estimate =
        estimate_chsh(result.records, kernel1, kernel2, point_opts);
    points.push_back({p_grid[i], std::abs(estimate.S), estimate.std_error,
                      theoretical_S(p_grid[i]), estimate.violated, estimate});
  }
  return points;
}

}  // namespace bellbeam
