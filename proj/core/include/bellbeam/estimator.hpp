// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
//
// The generalized CHSH test statistic: per-sub-ensemble correlation terms
// (continuous outcomes decoded through the v-kernels, direct outcomes taken
// as +-1), the assembled S with its uncertainty and violation verdict, the
// theoretical Werner curve, and the sweep over p.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bellbeam/dcs.hpp"
#include "bellbeam/experiment.hpp"
#include "bellbeam/quantum.hpp"

namespace bellbeam {

struct TermEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t count = 0;
};

struct ChshEstimate {
  std::array<TermEstimate, 4> terms{};  // indexed by SettingPair
  SignPattern signs = kDefaultSigns;
  double S = 0.0;          // signed sum of the four terms
  double std_error = 0.0;  // of S
  std::string se_method = "delta";
  double violation_sigmas = 3.0;
  bool violated = false;  // |S| - 2 > violation_sigmas * std_error
};

struct EstimatorOptions {
  SignPattern signs = kDefaultSigns;
  double violation_sigmas = 3.0;
  bool bootstrap = false;        // bootstrap SE instead of the delta method
  int bootstrap_resamples = 1000;
  std::uint64_t bootstrap_seed = 0;
};

/// Mean of w1*w2 over one sub-ensemble, where w = decode_weight(theta) for a
/// scattered side and the +-1 reading for a direct side. The standard error
/// is sample std / sqrt(n). All records must belong to the same setting
/// pair. Throws InsufficientDataError for fewer than two records (no SE).
TermEstimate estimate_term(std::span<const TrialRecord> sub_ensemble,
                           const VKernel& kernel1, const VKernel& kernel2);

/// S = sum_i sign_i E_i with compensated summation; SE by quadrature sum of
/// the term errors. Throws InsufficientDataError if any term has no counts
/// and std::domain_error for an invalid sign pattern.
ChshEstimate assemble_S(const std::array<TermEstimate, 4>& terms,
                        const SignPattern& signs,
                        double violation_sigmas = 3.0);

/// Groups records by setting pair, estimates the four terms and assembles
/// S. With opts.bootstrap, replaces the SE of S by the std of 1000 (or
/// opts.bootstrap_resamples) resampled statistics, resampling trials within
/// each sub-ensemble.
ChshEstimate estimate_chsh(std::span<const TrialRecord> records,
                           const VKernel& kernel1, const VKernel& kernel2,
                           const EstimatorOptions& opts = {});

/// 2*sqrt(2)*p: the exact discrete CHSH magnitude of the Werner family
/// under the standard settings and default signs. The linear coefficient is
/// computed once from chsh_discrete, not hard-coded.
double theoretical_S(double p);

/// Same for caller-supplied settings and signs (coefficient recomputed).
double theoretical_S(double p, const MeasurementSettings& settings,
                     const SignPattern& signs);

struct SweepPoint {
  double p;
  double s_abs;      // |S| estimate, the Fig.-style test statistic
  double std_error;  // of S
  double s_theory;
  bool violated;
  ChshEstimate estimate;
};

/// Runs the experiment and the estimator at every grid point with
/// independent seeds derived from base.seed; identical inputs reproduce an
/// identical table. Grid values must lie in [0, 1] and the grid must be
/// nonempty (std::domain_error otherwise).
std::vector<SweepPoint> sweep_p(std::span<const double> p_grid,
                                const ExperimentConfig& base,
                                const EstimatorOptions& opts = {});

}  // namespace bellbeam
