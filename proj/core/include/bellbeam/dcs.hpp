// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
//
// Angular densities of the scattering outcomes: Gaussian-mixture models of
// the per-eigenstate differential cross sections over theta in [0, pi],
// peak fitting, truncated sampling, and the v/V decoding kernels that turn
// continuous angles back into unbiased +-1 correlation estimates.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "bellbeam/quantum.hpp"
#include "bellbeam/rng.hpp"

namespace bellbeam {

struct GaussianComponent {
  double weight;     // > 0; mixture weights are normalized at construction
  double mean_rad;   // in [0, pi]
  double sigma_rad;  // > 0
};

/// Normalized probability density of the scattering angle on [0, pi].
/// Each component is a Gaussian renormalized over the truncated domain, so
/// weights stay exact component probabilities and weight-proportional
/// selection followed by truncated-Gaussian rejection samples the density
/// exactly. Immutable after construction.
class AngularDensity {
 public:
  /// Validates components (weight > 0, mean in [0, pi], sigma > 0, all
  /// finite, at least one component), normalizes weights to sum 1 and
  /// verifies by quadrature that the density integrates to 1 within 1e-9.
  explicit AngularDensity(std::vector<GaussianComponent> components);

  double pdf(double theta) const noexcept;
  double cdf(double theta) const noexcept;

  /// One draw; the caller owns the stream (no hidden global state).
  double sample(SplitMix64& rng) const;

  const std::vector<GaussianComponent>& components() const noexcept {
    return components_;
  }
  /// Component means, used as quadrature breakpoints.
  std::vector<double> peak_locations() const;

 private:
  std::vector<GaussianComponent> components_;  // weights normalized
  std::vector<double> truncated_mass_;         // N(mean,sigma) mass on [0,pi]
  std::vector<double> cumulative_weights_;
};

/// integral_0^pi f(theta) g(theta) dtheta by adaptive quadrature (relative
/// tolerance 1e-9), subdividing at the component peaks of both densities.
double overlap_integral(const AngularDensity& f, const AngularDensity& g,
                        double rel_tol = 1e-9);

/// L2 distance sqrt(integral (f-g)^2) between two densities.
double l2_distance(const AngularDensity& f, const AngularDensity& g);

/// The pair of densities produced by the +1 and -1 eigenstates of one
/// scattering measurement. Construction enforces distinguishability
/// (L2 distance > 1e-6), throwing IndistinguishabilityError otherwise.
class DcsPair {
 public:
  DcsPair(AngularDensity plus, AngularDensity minus, std::string label = {});

  const AngularDensity& density(Outcome a) const noexcept {
    return a == Outcome::Plus ? plus_ : minus_;
  }
  const AngularDensity& plus() const noexcept { return plus_; }
  const AngularDensity& minus() const noexcept { return minus_; }
  const std::string& label() const noexcept { return label_; }

 private:
  AngularDensity plus_;
  AngularDensity minus_;
  std::string label_;
};

/// Default channel-I pair (Z measurement): forward-peaked ground-state
/// product vs a single sideways lobe for the excited state.
DcsPair default_channel1();
/// Default channel-II pair ((Z+X)/sqrt(2)): two well-separated Gaussians.
DcsPair default_channel2();

/// Decoding kernel of one scattering measurement: the overlap integrals
/// I++ = int f+^2, I+- = int f+ f-, I-- = int f-^2 and the auxiliary values
///   v(x|+) = [f+(x) - I+-] / [I++ - I+-]
///   v(x|-) = [f-(x) - I-+] / [I-- - I-+]
/// whose decoding identities read int f_a v(.|b) = delta_ab.
/// Construction throws IndistinguishabilityError when either denominator
/// falls below 1e-9.
class VKernel {
 public:
  explicit VKernel(const DcsPair& pair);

  double i_pp() const noexcept { return i_pp_; }
  double i_pm() const noexcept { return i_pm_; }
  double i_mm() const noexcept { return i_mm_; }

  const DcsPair& pair() const noexcept { return pair_; }

  /// v(x|sign) of the kernel's measurement.
  double v(double x, Outcome sign) const noexcept;

  /// v(x|+) - v(x|-): the per-side factor of the V function, and the
  /// per-record weight of the continuous correlation estimator.
  double decode_weight(double x) const noexcept;

 private:
  DcsPair pair_;
  double i_pp_, i_pm_, i_mm_;
};

/// Free-function spellings of the kernel evaluations.
double v_value(const VKernel& kernel, double x, Outcome sign);

/// V(x1, x2) = [v(x1|+) - v(x1|-)] * [v(x2|+) - v(x2|-)] across the two
/// channels' kernels.
double V_value(const VKernel& kernel_a, const VKernel& kernel_b, double x1,
               double x2);

/// Result of a Gaussian peak fit: the fitted density plus diagnostics.
struct FitResult {
  AngularDensity density;
  double residual_rms;
  int iterations;
};

/// Nonlinear least-squares fit of an n_peaks Gaussian mixture to digitized
/// (theta, intensity) samples; the fitted curve is renormalized to a density
/// on [0, pi]. Requires at least 3*n_peaks points, nonnegative intensities
/// and theta values inside [0, pi] (std::domain_error otherwise; all-zero
/// intensities are rejected the same way). Throws FitError, carrying the
/// best residual RMS, if the optimizer hits the iteration cap.
FitResult fit_gaussian_peaks(std::span<const double> theta,
                             std::span<const double> intensity, int n_peaks,
                             int max_iterations = 400);

}  // namespace bellbeam
