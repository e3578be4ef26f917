// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#include "bellbeam/dcs.hpp"

#include <unsupported/Eigen/LevenbergMarquardt>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "bellbeam/errors.hpp"
#include "bellbeam/quadrature.hpp"
#include "bellbeam/summation.hpp"

namespace bellbeam {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2Pi = 2.5066282746310005024;

double gauss_pdf(double x, double mean, double sigma) {
  const double z = (x - mean) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * kSqrt2Pi);
}

/// Standard normal CDF.
double phi(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Mass of N(mean, sigma) on [0, pi].
double truncated_mass(double mean, double sigma) {
  return phi((kPi - mean) / sigma) - phi((0.0 - mean) / sigma);
}

}  // namespace

AngularDensity::AngularDensity(std::vector<GaussianComponent> components)
    : components_(std::move(components)) {
  if (components_.empty())
    throw std::domain_error("angular density needs at least one component");

  double weight_sum = 0.0;
  for (const auto& c : components_) {
    if (!std::isfinite(c.weight) || !std::isfinite(c.mean_rad) ||
        !std::isfinite(c.sigma_rad))
      throw std::domain_error("angular density component is not finite");
    if (!(c.weight > 0.0))
      throw std::domain_error("component weight must be positive");
    if (!(c.sigma_rad > 0.0))
      throw std::domain_error("component width must be positive");
    if (!(c.mean_rad >= 0.0 && c.mean_rad <= kPi))
      throw std::domain_error("component mean must lie in [0, pi]");
    weight_sum += c.weight;
  }

  truncated_mass_.reserve(components_.size());
  cumulative_weights_.reserve(components_.size());
  double cum = 0.0;
  for (auto& c : components_) {
    c.weight /= weight_sum;
    const double mass = truncated_mass(c.mean_rad, c.sigma_rad);
    if (!(mass > 0.0))
      throw std::domain_error("component has no mass on [0, pi]");
    truncated_mass_.push_back(mass);
    cum += c.weight;
    cumulative_weights_.push_back(cum);
  }
  cumulative_weights_.back() = 1.0;

  const double total = integrate_segmented(
      [this](double t) { return pdf(t); }, 0.0, kPi, peak_locations());
  if (!(std::abs(total - 1.0) <= 1e-9))
    throw std::logic_error("angular density failed to normalize on [0, pi]");
}

double AngularDensity::pdf(double theta) const noexcept {
  if (theta < 0.0 || theta > kPi) return 0.0;
  double value = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const auto& c = components_[k];
    value += c.weight * gauss_pdf(theta, c.mean_rad, c.sigma_rad) /
             truncated_mass_[k];
  }
  return value;
}

double AngularDensity::cdf(double theta) const noexcept {
  const double t = std::clamp(theta, 0.0, kPi);
  double value = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const auto& c = components_[k];
    const double lo = phi((0.0 - c.mean_rad) / c.sigma_rad);
    value +=
        c.weight * (phi((t - c.mean_rad) / c.sigma_rad) - lo) /
        truncated_mass_[k];
  }
  return std::clamp(value, 0.0, 1.0);
}

double AngularDensity::sample(SplitMix64& rng) const {
  const double u = uniform_01(rng);
  const auto it = std::upper_bound(cumulative_weights_.begin(),
                                   cumulative_weights_.end(), u);
  const std::size_t k = std::min<std::size_t>(
      static_cast<std::size_t>(it - cumulative_weights_.begin()),
      components_.size() - 1);
  const auto& c = components_[k];
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const double x = c.mean_rad + c.sigma_rad * standard_normal(rng);
    if (x >= 0.0 && x <= kPi) return x;
  }
  throw std::runtime_error("truncated-Gaussian rejection did not terminate");
}

std::vector<double> AngularDensity::peak_locations() const {
  std::vector<double> means;
  means.reserve(components_.size());
  for (const auto& c : components_) means.push_back(c.mean_rad);
  return means;
}

double overlap_integral(const AngularDensity& f, const AngularDensity& g,
                        double rel_tol) {
  std::vector<double> cuts = f.peak_locations();
  const std::vector<double> gm = g.peak_locations();
  cuts.insert(cuts.end(), gm.begin(), gm.end());
  return integrate_segmented(
      [&f, &g](double t) { return f.pdf(t) * g.pdf(t); }, 0.0, kPi,
      std::move(cuts), rel_tol);
}

double l2_distance(const AngularDensity& f, const AngularDensity& g) {
  const double d2 = overlap_integral(f, f) - 2.0 * overlap_integral(f, g) +
                    overlap_integral(g, g);
  return std::sqrt(std::max(d2, 0.0));
}

DcsPair::DcsPair(AngularDensity plus, AngularDensity minus, std::string label)
    : plus_(std::move(plus)), minus_(std::move(minus)),
      label_(std::move(label)) {
  if (!(l2_distance(plus_, minus_) > 1e-6))
    throw IndistinguishabilityError(
        "DCS pair '" + label_ +
        "': the +1 and -1 densities are indistinguishable (L2 distance <= "
        "1e-6)");
}

DcsPair default_channel1() {
  return DcsPair(
      AngularDensity({{0.7, 0.35, 0.12}, {0.3, 2.8, 0.25}}),
      AngularDensity({{1.0, 1.6, 0.2}}), "channel-I (Z)");
}

DcsPair default_channel2() {
  return DcsPair(AngularDensity({{1.0, 0.6, 0.15}}),
                 AngularDensity({{1.0, 2.4, 0.15}}),
                 "channel-II ((Z+X)/sqrt2)");
}

VKernel::VKernel(const DcsPair& pair)
    : pair_(pair),
      i_pp_(overlap_integral(pair.plus(), pair.plus())),
      i_pm_(overlap_integral(pair.plus(), pair.minus())),
      i_mm_(overlap_integral(pair.minus(), pair.minus())) {
  const double cs_slack = 1e-9 * i_pp_ * i_mm_ + 1e-12;
  if (!(i_pm_ * i_pm_ <= i_pp_ * i_mm_ + cs_slack))
    throw std::logic_error("overlap integrals violate Cauchy-Schwarz");
  if (!(i_pp_ - i_pm_ > 1e-9) || !(i_mm_ - i_pm_ > 1e-9))
    throw IndistinguishabilityError(
        "DCS pair '" + pair.label() +
        "': decoding-kernel denominators below 1e-9; the densities lack "
        "sufficiently different support");
}

double VKernel::v(double x, Outcome sign) const noexcept {
  if (sign == Outcome::Plus)
    return (pair_.plus().pdf(x) - i_pm_) / (i_pp_ - i_pm_);
  return (pair_.minus().pdf(x) - i_pm_) / (i_mm_ - i_pm_);
}

double VKernel::decode_weight(double x) const noexcept {
  return v(x, Outcome::Plus) - v(x, Outcome::Minus);
}

double v_value(const VKernel& kernel, double x, Outcome sign) {
  return kernel.v(x, sign);
}

double V_value(const VKernel& kernel_a, const VKernel& kernel_b, double x1,
               double x2) {
  return kernel_a.decode_weight(x1) * kernel_b.decode_weight(x2);
}

// --- Gaussian peak fitting -------------------------------------------------

namespace {

/// Residuals of a Gaussian-mixture intensity model against digitized data.
/// Parameters per peak: (log amplitude, mean, log sigma), so positivity is
/// built into the parameterization.
struct MixtureResidual : Eigen::DenseFunctor<double> {
  MixtureResidual(const Eigen::VectorXd& theta, const Eigen::VectorXd& y,
                  int peaks)
      : Eigen::DenseFunctor<double>(3 * peaks,
                                    static_cast<int>(theta.size())),
        theta_(theta), y_(y), peaks_(peaks) {}

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fvec) const {
    for (Eigen::Index i = 0; i < theta_.size(); ++i) {
      double model = 0.0;
      for (int k = 0; k < peaks_; ++k) {
        const double a = std::exp(x[3 * k]);
        const double mu = x[3 * k + 1];
        const double sigma = std::exp(x[3 * k + 2]);
        const double d = (theta_[i] - mu) / sigma;
        model += a * std::exp(-0.5 * d * d);
      }
      fvec[i] = model - y_[i];
    }
    return 0;
  }

  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& fjac) const {
    for (Eigen::Index i = 0; i < theta_.size(); ++i) {
      for (int k = 0; k < peaks_; ++k) {
        const double a = std::exp(x[3 * k]);
        const double mu = x[3 * k + 1];
        const double sigma = std::exp(x[3 * k + 2]);
        const double d = (theta_[i] - mu) / sigma;
        const double g = a * std::exp(-0.5 * d * d);
        fjac(i, 3 * k) = g;
        fjac(i, 3 * k + 1) = g * d / sigma;
        fjac(i, 3 * k + 2) = g * d * d;
      }
    }
    return 0;
  }

  const Eigen::VectorXd& theta_;
  const Eigen::VectorXd& y_;
  int peaks_;
};

struct FitAttempt {
  Eigen::VectorXd params;
  double rms = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

FitAttempt run_lm(const Eigen::VectorXd& theta, const Eigen::VectorXd& y,
                  int peaks, Eigen::VectorXd x0, int max_iterations) {
  MixtureResidual functor(theta, y, peaks);
  Eigen::LevenbergMarquardt<MixtureResidual> lm(functor);
  lm.setMaxfev(max_iterations);
  const auto status = lm.minimize(x0);

  FitAttempt attempt;
  attempt.params = x0;
  attempt.iterations = static_cast<int>(lm.iterations());
  Eigen::VectorXd fvec(theta.size());
  functor(x0, fvec);
  attempt.rms = std::sqrt(fvec.squaredNorm() /
                          static_cast<double>(theta.size()));
  using Eigen::LevenbergMarquardtSpace::Status;
  attempt.converged =
      status != Status::TooManyFunctionEvaluation &&
      status != Status::ImproperInputParameters && x0.allFinite();
  return attempt;
}

/// Peak positions for the initial guess: local maxima of the digitized
/// curve, padded with evenly spaced positions when too few exist.
std::vector<double> initial_means(const std::vector<double>& ts,
                                  const std::vector<double>& ys, int peaks) {
  const std::size_t m = ts.size();
  std::vector<std::size_t> maxima;
  for (std::size_t i = 0; i < m; ++i) {
    const bool left_ok = (i == 0) || ys[i] > ys[i - 1];
    const bool right_ok = (i + 1 == m) || ys[i] >= ys[i + 1];
    if (left_ok && right_ok && ys[i] > 0.0) maxima.push_back(i);
  }
  std::sort(maxima.begin(), maxima.end(),
            [&](std::size_t a, std::size_t b) { return ys[a] > ys[b]; });

  const double span = std::max(ts.back() - ts.front(), 1e-6);
  const double min_sep = span / (2.0 * peaks);
  std::vector<double> means;
  for (std::size_t idx : maxima) {
    if (static_cast<int>(means.size()) == peaks) break;
    const double t = ts[idx];
    const bool crowded = std::any_of(means.begin(), means.end(), [&](double u) {
      return std::abs(u - t) < min_sep;
    });
    if (!crowded) means.push_back(t);
  }
  for (int j = 0; static_cast<int>(means.size()) < peaks && j < peaks; ++j) {
    means.push_back(ts.front() + span * (j + 0.5) / peaks);
  }
  return means;
}

double interp_intensity(const std::vector<double>& ts,
                        const std::vector<double>& ys, double t) {
  const auto it = std::lower_bound(ts.begin(), ts.end(), t);
  if (it == ts.begin()) return ys.front();
  if (it == ts.end()) return ys.back();
  const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
  const std::size_t lo = hi - 1;
  const double f = (t - ts[lo]) / std::max(ts[hi] - ts[lo], 1e-300);
  return ys[lo] + f * (ys[hi] - ys[lo]);
}

Eigen::VectorXd pack_init(const std::vector<double>& means, double sigma0,
                          const std::vector<double>& ts,
                          const std::vector<double>& ys, double y_max) {
  Eigen::VectorXd x0(3 * means.size());
  for (std::size_t k = 0; k < means.size(); ++k) {
    const double a0 =
        std::max(interp_intensity(ts, ys, means[k]), 1e-3 * y_max);
    x0[3 * k] = std::log(a0);
    x0[3 * k + 1] = means[k];
    x0[3 * k + 2] = std::log(sigma0);
  }
  return x0;
}

}  // namespace

FitResult fit_gaussian_peaks(std::span<const double> theta,
                             std::span<const double> intensity, int n_peaks,
                             int max_iterations) {
  if (n_peaks < 1) throw std::domain_error("n_peaks must be >= 1");
  if (theta.size() != intensity.size())
    throw std::domain_error("theta and intensity sizes differ");
  if (theta.size() < static_cast<std::size_t>(3 * n_peaks))
    throw std::domain_error("need at least 3 points per peak");

  double y_max = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!std::isfinite(theta[i]) || !std::isfinite(intensity[i]))
      throw std::domain_error("fit input is not finite");
    if (theta[i] < 0.0 || theta[i] > kPi)
      throw std::domain_error("theta values must lie in [0, pi]");
    if (intensity[i] < 0.0)
      throw std::domain_error("intensities must be nonnegative");
    y_max = std::max(y_max, intensity[i]);
  }
  if (y_max == 0.0)
    throw std::domain_error("all intensities are zero; nothing to fit");

  // Sort by angle once; the optimizer and the init heuristics assume it.
  std::vector<std::size_t> order(theta.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return theta[a] < theta[b]; });
  std::vector<double> ts(theta.size()), ys(theta.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    ts[i] = theta[order[i]];
    ys[i] = intensity[order[i]];
  }

  Eigen::VectorXd tv = Eigen::Map<const Eigen::VectorXd>(ts.data(), ts.size());
  Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(ys.data(), ys.size());

  const double span = std::max(ts.back() - ts.front(), 1e-6);
  const double sigma0 =
      std::clamp(span / (6.0 * n_peaks), 0.02, 1.0);

  FitAttempt best;
  const auto consider = [&](const Eigen::VectorXd& x0) {
    const FitAttempt attempt = run_lm(tv, yv, n_peaks, x0, max_iterations);
    if (attempt.rms < best.rms || (attempt.converged && !best.converged))
      best = attempt;
  };
  consider(pack_init(initial_means(ts, ys, n_peaks), sigma0, ts, ys, y_max));
  if (!best.converged) {
    std::vector<double> even;
    for (int j = 0; j < n_peaks; ++j)
      even.push_back(ts.front() + span * (j + 0.5) / n_peaks);
    consider(pack_init(even, std::clamp(span / (4.0 * n_peaks), 0.02, 1.0),
                       ts, ys, y_max));
  }
  if (!best.converged)
    throw FitError("gaussian peak fit did not converge within the iteration "
                   "cap (best residual RMS " + std::to_string(best.rms) + ")",
                   best.rms);

  std::vector<GaussianComponent> comps;
  comps.reserve(n_peaks);
  for (int k = 0; k < n_peaks; ++k) {
    const double a = std::exp(best.params[3 * k]);
    double mu = best.params[3 * k + 1];
    const double sigma = std::exp(best.params[3 * k + 2]);
    if (!std::isfinite(a) || !std::isfinite(mu) || !std::isfinite(sigma) ||
        sigma <= 0.0)
      throw FitError("gaussian peak fit produced invalid parameters",
                     best.rms);
    // Boundary peaks may converge marginally outside the domain; clamp small
    // excursions, reject anything that moved materially.
    const double clamped = std::clamp(mu, 0.0, kPi);
    if (std::abs(clamped - mu) > 0.2)
      throw FitError("fitted peak mean lies outside [0, pi]", best.rms);
    mu = clamped;
    const double mass = a * sigma * kSqrt2Pi * truncated_mass(mu, sigma);
    comps.push_back({std::max(mass, 1e-300), mu, sigma});
  }

  return FitResult{AngularDensity(std::move(comps)), best.rms,
                   best.iterations};
}

}  // namespace bellbeam
