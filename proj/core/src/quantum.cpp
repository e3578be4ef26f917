// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#include "bellbeam/quantum.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "bellbeam/errors.hpp"
#include "bellbeam/summation.hpp"

namespace bellbeam {

namespace {

double max_abs_dev_from_hermitian(const Matrix4c& m) {
  double dev = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  return dev;
}

Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

BipartiteState BipartiteState::from_matrix(const Matrix4c& rho,
                                           std::string label) {
  const double herm = max_abs_dev_from_hermitian(rho);
  if (!(herm <= kAlgebraTol))
    throw StateError("density matrix is not Hermitian (max deviation " +
                     std::to_string(herm) + ")");
  const std::complex<double> tr = rho.trace();
  if (!(std::abs(tr - 1.0) <= kAlgebraTol))
    throw StateError("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(rho);
  if (solver.info() != Eigen::Success)
    throw StateError("eigen-decomposition of density matrix failed");
  const double min_eig = solver.eigenvalues().minCoeff();
  if (!(min_eig >= -kPsdSlack))
    throw StateError("density matrix is not positive semidefinite "
                     "(smallest eigenvalue " +
                     std::to_string(min_eig) + ")");
  return BipartiteState(rho, std::move(label));
}

BipartiteState make_werner(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("werner parameter p must lie in [0, 1]");
  Matrix4c rho = Matrix4c::Zero();
  rho(0, 0) = (1.0 - p) / 4.0;
  rho(3, 3) = (1.0 - p) / 4.0;
  rho(1, 1) = (1.0 + p) / 4.0;
  rho(2, 2) = (1.0 + p) / 4.0;
  rho(1, 2) = p / 2.0;
  rho(2, 1) = p / 2.0;
  char label[32];
  std::snprintf(label, sizeof(label), "werner(p=%.6g)", p);
  return BipartiteState::from_matrix(rho, label);
}

QubitObservable QubitObservable::from_bloch(const Vector3& n) {
  const double norm = n.norm();
  if (!(std::abs(norm - 1.0) <= 1e-9))
    throw std::domain_error(
        "bloch vector must have unit norm (within 1e-9); got |n| = " +
        std::to_string(norm));

  QubitObservable obs;
  obs.bloch_ = n / norm;
  const double nx = obs.bloch_.x(), ny = obs.bloch_.y(), nz = obs.bloch_.z();
  obs.matrix_ << std::complex<double>(nz, 0.0),
      std::complex<double>(nx, -ny), std::complex<double>(nx, ny),
      std::complex<double>(-nz, 0.0);

  // Closed-form eigenstates: stable for every direction and pinned to the
  // phase convention |phi+> = (cos(alpha/2), e^{i phi} sin(alpha/2)).
  const double alpha = std::acos(std::clamp(nz, -1.0, 1.0));
  const double phi = std::atan2(ny, nx);
  const std::complex<double> phase(std::cos(phi), std::sin(phi));
  const double c = std::cos(alpha / 2.0), s = std::sin(alpha / 2.0);
  obs.plus_ << std::complex<double>(c, 0.0), phase * s;
  obs.minus_ << std::complex<double>(-s, 0.0), phase * c;
  return obs;
}

QubitObservable QubitObservable::zx_plus() {
  const double r = 1.0 / std::numbers::sqrt2;
  return from_bloch({r, 0.0, r});
}

QubitObservable QubitObservable::zx_minus() {
  const double r = 1.0 / std::numbers::sqrt2;
  return from_bloch({-r, 0.0, r});
}

MeasurementSettings MeasurementSettings::standard() {
  return MeasurementSettings{
      QubitObservable::pauli_z(), QubitObservable::pauli_x(),
      QubitObservable::zx_plus(), QubitObservable::zx_minus()};
}

JointProbabilityTable::JointProbabilityTable(double pp, double pm, double mp,
                                             double mm)
    : p_{pp, pm, mp, mm} {
  NeumaierSum sum;
  for (double v : p_) {
    if (!(v >= -kAlgebraTol && v <= 1.0 + kAlgebraTol))
      throw std::logic_error("joint probability outside [0, 1]");
    sum.add(v);
  }
  if (!(std::abs(sum.value() - 1.0) <= kAlgebraTol))
    throw std::logic_error("joint probabilities do not sum to 1");
  // Squash the representational dust so downstream sampling sees [0, 1].
  for (double& v : p_) v = std::clamp(v, 0.0, 1.0);
}

JointProbabilityTable joint_probabilities(const BipartiteState& rho,
                                          const QubitObservable& obs_a,
                                          const QubitObservable& obs_b) {
  const Matrix2c pa_p = obs_a.projector(Outcome::Plus);
  const Matrix2c pa_m = obs_a.projector(Outcome::Minus);
  const Matrix2c pb_p = obs_b.projector(Outcome::Plus);
  const Matrix2c pb_m = obs_b.projector(Outcome::Minus);

  const auto born = [&rho](const Matrix2c& a, const Matrix2c& b) {
    return (rho.matrix() * kron2(a, b)).trace().real();
  };
  return JointProbabilityTable(born(pa_p, pb_p), born(pa_p, pb_m),
                               born(pa_m, pb_p), born(pa_m, pb_m));
}

CorrelationValue correlation_discrete(const JointProbabilityTable& table) {
  const auto& p = table.flat();
  return CorrelationValue{p[0] - p[1] - p[2] + p[3], 0, true};
}

CorrelationValue correlation_discrete(
    const std::array<std::uint64_t, 4>& counts) {
  const std::uint64_t total = counts[0] + counts[1] + counts[2] + counts[3];
  if (total == 0)
    throw InsufficientDataError(
        "correlation requested from an empty ensemble");
  const double signed_sum =
      static_cast<double>(counts[0]) - static_cast<double>(counts[1]) -
      static_cast<double>(counts[2]) + static_cast<double>(counts[3]);
  return CorrelationValue{signed_sum / static_cast<double>(total), total,
                          false};
}

double chsh_discrete(const BipartiteState& rho, const QubitObservable& r1,
                     const QubitObservable& r2, const QubitObservable& t1,
                     const QubitObservable& t2, const SignPattern& signs) {
  int minus_count = 0;
  for (int s : signs) {
    if (s != 1 && s != -1)
      throw std::domain_error("CHSH sign pattern entries must be +-1");
    if (s == -1) ++minus_count;
  }
  if (minus_count != 1)
    throw std::domain_error("CHSH sign pattern must have exactly one -1");

  const std::array<const QubitObservable*, 2> r{&r1, &r2};
  const std::array<const QubitObservable*, 2> t{&t1, &t2};
  NeumaierSum s;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double e =
          correlation_discrete(joint_probabilities(rho, *r[i], *t[j])).value;
      s.add(signs[2 * i + j] * e);
    }
  return s.value();
}

}  // namespace bellbeam
