// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#include "bellbeam/socpes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellbeam {

namespace {

const std::vector<std::string>& six_state_labels() {
  static const std::vector<std::string> labels{"Sigma",  "SigmaBar",
                                               "Pi1",    "Pi1Bar",
                                               "Pim1",   "Pim1Bar"};
  return labels;
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v))
    throw std::domain_error(std::string(name) + " must be finite");
}

}  // namespace

PotentialMatrix PotentialMatrix::from_symmetric(
    Eigen::MatrixXd m, std::vector<std::string> labels) {
  if (m.rows() != m.cols())
    throw std::domain_error("potential matrix must be square");
  if (static_cast<std::size_t>(m.rows()) != labels.size())
    throw std::domain_error("dimension does not match basis label count");
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-12))
    throw std::domain_error("potential matrix is not symmetric");
  return PotentialMatrix(std::move(m), std::move(labels));
}

CouplingInputs cartesian_to_coupled(const CartesianInputs& c) {
  require_finite(c.v_xx, "v_xx");
  require_finite(c.v_yy, "v_yy");
  require_finite(c.v_zz, "v_zz");
  require_finite(c.v_xz, "v_xz");
  CouplingInputs out;
  out.v_sigma = c.v_zz;
  out.v_pi = (c.v_xx + c.v_yy) / 2.0;
  out.v1 = c.v_xz / std::numbers::sqrt2;
  out.v2 = (c.v_yy - c.v_xx) / 2.0;
  return out;
}

PotentialMatrix build_two_state(double v_sigma, double v_pi, double a,
                                double b) {
  require_finite(v_sigma, "v_sigma");
  require_finite(v_pi, "v_pi");
  require_finite(a, "a");
  require_finite(b, "b");
  Eigen::MatrixXd m(2, 2);
  const double coupling = -std::numbers::sqrt2 * b;
  m << v_sigma, coupling, coupling, a + v_pi;
  return PotentialMatrix::from_symmetric(std::move(m), {"Sigma", "PiBar"});
}

std::array<double, 2> two_state_adiabats_closed_form(double v_sigma,
                                                     double v_pi, double a,
                                                     double b) {
  const double d = a + v_pi;
  const double mean = (v_sigma + d) / 2.0;
  const double half_gap =
      std::sqrt((v_sigma - d) * (v_sigma - d) / 4.0 + 2.0 * b * b);
  return {mean - half_gap, mean + half_gap};
}

SixStatePotential build_six_state(const CouplingInputs& c) {
  require_finite(c.v_sigma, "v_sigma");
  require_finite(c.v_pi, "v_pi");
  require_finite(c.v1, "v1");
  require_finite(c.v2, "v2");
  require_finite(c.a, "a");
  require_finite(c.b, "b");

  Eigen::MatrixXd el = Eigen::MatrixXd::Zero(6, 6);
  el(0, 0) = el(1, 1) = c.v_sigma;
  el(2, 2) = el(3, 3) = el(4, 4) = el(5, 5) = c.v_pi;
  // Sigma-Pi couplings: -V1 to Pi(+1), +V1 to Pi(-1), same spin row.
  el(0, 2) = el(2, 0) = -c.v1;
  el(1, 3) = el(3, 1) = -c.v1;
  el(0, 4) = el(4, 0) = c.v1;
  el(1, 5) = el(5, 1) = c.v1;
  // Pi(+1)-Pi(-1) couplings.
  el(2, 4) = el(4, 2) = c.v2;
  el(3, 5) = el(5, 3) = c.v2;

  Eigen::MatrixXd so = Eigen::MatrixXd::Zero(6, 6);
  const double sb = -std::numbers::sqrt2 * c.b;
  so(0, 3) = so(3, 0) = sb;
  so(1, 4) = so(4, 1) = sb;
  so(2, 2) = -c.a;
  so(3, 3) = c.a;
  so(4, 4) = c.a;
  so(5, 5) = -c.a;

  auto labels = six_state_labels();
  return SixStatePotential{
      PotentialMatrix::from_symmetric(el, labels),
      PotentialMatrix::from_symmetric(so, labels),
      PotentialMatrix::from_symmetric(el + so, labels)};
}

std::vector<double> adiabats(const PotentialMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.matrix());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigen-decomposition failed");

  const Eigen::MatrixXd reconstructed =
      solver.eigenvectors() * solver.eigenvalues().asDiagonal() *
      solver.eigenvectors().transpose();
  const double norm = std::max(m.matrix().norm(), 1e-300);
  if ((reconstructed - m.matrix()).norm() > 1e-10 * norm)
    throw std::runtime_error("eigen-decomposition residual too large");

  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() +
                                 solver.eigenvalues().size());
  return values;  // SelfAdjointEigenSolver returns ascending order
}

}  // namespace bellbeam
