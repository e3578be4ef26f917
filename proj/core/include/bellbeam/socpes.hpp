// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
//
// Spin-orbit potential matrices of the F + HD entrance channel: the coupled
// two-state model, the full six-state electronic + spin-orbit matrices, the
// Cartesian-basis reductions and adiabatic eigenvalues. Energies are in
// whatever unit the caller feeds in; the matrices are unit-agnostic.
#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace bellbeam {

/// Inputs of the coupled models. v1, v2 couple the electronic states; a and
/// b are the spin-orbit parameters.
struct CouplingInputs {
  double v_sigma = 0.0;
  double v_pi = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double a = 0.0;
  double b = 0.0;
};

struct CartesianInputs {
  double v_xx = 0.0;
  double v_yy = 0.0;
  double v_zz = 0.0;
  double v_xz = 0.0;
};

/// Real symmetric potential matrix with basis labels. Construction checks
/// symmetry within 1e-12 and that the dimension matches the label count.
class PotentialMatrix {
 public:
  static PotentialMatrix from_symmetric(Eigen::MatrixXd m,
                                        std::vector<std::string> labels);

  int dimension() const noexcept { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  PotentialMatrix(Eigen::MatrixXd m, std::vector<std::string> labels)
      : m_(std::move(m)), labels_(std::move(labels)) {}

  Eigen::MatrixXd m_;
  std::vector<std::string> labels_;
};

/// V_Sigma = V_zz, V_Pi = (V_xx+V_yy)/2, V_1 = V_xz/sqrt(2),
/// V_2 = (V_yy-V_xx)/2. The spin-orbit parameters a, b are not derivable
/// from the Cartesian grid and are left zero for the caller to fill in.
CouplingInputs cartesian_to_coupled(const CartesianInputs& c);

/// Two-state model [[V_Sigma, -sqrt(2) b], [-sqrt(2) b, a + V_Pi]].
PotentialMatrix build_two_state(double v_sigma, double v_pi, double a,
                                double b);

/// Closed-form ascending eigenvalues of the two-state matrix.
std::array<double, 2> two_state_adiabats_closed_form(double v_sigma,
                                                     double v_pi, double a,
                                                     double b);

struct SixStatePotential {
  PotentialMatrix v_el;
  PotentialMatrix v_so;
  PotentialMatrix v_total;
};

/// The 6x6 electronic matrix (V_Sigma / V_Pi diagonal blocks with +-V_1 and
/// V_2 couplings), the spin-orbit matrix (-sqrt(2) b Sigma-PiBar couplings,
/// diagonal -a, a, a, -a on the Pi states) and their sum, in the basis
/// {Sigma, SigmaBar, Pi1, Pi1Bar, Pim1, Pim1Bar}.
SixStatePotential build_six_state(const CouplingInputs& c);

/// Ascending eigenvalues of a symmetric potential matrix. Throws
/// std::domain_error for an asymmetric input; the eigen-decomposition
/// reconstruction residual is verified to be <= 1e-10 * ||m||.
std::vector<double> adiabats(const PotentialMatrix& m);

}  // namespace bellbeam
