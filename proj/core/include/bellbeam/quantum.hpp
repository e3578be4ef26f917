// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
//
// Two-qubit state / dichotomic-observable algebra: the F-atom pair's density
// matrix, the four +-1 measurements of the crossed-beam protocol, Born-rule
// joint probabilities and the discrete CHSH statistic built from them.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <string>

namespace bellbeam {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector2c = Eigen::Vector2cd;
using Vector3 = Eigen::Vector3d;

inline constexpr double kAlgebraTol = 1e-12;  // hermiticity / trace / norms
inline constexpr double kPsdSlack = 1e-10;    // smallest-eigenvalue slack

/// Measurement outcome of a dichotomic observable.
enum class Outcome : int { Plus = +1, Minus = -1 };

constexpr double outcome_value(Outcome a) noexcept {
  return a == Outcome::Plus ? +1.0 : -1.0;
}
constexpr Outcome outcome_from_sign(int s) noexcept {
  return s >= 0 ? Outcome::Plus : Outcome::Minus;
}

/// 4x4 density matrix of the atom pair. Immutable; construction validates
/// hermiticity (1e-12), unit trace (1e-12) and positive semidefiniteness
/// (smallest eigenvalue >= -1e-10) and throws StateError otherwise.
class BipartiteState {
 public:
  static BipartiteState from_matrix(const Matrix4c& rho,
                                    std::string label = {});

  const Matrix4c& matrix() const noexcept { return rho_; }
  const std::string& label() const noexcept { return label_; }

 private:
  BipartiteState(const Matrix4c& rho, std::string label)
      : rho_(rho), label_(std::move(label)) {}

  Matrix4c rho_;
  std::string label_;
};

/// Werner state rho = p |psi+><psi+| + (1-p) I/4 with |psi+> = (|01>+|10>)/sqrt(2):
/// corner diagonal entries (1-p)/4, central block diag (1+p)/4, off-diag p/2.
/// Throws std::domain_error for p outside [0, 1].
BipartiteState make_werner(double p);

/// Dichotomic observable n.sigma for a unit Bloch vector n. Eigenvalues are
/// exactly +-1; the +1 eigenstate is listed first, with the phase convention
/// |phi+> = (cos(alpha/2), e^{i phi} sin(alpha/2)) for n in polar form.
class QubitObservable {
 public:
  /// Accepts |n| within 1e-9 of 1 (then normalizes exactly); rejects
  /// anything else, including the zero vector, with std::domain_error.
  static QubitObservable from_bloch(const Vector3& n);

  static QubitObservable pauli_z() { return from_bloch({0.0, 0.0, 1.0}); }
  static QubitObservable pauli_x() { return from_bloch({1.0, 0.0, 0.0}); }
  /// (Z+X)/sqrt(2), Bloch (1,0,1)/sqrt(2).
  static QubitObservable zx_plus();
  /// (Z-X)/sqrt(2), Bloch (-1,0,1)/sqrt(2).
  static QubitObservable zx_minus();

  const Vector3& bloch() const noexcept { return bloch_; }
  const Matrix2c& matrix() const noexcept { return matrix_; }
  const Vector2c& eigenstate(Outcome a) const noexcept {
    return a == Outcome::Plus ? plus_ : minus_;
  }
  Matrix2c projector(Outcome a) const {
    const Vector2c& v = eigenstate(a);
    return v * v.adjoint();
  }

 private:
  QubitObservable() = default;

  Vector3 bloch_;
  Matrix2c matrix_;
  Vector2c plus_, minus_;
};

/// Born-rule table P(a,b) = tr[rho (Pi_a (x) Pi_b)] for a,b in {+,-}.
/// Entries are validated nonnegative and summing to 1 within 1e-12.
class JointProbabilityTable {
 public:
  JointProbabilityTable(double pp, double pm, double mp, double mm);

  double p(Outcome a, Outcome b) const noexcept {
    return p_[index(a, b)];
  }
  /// Entries in the order (+,+), (+,-), (-,+), (-,-).
  const std::array<double, 4>& flat() const noexcept { return p_; }

 private:
  static int index(Outcome a, Outcome b) noexcept {
    return (a == Outcome::Minus ? 2 : 0) + (b == Outcome::Minus ? 1 : 0);
  }
  std::array<double, 4> p_;
};

JointProbabilityTable joint_probabilities(const BipartiteState& rho,
                                          const QubitObservable& obs_a,
                                          const QubitObservable& obs_b);

/// A correlation E(r,t) in [-1, 1], either exact (from a probability table)
/// or empirical (from counts, with the total count retained).
struct CorrelationValue {
  double value = 0.0;
  std::uint64_t total_count = 0;  // 0 when exact
  bool exact = false;
};

/// E = P(+,+) - P(+,-) - P(-,+) + P(-,-).
CorrelationValue correlation_discrete(const JointProbabilityTable& table);

/// E = (N++ - N+- - N-+ + N--)/total for counts in the order
/// (+,+), (+,-), (-,+), (-,-). Throws InsufficientDataError when all zero.
CorrelationValue correlation_discrete(const std::array<std::uint64_t, 4>& counts);

/// Signs applied to (E(r1,t1), E(r1,t2), E(r2,t1), E(r2,t2)). Valid patterns
/// have exactly one -1; the classical bound |S| <= 2 holds for any of them.
using SignPattern = std::array<int, 4>;

/// Default pattern: minus on E(r2,t1). With the Werner family and the
/// standard settings this reaches |S| = 2 sqrt(2) at p = 1.
inline constexpr SignPattern kDefaultSigns{+1, +1, -1, +1};

/// The four measurement settings of the two-channel experiment:
/// channel I scattering = Z (r1), channel I direct = X (r2),
/// channel II scattering = (Z+X)/sqrt(2) (t1), direct = (Z-X)/sqrt(2) (t2).
struct MeasurementSettings {
  QubitObservable r1, r2, t1, t2;
  static MeasurementSettings standard();
};

/// Exact CHSH statistic S = sum_ij sign_ij E(r_i, t_j) via Born-rule tables.
/// Throws std::domain_error for an invalid sign pattern.
double chsh_discrete(const BipartiteState& rho, const QubitObservable& r1,
                     const QubitObservable& r2, const QubitObservable& t1,
                     const QubitObservable& t2,
                     const SignPattern& signs = kDefaultSigns);

}  // namespace bellbeam
