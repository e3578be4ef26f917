// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bellbeam/errors.hpp"
#include "bellbeam/quantum.hpp"
#include "bellbeam/rng.hpp"
#include "oracles.hpp"

using namespace bellbeam;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752;

Vector3 random_unit_vector(SplitMix64& g) {
  // Marsaglia: uniform on the sphere.
  while (true) {
    const double u = 2.0 * uniform_01(g) - 1.0;
    const double v = 2.0 * uniform_01(g) - 1.0;
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    const double r = 2.0 * std::sqrt(1.0 - s);
    return {u * r, v * r, 1.0 - 2.0 * s};
  }
}

Matrix2c single_qubit_density(const Vector3& m) {
  Matrix2c rho;
  rho << std::complex<double>(1.0 + m.z(), 0.0),
      std::complex<double>(m.x(), -m.y()),
      std::complex<double>(m.x(), m.y()),
      std::complex<double>(1.0 - m.z(), 0.0);
  return 0.5 * rho;
}

}  // namespace

TEST_CASE("werner p=1 is the Bell state (|01>+|10>)/sqrt2") {
  const BipartiteState rho = make_werner(1.0);
  Matrix4c expected = Matrix4c::Zero();
  expected(1, 1) = expected(2, 2) = 0.5;
  expected(1, 2) = expected(2, 1) = 0.5;
  CHECK((rho.matrix() - expected).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("werner p=0 is the maximally mixed state") {
  const BipartiteState rho = make_werner(0.0);
  CHECK((rho.matrix() - Matrix4c::Identity() * 0.25).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("werner p=0.5 eigenvalues") {
  // Oracle: eigen-solve of the explicit matrix, independent of make_werner's
  // constructor checks.
  const BipartiteState rho = make_werner(0.5);
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(rho.matrix());
  const auto eig = solver.eigenvalues();
  CHECK(eig[0] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(eig[1] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(eig[2] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(eig[3] == doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("werner rejects p outside [0,1]") {
  CHECK_THROWS_AS(make_werner(-0.01), std::domain_error);
  CHECK_THROWS_AS(make_werner(1.01), std::domain_error);
}

TEST_CASE("from_matrix enforces the state invariants") {
  Matrix4c m = Matrix4c::Identity() * 0.25;
  m(0, 1) = {0.0, 0.3};  // breaks hermiticity unless mirrored
  CHECK_THROWS_AS(BipartiteState::from_matrix(m), StateError);

  Matrix4c t = Matrix4c::Identity() * 0.5;  // trace 2
  CHECK_THROWS_AS(BipartiteState::from_matrix(t), StateError);

  Matrix4c neg = Matrix4c::Identity() * 0.25;
  neg(0, 0) = -0.25;
  neg(1, 1) = 0.75;
  CHECK_THROWS_AS(BipartiteState::from_matrix(neg), StateError);
}

TEST_CASE("observable Z has eigenstates |0>, |1>") {
  const QubitObservable z = QubitObservable::pauli_z();
  const Vector2c plus = z.eigenstate(Outcome::Plus);
  const Vector2c minus = z.eigenstate(Outcome::Minus);
  CHECK(std::abs(plus(0) - 1.0) < 1e-15);
  CHECK(std::abs(plus(1)) < 1e-15);
  CHECK(std::abs(minus(1)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(minus(0)) < 1e-15);
}

TEST_CASE("observable X has eigenstates |+>, |->") {
  const QubitObservable x = QubitObservable::pauli_x();
  const Vector2c plus = x.eigenstate(Outcome::Plus);
  // compare projectors, not vectors: the global phase is free
  const Matrix2c p = x.projector(Outcome::Plus);
  Matrix2c expected;
  expected << 0.5, 0.5, 0.5, 0.5;
  CHECK((p - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(plus(0) - kInvSqrt2) < 1e-14);
  CHECK(std::abs(plus(1) - kInvSqrt2) < 1e-14);
}

TEST_CASE("(Z+X)/sqrt2 +1 eigenstate is cos(pi/8)|0> + sin(pi/8)|1>") {
  const QubitObservable zx = QubitObservable::zx_plus();
  const Vector2c plus = zx.eigenstate(Outcome::Plus);
  CHECK(std::abs(plus(0) - std::cos(std::numbers::pi / 8)) < 1e-14);
  CHECK(std::abs(plus(1) - std::sin(std::numbers::pi / 8)) < 1e-14);
}

TEST_CASE("observable rejects non-unit and zero bloch vectors") {
  CHECK_THROWS_AS(QubitObservable::from_bloch({0.0, 0.0, 0.0}),
                  std::domain_error);
  CHECK_THROWS_AS(QubitObservable::from_bloch({0.5, 0.0, 0.5}),
                  std::domain_error);
}

TEST_CASE("eigen-decomposition round trip over random directions") {
  SplitMix64 g(20240901);
  for (int k = 0; k < 50; ++k) {
    const QubitObservable obs = QubitObservable::from_bloch(
        random_unit_vector(g));
    const Matrix2c rebuilt = obs.projector(Outcome::Plus) -
                             obs.projector(Outcome::Minus);
    CHECK((rebuilt - obs.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    // orthonormality
    const auto& p = obs.eigenstate(Outcome::Plus);
    const auto& m = obs.eigenstate(Outcome::Minus);
    CHECK(std::abs(p.dot(p) - 1.0) < 1e-12);
    CHECK(std::abs(m.dot(m) - 1.0) < 1e-12);
    CHECK(std::abs(p.dot(m)) < 1e-12);
    // eigenvalues exactly +-1 within 1e-10
    Eigen::SelfAdjointEigenSolver<Matrix2c> solver(obs.matrix());
    CHECK(solver.eigenvalues()[0] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(solver.eigenvalues()[1] == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("joint probabilities: werner(1) under Z,Z anti-correlates") {
  const auto table = joint_probabilities(make_werner(1.0),
                                         QubitObservable::pauli_z(),
                                         QubitObservable::pauli_z());
  CHECK(table.p(Outcome::Plus, Outcome::Plus) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(table.p(Outcome::Plus, Outcome::Minus) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(table.p(Outcome::Minus, Outcome::Plus) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(table.p(Outcome::Minus, Outcome::Minus) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("joint probabilities: werner(0) is uniform; werner(1) Z,X too") {
  const auto uniform = joint_probabilities(make_werner(0.0),
                                           QubitObservable::pauli_z(),
                                           QubitObservable::zx_plus());
  for (double v : uniform.flat()) CHECK(v == doctest::Approx(0.25));

  const auto zx = joint_probabilities(make_werner(1.0),
                                      QubitObservable::pauli_z(),
                                      QubitObservable::pauli_x());
  for (double v : zx.flat()) CHECK(v == doctest::Approx(0.25));
}

TEST_CASE("joint probabilities match the closed-form werner oracle") {
  SplitMix64 g(77001);
  for (int k = 0; k < 40; ++k) {
    const double p = uniform_01(g);
    const Vector3 a = random_unit_vector(g);
    const Vector3 b = random_unit_vector(g);
    const auto table = joint_probabilities(make_werner(p),
                                           QubitObservable::from_bloch(a),
                                           QubitObservable::from_bloch(b));
    const auto expected = oracles::born_table_werner(p, a, b);
    for (int i = 0; i < 4; ++i)
      CHECK(table.flat()[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("joint probability marginals equal reduced-state Born rules") {
  SplitMix64 g(77002);
  for (int k = 0; k < 25; ++k) {
    // random mixed two-qubit state: mixture of two product states
    const Vector3 m1 = 0.9 * random_unit_vector(g);
    const Vector3 m2 = 0.7 * random_unit_vector(g);
    const Vector3 m3 = 0.5 * random_unit_vector(g);
    const Vector3 m4 = 0.3 * random_unit_vector(g);
    const double w = uniform_01(g);
    const Matrix4c mix =
        w * oracles::kron2(single_qubit_density(m1),
                           single_qubit_density(m2)) +
        (1.0 - w) * oracles::kron2(single_qubit_density(m3),
                                   single_qubit_density(m4));
    const BipartiteState rho = BipartiteState::from_matrix(mix);
    const QubitObservable oa = QubitObservable::from_bloch(
        random_unit_vector(g));
    const QubitObservable ob = QubitObservable::from_bloch(
        random_unit_vector(g));
    const auto table = joint_probabilities(rho, oa, ob);

    const Matrix2c rho_a = oracles::partial_trace_second(mix);
    const Matrix2c rho_b = oracles::partial_trace_first(mix);
    const double pa_plus =
        (rho_a * oa.projector(Outcome::Plus)).trace().real();
    const double pb_plus =
        (rho_b * ob.projector(Outcome::Plus)).trace().real();

    CHECK(table.p(Outcome::Plus, Outcome::Plus) +
              table.p(Outcome::Plus, Outcome::Minus) ==
          doctest::Approx(pa_plus).epsilon(1e-12));
    CHECK(table.p(Outcome::Plus, Outcome::Plus) +
              table.p(Outcome::Minus, Outcome::Plus) ==
          doctest::Approx(pb_plus).epsilon(1e-12));
  }
}

TEST_CASE("correlation from tables and counts") {
  CHECK(correlation_discrete(JointProbabilityTable(0.0, 0.5, 0.5, 0.0)).value ==
        doctest::Approx(-1.0));
  CHECK(correlation_discrete(JointProbabilityTable(0.25, 0.25, 0.25, 0.25))
            .value == doctest::Approx(0.0));

  const auto empirical =
      correlation_discrete(std::array<std::uint64_t, 4>{10, 20, 30, 40});
  CHECK(empirical.value == doctest::Approx(0.0));
  CHECK(empirical.total_count == 100);
  CHECK_FALSE(empirical.exact);

  CHECK_THROWS_AS(
      correlation_discrete(std::array<std::uint64_t, 4>{0, 0, 0, 0}),
      InsufficientDataError);
}

TEST_CASE("correlation of werner(1) under Z, (Z+X)/sqrt2 is -1/sqrt2") {
  const auto table = joint_probabilities(make_werner(1.0),
                                         QubitObservable::pauli_z(),
                                         QubitObservable::zx_plus());
  CHECK(correlation_discrete(table).value ==
        doctest::Approx(-kInvSqrt2).epsilon(1e-12));
}

TEST_CASE("chsh: werner(1) reaches -2 sqrt 2 with the default signs") {
  const auto s = MeasurementSettings::standard();
  const double value =
      chsh_discrete(make_werner(1.0), s.r1, s.r2, s.t1, s.t2);
  CHECK(value == doctest::Approx(-2.0 * std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("chsh: werner(0) vanishes; werner(1/sqrt2) has magnitude 2") {
  const auto s = MeasurementSettings::standard();
  CHECK(chsh_discrete(make_werner(0.0), s.r1, s.r2, s.t1, s.t2) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(chsh_discrete(make_werner(kInvSqrt2), s.r1, s.r2, s.t1,
                               s.t2)) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("chsh rejects invalid sign patterns") {
  const auto s = MeasurementSettings::standard();
  CHECK_THROWS_AS(chsh_discrete(make_werner(1.0), s.r1, s.r2, s.t1, s.t2,
                                SignPattern{1, 1, 1, 1}),
                  std::domain_error);
  CHECK_THROWS_AS(chsh_discrete(make_werner(1.0), s.r1, s.r2, s.t1, s.t2,
                                SignPattern{-1, -1, 1, 1}),
                  std::domain_error);
  CHECK_THROWS_AS(chsh_discrete(make_werner(1.0), s.r1, s.r2, s.t1, s.t2,
                                SignPattern{1, 1, 2, -1}),
                  std::domain_error);
}

TEST_CASE("property: E(r,t) is linear in the werner parameter") {
  const auto s = MeasurementSettings::standard();
  const std::array<const QubitObservable*, 2> r{&s.r1, &s.r2};
  const std::array<const QubitObservable*, 2> t{&s.t1, &s.t2};
  const double grid[] = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double at_one =
          correlation_discrete(
              joint_probabilities(make_werner(1.0), *r[i], *t[j]))
              .value;
      for (double p : grid) {
        const double at_p =
            correlation_discrete(
                joint_probabilities(make_werner(p), *r[i], *t[j]))
                .value;
        CHECK(at_p == doctest::Approx(p * at_one).epsilon(1e-12));
      }
    }
}

TEST_CASE("property: product states never violate the classical bound") {
  SplitMix64 g(77003);
  for (int k = 0; k < 60; ++k) {
    const Vector3 ma = (0.2 + 0.8 * uniform_01(g)) * random_unit_vector(g);
    const Vector3 mb = (0.2 + 0.8 * uniform_01(g)) * random_unit_vector(g);
    const BipartiteState rho = BipartiteState::from_matrix(oracles::kron2(
        single_qubit_density(ma), single_qubit_density(mb)));
    const QubitObservable r1 = QubitObservable::from_bloch(
        random_unit_vector(g));
    const QubitObservable r2 = QubitObservable::from_bloch(
        random_unit_vector(g));
    const QubitObservable t1 = QubitObservable::from_bloch(
        random_unit_vector(g));
    const QubitObservable t2 = QubitObservable::from_bloch(
        random_unit_vector(g));
    SignPattern signs{1, 1, 1, 1};
    signs[g() % 4] = -1;
    CHECK(std::abs(chsh_discrete(rho, r1, r2, t1, t2, signs)) <=
          2.0 + 1e-9);
  }
}
