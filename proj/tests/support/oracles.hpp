// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
//
// Test-side oracles, independent of the library's computation paths:
// a composite Simpson integrator (vs adaptive Gauss-Kronrod), closed-form
// Born tables for the Werner family (vs projector traces), partial traces,
// and chi-squared machinery for distributional checks.
#pragma once

#include <boost/math/distributions/chi_squared.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "bellbeam/quantum.hpp"

namespace oracles {

/// Composite Simpson on [a, b] with n subintervals (n made even).
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n = 40000) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i)
    sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

/// Closed-form Born table for the Werner state: marginals are maximally
/// mixed and E(a, b) = p (a_x b_x + a_y b_y - a_z b_z), so
/// P(s1, s2) = (1 + s1 s2 E)/4. This route never touches projectors.
inline std::array<double, 4> born_table_werner(double p,
                                               const bellbeam::Vector3& a,
                                               const bellbeam::Vector3& b) {
  const double e = p * (a.x() * b.x() + a.y() * b.y() - a.z() * b.z());
  return {(1.0 + e) / 4.0, (1.0 - e) / 4.0, (1.0 - e) / 4.0,
          (1.0 + e) / 4.0};
}

inline double correlation_werner(double p, const bellbeam::Vector3& a,
                                 const bellbeam::Vector3& b) {
  return p * (a.x() * b.x() + a.y() * b.y() - a.z() * b.z());
}

inline bellbeam::Matrix4c kron2(const bellbeam::Matrix2c& a,
                                const bellbeam::Matrix2c& b) {
  bellbeam::Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Reduced density matrix of the first qubit.
inline bellbeam::Matrix2c partial_trace_second(const bellbeam::Matrix4c& m) {
  bellbeam::Matrix2c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return out;
}

/// Reduced density matrix of the second qubit.
inline bellbeam::Matrix2c partial_trace_first(const bellbeam::Matrix4c& m) {
  bellbeam::Matrix2c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out(i, j) = m(i, j) + m(2 + i, 2 + j);
  return out;
}

inline double chi2_statistic(const std::vector<double>& observed,
                             const std::vector<double>& expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

/// Upper critical value: P(chi2 > value) = alpha.
inline double chi2_critical(int dof, double alpha) {
  return boost::math::quantile(boost::math::chi_squared(dof), 1.0 - alpha);
}

}  // namespace oracles
