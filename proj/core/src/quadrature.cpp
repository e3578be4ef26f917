// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#include "bellbeam/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <stdexcept>

#include "bellbeam/summation.hpp"

namespace bellbeam {

namespace {
using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
constexpr unsigned kMaxDepth = 18;
}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  if (!(a <= b)) throw std::domain_error("integrate: a must be <= b");
  if (a == b) return 0.0;
  return Rule::integrate(f, a, b, kMaxDepth, rel_tol);
}

double integrate_segmented(const std::function<double(double)>& f, double a,
                           double b, std::vector<double> breakpoints,
                           double rel_tol) {
  if (!(a <= b)) throw std::domain_error("integrate: a must be <= b");
  std::erase_if(breakpoints, [&](double x) { return x <= a || x >= b; });
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());

  NeumaierSum total;
  double lo = a;
  for (double cut : breakpoints) {
    total.add(Rule::integrate(f, lo, cut, kMaxDepth, rel_tol));
    lo = cut;
  }
  total.add(Rule::integrate(f, lo, b, kMaxDepth, rel_tol));
  return total.value();
}

}  // namespace bellbeam
