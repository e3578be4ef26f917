// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace bellbeam {

/// Adaptive Gauss-Kronrod integration of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-9);

/// Same, but forces subdivision at the given interior breakpoints first.
/// Needed when the integrand has narrow peaks a top-level rule could miss.
double integrate_segmented(const std::function<double(double)>& f, double a,
                           double b, std::vector<double> breakpoints,
                           double rel_tol = 1e-9);

}  // namespace bellbeam
