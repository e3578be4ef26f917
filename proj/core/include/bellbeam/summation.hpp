// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace bellbeam {

/// Neumaier-compensated accumulator. Keeps estimator term sums accurate to
/// ~1 ulp independent of addend ordering.
class NeumaierSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace bellbeam
