#pragma once

#include <cmath>

namespace estfam {

/// Neumaier's compensated summation. Accumulation order is part of the
/// result, so callers that need deterministic totals must feed values in a
/// fixed order and merge partial sums in a fixed order.
class NeumaierSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  void merge(const NeumaierSum& other) noexcept {
    add(other.sum_);
    comp_ += other.comp_;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace estfam
