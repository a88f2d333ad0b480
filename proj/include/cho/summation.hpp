#pragma once

#include <cmath>

namespace cho {

/// Neumaier-compensated running sum. Also tracks sum |x| for rounding bounds.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      compensation_ += (sum_ - t) + x;
    else
      compensation_ += (x - t) + sum_;
    sum_ = t;
    magnitude_ += std::abs(x);
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  double value() const noexcept { return sum_ + compensation_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
  double magnitude_ = 0.0;
};

}  // namespace cho
