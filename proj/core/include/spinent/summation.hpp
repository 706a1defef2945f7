#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

namespace spinent {

// Sums at or above this many terms switch to compensated accumulation.
inline constexpr std::size_t kCompensatedSumThreshold = 10000;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

class PlainSum {
 public:
  void add(double v) { sum_ += v; }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
};

template <class Acc>
class ComplexAcc {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  Acc re_;
  Acc im_;
};

}  // namespace spinent
