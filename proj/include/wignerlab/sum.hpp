#pragma once

#include <cmath>
#include <complex>
#include <span>

namespace wignerlab {

// Neumaier-compensated accumulator. Additions are applied in call order, so a
// fixed traversal order makes every reduction bit-reproducible.
class KahanSum {
public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class KahanSumComplex {
public:
  void add(std::complex<double> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const noexcept {
    return {re_.value(), im_.value()};
  }

private:
  KahanSum re_;
  KahanSum im_;
};

inline double sum_ordered(std::span<const double> xs) noexcept {
  KahanSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

inline std::complex<double> sum_ordered(
    std::span<const std::complex<double>> xs) noexcept {
  KahanSumComplex s;
  for (auto x : xs) s.add(x);
  return s.value();
}

}  // namespace wignerlab
