#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace polysum {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduce an angle to (-pi, pi].
inline double normalize_angle(double a) {
  a = std::remainder(a, kTwoPi);  // [-pi, pi], ties arbitrary
  if (a <= -kPi) a += kTwoPi;
  return a;
}

// Compensated accumulator. Used wherever a sum must not depend on how work
// was chunked across threads (partial results are combined in a fixed order).
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

struct Rect {
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  bool contains(std::complex<double> z) const {
    return z.real() >= x_min && z.real() <= x_max && z.imag() >= y_min && z.imag() <= y_max;
  }
};

// Sample mean and standard error of the mean.
struct Estimate {
  double value = 0;
  double stderr_ = 0;
};

Estimate mean_and_stderr(const std::vector<double>& samples);

// Binomial proportion with its normal-approximation standard error.
Estimate binomial_estimate(long successes, long trials);

}  // namespace polysum
