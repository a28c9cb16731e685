#pragma once

#include <complex>
#include <span>
#include <vector>

namespace polysum {

// Value in log form: exp(log_mag) * e^{i phase}. log_mag = -infinity encodes
// an exact zero (phase conventionally 0). Keeps products of ~10^4 linear
// factors representable in doubles.
struct LogComplex {
  double log_mag;
  double phase;  // (-pi, pi]

  std::complex<double> to_complex() const;
};

// A monic polynomial stored as its root list; never expanded to coefficients.
class RootPoly {
 public:
  explicit RootPoly(std::vector<std::complex<double>> roots);

  int degree() const { return static_cast<int>(roots_.size()); }
  std::span<const std::complex<double>> roots() const { return roots_; }

 private:
  std::vector<std::complex<double>> roots_;
};

// S(z) = sum of m equal-degree monic polynomials; degree n, leading coeff m.
class PolySum {
 public:
  explicit PolySum(std::vector<RootPoly> parts);

  int degree() const { return parts_.front().degree(); }
  int part_count() const { return static_cast<int>(parts_.size()); }
  std::span<const RootPoly> parts() const { return parts_; }

 private:
  std::vector<RootPoly> parts_;
};

// sum_i log|z - x_i|; -infinity iff z hits a root exactly.
double log_abs(const RootPoly& poly, std::complex<double> z);

LogComplex log_eval(const RootPoly& poly, std::complex<double> z);

// p'(z)/p(z) = sum_i 1/(z - x_i). Throws EvalAtRootError on an exact root hit.
std::complex<double> log_derivative(const RootPoly& poly, std::complex<double> z);

// S(z) = exp(scale) * scaled with scale = max over parts of log|p_k(z)| and
// |scaled| <= m. All parts zero at z gives (0, -infinity).
struct ScaledValue {
  std::complex<double> scaled;
  double scale;
};
ScaledValue sum_eval(const PolySum& sum, std::complex<double> z);

// Newton step S(z)/S'(z). Throws EvalAtRootError if z is a root of some part
// and DerivativeVanishedError if S'(z) underflows relative to S(z).
std::complex<double> sum_newton_ratio(const PolySum& sum, std::complex<double> z);

}  // namespace polysum
