#include "polysum/polyeval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polysum/errors.hpp"
#include "polysum/util.hpp"

namespace polysum {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::complex<double> LogComplex::to_complex() const {
  if (log_mag == -kInf) return {0.0, 0.0};
  return std::polar(std::exp(log_mag), phase);
}

RootPoly::RootPoly(std::vector<std::complex<double>> roots) : roots_(std::move(roots)) {
  if (roots_.empty()) throw ConfigError("RootPoly needs degree >= 1");
}

PolySum::PolySum(std::vector<RootPoly> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw ConfigError("PolySum needs at least one part");
  for (const RootPoly& p : parts_)
    if (p.degree() != parts_.front().degree())
      throw ConfigError("PolySum parts must have equal degree");
}

double log_abs(const RootPoly& poly, std::complex<double> z) {
  KahanSum acc;
  for (std::complex<double> x : poly.roots()) {
    double d = std::abs(z - x);
    if (d == 0) return -kInf;
    acc.add(std::log(d));
  }
  return acc.value();
}

LogComplex log_eval(const RootPoly& poly, std::complex<double> z) {
  KahanSum mag;
  double phase = 0;
  bool zero = false;
  for (std::complex<double> x : poly.roots()) {
    std::complex<double> f = z - x;
    double d = std::abs(f);
    if (d == 0) {
      zero = true;
      break;
    }
    mag.add(std::log(d));
    phase = normalize_angle(phase + std::arg(f));  // reduce per factor
  }
  if (zero) return {-kInf, 0.0};
  return {mag.value(), phase};
}

std::complex<double> log_derivative(const RootPoly& poly, std::complex<double> z) {
  std::complex<double> acc = 0;
  for (std::complex<double> x : poly.roots()) {
    std::complex<double> f = z - x;
    if (f == std::complex<double>(0, 0)) throw EvalAtRootError();
    acc += 1.0 / f;
  }
  return acc;
}

namespace {

// Part values at z ordered by descending log-magnitude; summation in this
// order (after factoring out the max) keeps the result independent of the
// part ordering in the PolySum.
struct PartEvals {
  std::vector<LogComplex> values;
  std::vector<int> order;
  double scale;  // max log_mag
};

PartEvals eval_parts(const PolySum& sum, std::complex<double> z) {
  PartEvals pe;
  pe.values.reserve(sum.parts().size());
  for (const RootPoly& p : sum.parts()) pe.values.push_back(log_eval(p, z));
  pe.order.resize(pe.values.size());
  std::iota(pe.order.begin(), pe.order.end(), 0);
  std::stable_sort(pe.order.begin(), pe.order.end(),
                   [&](int a, int b) { return pe.values[a].log_mag > pe.values[b].log_mag; });
  pe.scale = pe.values[pe.order.front()].log_mag;
  return pe;
}

}  // namespace

ScaledValue sum_eval(const PolySum& sum, std::complex<double> z) {
  PartEvals pe = eval_parts(sum, z);
  if (pe.scale == -kInf) return {{0.0, 0.0}, -kInf};
  std::complex<double> acc = 0;
  for (int k : pe.order) {
    const LogComplex& v = pe.values[k];
    if (v.log_mag == -kInf) continue;
    acc += std::polar(std::exp(v.log_mag - pe.scale), v.phase);
  }
  return {acc, pe.scale};
}

std::complex<double> sum_newton_ratio(const PolySum& sum, std::complex<double> z) {
  PartEvals pe = eval_parts(sum, z);
  if (pe.scale == -kInf) throw EvalAtRootError();
  std::complex<double> numer = 0;
  std::complex<double> denom = 0;
  for (int k : pe.order) {
    const LogComplex& v = pe.values[k];
    if (v.log_mag == -kInf) throw EvalAtRootError();  // z is a root of part k
    std::complex<double> term = std::polar(std::exp(v.log_mag - pe.scale), v.phase);
    numer += term;
    denom += term * log_derivative(sum.parts()[static_cast<std::size_t>(k)], z);
  }
  if (std::abs(denom) < 1e-300 * (1.0 + std::abs(numer))) throw DerivativeVanishedError();
  return numer / denom;
}

}  // namespace polysum
