#include "polysum/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polysum/errors.hpp"
#include "polysum/polyeval.hpp"

namespace polysum {

std::complex<double> sample_probe(const ProbeRegion& region, RandomStream& stream) {
  return std::visit(
      [&stream](const auto& r) -> std::complex<double> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Rect>) {
          return stream.in_rectangle(r.x_min, r.x_max, r.y_min, r.y_max);
        } else {
          return stream.in_disk(r.center, r.radius);
        }
      },
      region);
}

double linear_statistic(const EmpiricalMeasure& emp, const BumpFunction& phi) {
  KahanSum s;
  for (std::complex<double> z : emp.points) s.add(phi.value(z));
  return s.value() / static_cast<double>(emp.points.size());
}

namespace {

void check_probe_region(const ProbeRegion& region) {
  bool degenerate = std::visit(
      [](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Rect>)
          return !(r.area() > 0);
        else
          return !(r.radius > 0);
      },
      region);
  if (degenerate) throw ConfigError("degenerate probe region");
}

}  // namespace

Estimate ratio_event_probability(const RootMeasure& mu, const RootMeasure& nu, int n,
                                 const ProbeRegion& probe_region, int trials,
                                 std::uint64_t seed) {
  if (trials < 100) throw ConfigError("ratio_event_probability needs trials >= 100");
  check_probe_region(probe_region);
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(trials), 0);
#pragma omp parallel for schedule(static)
  for (long t = 0; t < trials; ++t) {
    RandomStream stream(seed, static_cast<std::uint64_t>(t));
    RootPoly p(mu.sample_roots(n, stream));
    RootPoly q(nu.sample_roots(n, stream));
    std::complex<double> z = sample_probe(probe_region, stream);
    double diff = log_abs(p, z) - log_abs(q, z);
    hit[static_cast<std::size_t>(t)] = std::abs(diff) <= std::log(2.0) ? 1 : 0;
  }
  long successes = 0;
  for (std::uint8_t h : hit) successes += h;
  return binomial_estimate(successes, trials);
}

double gap_set_measure(const RootMeasure& mu, const RootMeasure& nu, const Rect& K, int n,
                       double h) {
  GridSpec spec{K, h};
  if (spec.nx() < 100 || spec.ny() < 100)
    throw ConfigError("gap_set_measure grid must have >= 100 cells per side");
  const double threshold = std::log(static_cast<double>(n)) * std::log(static_cast<double>(n)) /
                           std::sqrt(static_cast<double>(n));
  const std::size_t nx = spec.nx();
  const std::size_t ny = spec.ny();
  std::vector<long> row_counts(ny, 0);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < static_cast<long>(ny); ++j) {
    long count = 0;
    for (std::size_t i = 0; i < nx; ++i) {
      std::complex<double> z = spec.cell_center(i, static_cast<std::size_t>(j));
      double du = mu.potential(z) - nu.potential(z);
      // -inf vs -inf at a shared atom: the gap is 0 there, inside the set.
      if (std::isnan(du)) du = 0.0;
      if (std::abs(du) <= threshold) ++count;
    }
    row_counts[static_cast<std::size_t>(j)] = count;
  }
  long total = 0;
  for (long c : row_counts) total += c;
  return static_cast<double>(total) * h * h;
}

Estimate concentration_second_moment(const RootMeasure& mu, const Rect& K, int n, int trials,
                                     std::uint64_t seed) {
  if (trials < 100) throw ConfigError("concentration_second_moment needs trials >= 100");
  if (!(K.area() > 0)) throw ConfigError("degenerate probe region");
  std::vector<double> samples(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(static)
  for (long t = 0; t < trials; ++t) {
    RandomStream stream(seed, static_cast<std::uint64_t>(t));
    std::complex<double> z = stream.in_rectangle(K.x_min, K.x_max, K.y_min, K.y_max);
    RootPoly p(mu.sample_roots(n, stream));
    double dev = log_abs(p, z) / static_cast<double>(n) - mu.potential(z);
    samples[static_cast<std::size_t>(t)] = dev * dev;
  }
  return mean_and_stderr(samples);
}

KsResult ks_distance_to_cauchy(const EmpiricalMeasure& emp) {
  std::vector<double> y;
  y.reserve(emp.points.size());
  KsResult out;
  for (std::complex<double> z : emp.points) {
    y.push_back(z.imag());
    out.max_abs_real = std::max(out.max_abs_real, std::abs(z.real()));
  }
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    double cdf = 0.5 + std::atan(y[i]) / kPi;
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    out.ks = std::max(out.ks, std::max(cdf - lo, hi - cdf));
  }
  return out;
}

}  // namespace polysum
