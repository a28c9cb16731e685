#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "polysum/limitlaw.hpp"
#include "polysum/measures.hpp"
#include "polysum/util.hpp"

namespace polysum {

// Zeros of one simulated instance together with how they were produced.
struct EmpiricalMeasure {
  std::vector<std::complex<double>> points;
  int n = 0;
  std::uint64_t seed = 0;
  std::string measure_id;
};

// Probe region for the random evaluation point Z: uniform on a rectangle or
// on a disk.
struct DiskRegion {
  std::complex<double> center;
  double radius;
};
using ProbeRegion = std::variant<Rect, DiskRegion>;

std::complex<double> sample_probe(const ProbeRegion& region, RandomStream& stream);

// (1/n) sum phi(z_i).
double linear_statistic(const EmpiricalMeasure& emp, const BumpFunction& phi);

// Monte-Carlo probability of 1/2 <= |p_n(Z)/q_n(Z)| <= 2 over independent
// (roots, Z) draws, with binomial standard error.
Estimate ratio_event_probability(const RootMeasure& mu, const RootMeasure& nu, int n,
                                 const ProbeRegion& probe_region, int trials,
                                 std::uint64_t seed);

// Lebesgue measure (h^2 * cell count) of {z in K : |U_mu - U_nu| <= log^2 n / sqrt n}.
double gap_set_measure(const RootMeasure& mu, const RootMeasure& nu, const Rect& K, int n,
                       double h);

// Monte-Carlo estimate of E |(1/n) log|p_n(Z)| - U_mu(Z)|^2, Z uniform on K,
// fresh roots each trial.
Estimate concentration_second_moment(const RootMeasure& mu, const Rect& K, int n, int trials,
                                     std::uint64_t seed);

// Kolmogorov-Smirnov distance between the imaginary parts of the points and
// the standard Cauchy CDF, plus the largest |real part| as an axis-adherence
// statistic.
struct KsResult {
  double ks = 0;
  double max_abs_real = 0;
};
KsResult ks_distance_to_cauchy(const EmpiricalMeasure& emp);

struct DiagnosticsReport {
  int n = 0;
  int trials = 0;
  Estimate ratio_event_prob;
  double gap_set = 0;
  Estimate concentration_second_moment;
};

}  // namespace polysum
