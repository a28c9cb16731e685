#include "polysum/rootfinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polysum/errors.hpp"
#include "polysum/rng.hpp"
#include "polysum/util.hpp"

namespace polysum {

namespace {

constexpr double kCollisionTol = 1e-14;
// A zero of S can lie within one ulp of a component root (the other parts'
// magnitudes can dominate down to sub-ulp distances), so iterates legitimately
// round onto component roots where the factored evaluation degenerates. A
// few-ulp nudge recovers an honest Newton ratio without disturbing convergence.
constexpr double kRootHitNudge = 4.0 * std::numeric_limits<double>::epsilon();
constexpr double kCertifyNewtonTol = 1e-6;   // loose enough for root clusters
constexpr double kCertifyProbeTol = 1e-6;    // relative, in log magnitude

double max_root_modulus(const PolySum& sum) {
  double m = 0;
  for (const RootPoly& p : sum.parts())
    for (std::complex<double> x : p.roots()) m = std::max(m, std::abs(x));
  return m;
}

std::complex<double> unit_phase(RandomStream& rs) {
  return std::polar(1.0, kTwoPi * rs.uniform01());
}

// Newton ratio with the exact-root-hit rule: nudge z by a few ulps in a
// random direction and retry.
std::complex<double> newton_ratio_robust(const PolySum& sum, std::complex<double>& z,
                                         RandomStream& rs) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return sum_newton_ratio(sum, z);
    } catch (const EvalAtRootError&) {
      z += kRootHitNudge * (1.0 + std::abs(z)) * unit_phase(rs);
    } catch (const DerivativeVanishedError&) {
      z += kRootHitNudge * (1.0 + std::abs(z)) * unit_phase(rs);
    }
  }
  return sum_newton_ratio(sum, z);  // let the failure propagate
}

struct StepResult {
  std::complex<double> z_new;
  double correction;  // |w|/(1+|z|)
};

StepResult aberth_step(const PolySum& sum, std::complex<double> z,
                       const std::vector<std::complex<double>>& others, std::size_t self,
                       std::uint64_t perturb_seed) {
  RandomStream rs(perturb_seed, self);
  std::complex<double> w = newton_ratio_robust(sum, z, rs);
  std::complex<double> repulsion = 0;
  for (std::size_t l = 0; l < others.size(); ++l) {
    if (l == self) continue;
    std::complex<double> d = z - others[l];
    if (std::abs(d) < kCollisionTol * (1.0 + std::abs(z))) {
      // Collided iterates: separate instead of letting the term blow up.
      return {z + 1e-10 * unit_phase(rs), std::numeric_limits<double>::max()};
    }
    repulsion += 1.0 / d;
  }
  std::complex<double> denom = 1.0 - w * repulsion;
  std::complex<double> step = (std::abs(denom) > 1e-300) ? w / denom : w;
  return {z - step, std::abs(w) / (1.0 + std::abs(z))};
}

}  // namespace

double walsh_bound(const PolySum& sum) {
  double big_m = max_root_modulus(sum);
  int m = sum.part_count();
  if (m == 1) return big_m;
  int n = sum.degree();
  if (n < 2) throw ConfigError("degree too small for Walsh bound");
  double s = std::sin(kPi / n);
  return std::pow(2.0 / s, m - 1) * big_m;
}

double aberth_sweep(const PolySum& sum, const std::vector<std::complex<double>>& current,
                    std::vector<std::complex<double>>& next, std::uint64_t perturb_seed,
                    bool parallel) {
  const std::size_t n = current.size();
  next.resize(n);
  std::vector<double> corr(n);
#pragma omp parallel for schedule(static) if (parallel)
  for (long j = 0; j < static_cast<long>(n); ++j) {
    StepResult r =
        aberth_step(sum, current[static_cast<std::size_t>(j)], current,
                    static_cast<std::size_t>(j), perturb_seed);
    next[static_cast<std::size_t>(j)] = r.z_new;
    corr[static_cast<std::size_t>(j)] = r.correction;
  }
  return *std::max_element(corr.begin(), corr.end());
}

namespace {

// In-place sweep in index order; used as the robust fallback on the final
// restart.
double gauss_seidel_sweep(const PolySum& sum, std::vector<std::complex<double>>& z,
                          std::uint64_t perturb_seed) {
  double worst = 0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    StepResult r = aberth_step(sum, z[j], z, j, perturb_seed);
    worst = std::max(worst, r.correction);
    z[j] = r.z_new;
  }
  return worst;
}

}  // namespace

RootFindReport find_roots(const PolySum& sum, const RootFindOptions& opts, std::uint64_t seed) {
  const int n = sum.degree();
  const double big_m = max_root_modulus(sum);

  RootFindReport report;
  report.walsh_radius = (n >= 2 || sum.part_count() == 1) ? walsh_bound(sum) : big_m;

  if (n == 1) {
    // S(z) = m z - sum of the parts' roots.
    std::complex<double> acc = 0;
    for (const RootPoly& p : sum.parts()) acc += p.roots()[0];
    report.roots = {acc / static_cast<double>(sum.part_count())};
    report.iterations = 0;
    report.residual_ok = true;
    return report;
  }

  const double init_radius = opts.init_radius_factor * (big_m + 1.0);
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> z_next;
  bool converged = false;
  double corr = std::numeric_limits<double>::max();
  int total_sweeps = 0;

  for (int restart = 0; restart <= opts.restarts && !converged; ++restart) {
    RandomStream rs(seed, static_cast<std::uint64_t>(restart));
    double eta = rs.uniform01();
    for (int j = 0; j < n; ++j)
      z[static_cast<std::size_t>(j)] = std::polar(init_radius, kTwoPi * (j + eta) / n);

    const bool gauss_seidel = (restart == opts.restarts && restart > 0);
    for (int it = 0; it < opts.max_iters; ++it) {
      std::uint64_t pseed = splitmix64(seed) ^ (static_cast<std::uint64_t>(restart) << 32) ^
                            static_cast<std::uint64_t>(it);
      if (gauss_seidel) {
        corr = gauss_seidel_sweep(sum, z, pseed);
      } else {
        corr = aberth_sweep(sum, z, z_next, pseed, true);
      }
      ++total_sweeps;
      if (corr <= opts.tol) {
        converged = true;  // corr was measured at the current points
        break;
      }
      if (!gauss_seidel) z.swap(z_next);
    }
  }

  report.roots = std::move(z);
  report.iterations = total_sweeps;
  report.max_newton_correction = corr;
  bool contained = std::all_of(report.roots.begin(), report.roots.end(), [&](std::complex<double> r) {
    return std::abs(r) <= report.walsh_radius;
  });
  report.residual_ok = converged && contained;
  return report;
}

bool certify(const PolySum& sum, const RootFindReport& report) {
  const int n = sum.degree();
  if (static_cast<int>(report.roots.size()) != n) return false;

  double wb = (n >= 2 || sum.part_count() == 1)
                  ? walsh_bound(sum)
                  : max_root_modulus(sum) + 1e-12;
  for (std::complex<double> r : report.roots)
    if (std::abs(r) > wb) return false;

  for (std::complex<double> r : report.roots) {
    // A reported zero may coincide with a component root at double precision
    // (see kRootHitNudge); evaluate at nudged points in that case.
    bool evaluated = false;
    std::complex<double> probe = r;
    for (int attempt = 0; attempt < 4 && !evaluated; ++attempt) {
      try {
        std::complex<double> w = sum_newton_ratio(sum, probe);
        if (std::abs(w) > kCertifyNewtonTol * (1.0 + std::abs(r))) return false;
        evaluated = true;
      } catch (const EvalAtRootError&) {
        probe = r + std::polar(kRootHitNudge * (attempt + 1.0) * (1.0 + std::abs(r)),
                               kTwoPi * attempt / 4.0);
      } catch (const DerivativeVanishedError&) {
        probe = r + std::polar(kRootHitNudge * (attempt + 1.0) * (1.0 + std::abs(r)),
                               kTwoPi * attempt / 4.0);
      }
    }
    if (!evaluated) return false;
  }

  // Reconstruct S at probe points from m * prod (probe - z_j).
  const double probe_radius = 2.0 * (max_root_modulus(sum) + 1.0);
  RandomStream rs(0xcafef00d);
  int checked = 0;
  int attempts = 0;
  while (checked < 5 && attempts < 100) {
    ++attempts;
    std::complex<double> probe = std::polar(probe_radius, kTwoPi * rs.uniform01());
    double nearest = std::numeric_limits<double>::max();
    for (std::complex<double> r : report.roots) nearest = std::min(nearest, std::abs(probe - r));
    if (nearest < 1e-3 * (1.0 + probe_radius)) continue;  // ill-conditioned probe

    ScaledValue sv = sum_eval(sum, probe);
    if (sv.scale == -std::numeric_limits<double>::infinity() || std::abs(sv.scaled) == 0)
      continue;
    double log_s = sv.scale + std::log(std::abs(sv.scaled));
    KahanSum recon;
    recon.add(std::log(static_cast<double>(sum.part_count())));
    for (std::complex<double> r : report.roots) recon.add(std::log(std::abs(probe - r)));
    if (std::abs(log_s - recon.value()) > kCertifyProbeTol * std::max(1.0, std::abs(log_s)))
      return false;
    ++checked;
  }
  return checked == 5;
}

}  // namespace polysum
