// End-to-end acceptance checks. Each case prints exactly one line:
//   criterion <k> (<name>): pass|FAIL
// Statistical thresholds marked "pilot" were fixed from committed pilot runs
// of the same seeds and are deterministic under the fixed seeds used here.

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "polysum/limitlaw.hpp"
#include "polysum/matching.hpp"
#include "polysum/measures.hpp"
#include "polysum/rootfinder.hpp"
#include "polysum/stats.hpp"
#include "polysum/util.hpp"

using namespace polysum;
using std::complex;
namespace fs = std::filesystem;

namespace {

using clk = std::chrono::steady_clock;

double secs(clk::time_point t0) {
  return std::chrono::duration<double>(clk::now() - t0).count();
}

void report(int k, const char* name, bool ok) {
  std::printf("criterion %d (%s): %s\n", k, name, ok ? "pass" : "FAIL");
  std::fflush(stdout);
  CHECK(ok);
}

RootPoly repeated(complex<double> root, int n) {
  return RootPoly(std::vector<complex<double>>(static_cast<std::size_t>(n), root));
}

const std::vector<RootMeasure>& disk_pair() {
  static const std::vector<RootMeasure> m = {RootMeasure::uniform_disk({1, 0}, 1.0),
                                             RootMeasure::uniform_disk({-1, 0}, 1.0)};
  return m;
}

const std::vector<RootMeasure>& circle_pair() {
  static const std::vector<RootMeasure> m = {RootMeasure::uniform_circle({0, 0}, 1.0),
                                             RootMeasure::uniform_circle({0, 0}, 2.0)};
  return m;
}

const std::vector<BumpFunction>& cauchy_bumps() {
  static const std::vector<BumpFunction> b = {
      {{0, 0}, 3.0, 1.0}, {{0, 1}, 3.0, 1.0}, {{0, -2}, 3.0, 1.0}};
  return b;
}

std::vector<complex<double>> cot_zeros(int n) {
  std::vector<complex<double>> out;
  for (int k = 1; k <= n; ++k) out.emplace_back(0.0, -1.0 / std::tan((2 * k + 1) * kPi / (2 * n)));
  return out;
}

RootFindReport simulate_instance(const std::vector<RootMeasure>& measures, int n,
                                 std::uint64_t seed, std::uint64_t trial) {
  RandomStream rs(seed, trial);
  std::vector<RootPoly> parts;
  for (const RootMeasure& m : measures) parts.emplace_back(m.sample_roots(n, rs));
  PolySum sum(std::move(parts));
  return find_roots(sum, {}, splitmix64(seed) + trial);
}

}  // namespace

TEST_CASE("criterion 1") {
  auto t0 = clk::now();
  const int n = 100;
  PolySum sum({repeated({1, 0}, n), repeated({-1, 0}, n)});
  auto rep = find_roots(sum);
  double err = max_matching_distance(rep.roots, cot_zeros(n));
  bool ok = rep.residual_ok && err <= 1e-8 && secs(t0) < 2.0;
  report(1, "cot formula, n=100", ok);
}

TEST_CASE("criterion 2") {
  auto t0 = clk::now();
  const int n = 64;
  std::vector<complex<double>> unit, twice;
  for (int k = 0; k < n; ++k) {
    complex<double> w = std::polar(1.0, kTwoPi * k / n);
    unit.push_back(w);
    twice.push_back(2.0 * w);
  }
  PolySum sum({RootPoly(unit), RootPoly(twice)});
  auto rep = find_roots(sum);

  double expected_mod =
      std::exp((n * std::log(2.0) + std::log1p(std::pow(2.0, -n)) - std::log(2.0)) / n);
  double mod_err = 0, arg_err = 0;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (complex<double> z : rep.roots) {
    mod_err = std::max(mod_err, std::abs(std::abs(z) - expected_mod) / expected_mod);
    long k = std::lround(std::arg(z) * n / kTwoPi);
    arg_err = std::max(arg_err, std::abs(std::arg(z) - kTwoPi * static_cast<double>(k) / n));
    seen[static_cast<std::size_t>(((k % n) + n) % n)] = true;
  }
  bool distinct = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  bool ok = rep.residual_ok && distinct && mod_err <= 1e-10 && arg_err <= 1e-10 &&
            secs(t0) < 2.0;
  report(2, "modulus formula, n=64", ok);
}

TEST_CASE("criterion 3") {
  auto t0 = clk::now();
  const std::uint64_t seed = 42;
  const int degrees[] = {10, 50, 200};
  int failures = 0;
  for (int i = 0; i < 100; ++i) {
    RandomStream rs(seed, 1000 + static_cast<std::uint64_t>(i));
    int m = 2 + static_cast<int>(rs.uniform01() * 2.0);
    int n = degrees[i % 3];
    std::vector<RootPoly> parts;
    for (int k = 0; k < m; ++k)
      parts.emplace_back(random_catalog_measure(rs).sample_roots(n, rs));
    PolySum sum(std::move(parts));
    auto rep = find_roots(sum, {}, splitmix64(seed) + static_cast<std::uint64_t>(i));
    double bound = walsh_bound(sum);
    bool inside = std::all_of(rep.roots.begin(), rep.roots.end(),
                              [&](complex<double> z) { return std::abs(z) <= bound; });
    if (!(rep.residual_ok && certify(sum, rep) && inside)) ++failures;
  }
  bool ok = failures == 0 && secs(t0) < 60.0;
  report(3, "Walsh containment fuzz, 100 instances", ok);
}

TEST_CASE("criterion 4") {
  auto t0 = clk::now();
  bool ok = true;
  for (const BumpFunction& phi : cauchy_bumps()) {
    GridSpec spec{{phi.center.real() - phi.radius - 0.2, phi.center.real() + phi.radius + 0.2,
                   phi.center.imag() - phi.radius - 0.2, phi.center.imag() + phi.radius + 0.2},
                  0.005};
    double got = weak_integral(disk_pair(), phi, spec);
    ok = ok && std::abs(got - cauchy_reference(phi)) <= 1e-3;
  }
  ok = ok && secs(t0) < 120.0;
  report(4, "Cauchy prediction via weak integrals", ok);
}

TEST_CASE("criterion 5") {
  auto t0 = clk::now();
  const int n = 200, trials = 50;
  const std::uint64_t seed = 777;
  // pilot stderr at these seeds: 2.7e-4, 2.7e-4, 3.2e-4
  const double stderr_max[] = {4e-4, 4e-4, 5e-4};

  std::vector<std::vector<double>> stats(cauchy_bumps().size());
  bool converged = true;
  for (int t = 0; t < trials; ++t) {
    auto rep = simulate_instance(disk_pair(), n, seed, static_cast<std::uint64_t>(t));
    converged = converged && rep.residual_ok;
    EmpiricalMeasure emp{rep.roots, n, seed, {}};
    for (std::size_t b = 0; b < cauchy_bumps().size(); ++b)
      stats[b].push_back(linear_statistic(emp, cauchy_bumps()[b]));
  }
  bool ok = converged;
  for (std::size_t b = 0; b < cauchy_bumps().size(); ++b) {
    Estimate e = mean_and_stderr(stats[b]);
    double ref = cauchy_reference(cauchy_bumps()[b]);
    ok = ok && std::abs(e.value - ref) <= 3.0 * e.stderr_ && e.stderr_ <= stderr_max[b];
  }
  ok = ok && secs(t0) < 600.0;
  report(5, "Cauchy convergence of linear statistics, n=200", ok);
}

TEST_CASE("criterion 6") {
  auto t0 = clk::now();
  const int n = 500, trials = 20;
  const double radius = 1.0 + 3 * 0.01;
  const double escape_max = 0.02;  // pilot: every trial fraction was exactly 0

  std::vector<double> fracs;
  bool converged = true;
  for (int t = 0; t < trials; ++t) {
    auto rep = simulate_instance(circle_pair(), n, 888, static_cast<std::uint64_t>(t));
    converged = converged && rep.residual_ok;
    int inside = 0;
    for (complex<double> z : rep.roots)
      if (std::abs(z) <= radius) ++inside;
    fracs.push_back(static_cast<double>(inside) / n);
  }
  Estimate e = mean_and_stderr(fracs);
  bool ok = converged && e.value <= escape_max && secs(t0) < 300.0;
  report(6, "inner-disk mass escape for the circle pair, n=500", ok);
}

TEST_CASE("criterion 7") {
  const int n = 500, trials = 50;
  // pilot KS over these seeds: median 0.007, p90 0.012, max 0.013
  int good = 0;
  bool converged = true;
  for (int t = 0; t < trials; ++t) {
    auto rep = simulate_instance(disk_pair(), n, 999, static_cast<std::uint64_t>(t));
    converged = converged && rep.residual_ok;
    EmpiricalMeasure emp{rep.roots, n, 999, {}};
    if (ks_distance_to_cauchy(emp).ks <= 0.15) ++good;
  }
  // exact-roots control: the cot zeros are Cauchy midpoint quantiles
  EmpiricalMeasure control{cot_zeros(100), 100, 0, {}};
  bool control_ok = ks_distance_to_cauchy(control).ks <= 0.01;
  bool ok = converged && good >= 45 && control_ok;
  report(7, "KS distance to Cauchy, n=500", ok);
}

TEST_CASE("criterion 8") {
  auto t0 = clk::now();
  auto mu = RootMeasure::uniform_disk({0, 0}, 1.0);
  Rect K{2.0, 3.0, 0.0, 1.0};
  Estimate m100 = concentration_second_moment(mu, K, 100, 2000, 4242);
  Estimate m400 = concentration_second_moment(mu, K, 400, 2000, 4243);
  double ratio = m400.value / m100.value;
  bool ok = ratio >= 0.125 && ratio <= 0.5 && secs(t0) < 120.0;
  report(8, "concentration second moment scales like 1/n", ok);
}

TEST_CASE("criterion 9") {
  Rect probe{-0.5, 0.5, -0.5, 0.5};
  Estimate p100 = ratio_event_probability(disk_pair()[0], disk_pair()[1], 100, probe, 5000, 5151);
  Estimate p400 = ratio_event_probability(disk_pair()[0], disk_pair()[1], 400, probe, 5000, 5152);
  bool ok = p100.value > 0 && p400.value / p100.value <= 0.9;
  report(9, "ratio event probability decays with n", ok);
}

TEST_CASE("criterion 10") {
  struct Setup {
    std::vector<RootMeasure> measures;
    Rect bounds;
    double h;
  };
  std::vector<Setup> setups = {
      // tall window: the Cauchy limit keeps ~2.5% of its mass beyond |y| = 26
      {disk_pair(), {-4.0, 4.0, -28.0, 28.0}, 0.02},
      {circle_pair(), {-4.0, 4.0, -4.0, 4.0}, 0.01},
      {{RootMeasure::atomic({{{1, 0}, 0.5}, {{-1, 0}, 0.5}}),
        RootMeasure::atomic({{{0, 1}, 0.5}, {{0, -1}, 0.5}})},
       {-10.0, 10.0, -10.0, 10.0},
       0.02},
  };
  bool ok = true;
  for (const Setup& s : setups) {
    GridField d = grid_density(s.measures, {s.bounds, s.h});
    double mass = d.total();
    ok = ok && mass >= 0.97 && mass <= 1.01 && d.min_value() >= -10.0 * s.h * s.h;
  }
  report(10, "limit measure normalization and positivity", ok);
}

TEST_CASE("criterion 11") {
  fs::path base = fs::temp_directory_path() / "polysum_acceptance_repro";
  fs::remove_all(base);
  fs::create_directories(base);
  fs::path cfg = fs::path(POLYSUM_CONFIG_DIR) / "disks.json";

  auto run = [&](const std::string& out) {
    std::string cmd = std::string(POLYSUM_CLI_PATH) + " simulate --config " + cfg.string() +
                      " --n 50 --trials 2 --seed 321 --out " + out + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  fs::path a = base / "a", b = base / "b";
  bool ok = run(a.string()) == 0 && run(b.string()) == 0;

  if (ok) {
    std::vector<fs::path> names;
    for (const auto& entry : fs::directory_iterator(a)) names.push_back(entry.path().filename());
    ok = !names.empty();
    for (const fs::path& name : names) {
      std::ifstream fa(a / name, std::ios::binary), fb(b / name, std::ios::binary);
      std::stringstream sa, sb;
      sa << fa.rdbuf();
      sb << fb.rdbuf();
      ok = ok && fb.good() && sa.str() == sb.str();
    }
  }
  report(11, "simulate is byte-reproducible", ok);
}
