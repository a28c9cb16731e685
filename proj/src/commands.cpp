#include "polysum/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "polysum/errors.hpp"
#include "polysum/matching.hpp"
#include "polysum/rootfinder.hpp"

namespace polysum {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

void apply_threads(const ExperimentConfig& cfg) {
#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#else
  (void)cfg;
#endif
}

ordered_json manifest_header(const ExperimentConfig& cfg, const std::string& command) {
  ordered_json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["config_hash"] = fmt::format("{:016x}", cfg.config_hash);
  m["seed"] = cfg.seed;
  return m;
}

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

// Stream identifier for one simulated instance, so every (n, trial) pair has
// an independent reproducible random stream.
std::uint64_t instance_stream(int n, int trial) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)) << 32) |
         static_cast<std::uint32_t>(trial);
}

struct Instance {
  std::vector<std::vector<std::complex<double>>> component_roots;
  RootFindReport report;
};

Instance run_instance(const ExperimentConfig& cfg, int n, int trial) {
  RandomStream stream(cfg.seed, instance_stream(n, trial));
  Instance inst;
  std::vector<RootPoly> parts;
  for (const RootMeasure& m : cfg.measures) {
    auto roots = m.sample_roots(n, stream);
    inst.component_roots.push_back(roots);
    parts.emplace_back(std::move(roots));
  }
  PolySum sum(std::move(parts));
  inst.report = find_roots(sum, {}, splitmix64(cfg.seed ^ instance_stream(n, trial)));
  return inst;
}

void require_measures(const ExperimentConfig& cfg, std::size_t at_least) {
  if (cfg.measures.size() < at_least)
    throw ConfigError(fmt::format("this command needs at least {} measure(s)", at_least));
}

void require_n(const ExperimentConfig& cfg) {
  if (cfg.n_list.empty()) throw ConfigError("config must set n");
}

GridSpec bump_grid(const BumpFunction& phi, double h) {
  double margin = std::max(0.1, 3.0 * h);
  return {{phi.center.real() - phi.radius - margin, phi.center.real() + phi.radius + margin,
           phi.center.imag() - phi.radius - margin, phi.center.imag() + phi.radius + margin},
          h};
}

ordered_json bump_json(const BumpFunction& phi) {
  return {{"center", {phi.center.real(), phi.center.imag()}},
          {"radius", phi.radius},
          {"amplitude", phi.amplitude}};
}

}  // namespace

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& log) {
  require_measures(cfg, 1);
  require_n(cfg);
  apply_threads(cfg);
  fs::create_directories(cfg.output_dir);

  struct Job {
    int n;
    int trial;
  };
  std::vector<Job> jobs;
  for (int n : cfg.n_list)
    for (int t = 0; t < cfg.trials; ++t) jobs.push_back({n, t});

  std::vector<Instance> results(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(jobs.size()); ++i)
    results[static_cast<std::size_t>(i)] =
        run_instance(cfg, jobs[static_cast<std::size_t>(i)].n, jobs[static_cast<std::size_t>(i)].trial);

  // Single writer, in job order, so outputs are byte-stable.
  ordered_json manifest = manifest_header(cfg, "simulate");
  manifest["trials"] = ordered_json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    const Instance& inst = results[i];

    fs::path roots_path = cfg.output_dir / fmt::format("roots_n{}_trial{}.csv", job.n, job.trial);
    std::ofstream roots_out(roots_path);
    roots_out << "re,im,component\n";
    for (std::size_t k = 0; k < inst.component_roots.size(); ++k)
      for (std::complex<double> r : inst.component_roots[k])
        roots_out << fmt::format("{},{},{}\n", r.real(), r.imag(), k);

    fs::path zeros_path = cfg.output_dir / fmt::format("zeros_n{}_trial{}.csv", job.n, job.trial);
    std::ofstream zeros_out(zeros_path);
    zeros_out << "re,im\n";
    for (std::complex<double> z : inst.report.roots)
      zeros_out << fmt::format("{},{}\n", z.real(), z.imag());

    ordered_json entry;
    entry["n"] = job.n;
    entry["trial"] = job.trial;
    entry["residual_ok"] = inst.report.residual_ok;
    entry["iterations"] = inst.report.iterations;
    entry["walsh_radius"] = inst.report.walsh_radius;
    entry["max_newton_correction"] = inst.report.max_newton_correction;
    manifest["trials"].push_back(entry);
    all_ok = all_ok && inst.report.residual_ok;
  }
  write_json(cfg.output_dir / "manifest.json", manifest);

  if (!all_ok) {
    fmt::print(log, "simulate: root finder failed to converge on some trials (see manifest)\n");
    return kExitNoConvergence;
  }
  fmt::print(log, "simulate: wrote {} trial(s) to {}\n", jobs.size(), cfg.output_dir.string());
  return kExitOk;
}

int cmd_predict(const ExperimentConfig& cfg, std::ostream& log) {
  require_measures(cfg, 1);
  apply_threads(cfg);
  fs::create_directories(cfg.output_dir);

  GridSpec grid = cfg.grid ? *cfg.grid : default_grid(cfg.measures, 2.0, cfg.grid_h);
  GridField density = grid_density(cfg.measures, grid);
  density.save_csv(cfg.output_dir / "density.csv");

  ordered_json manifest = manifest_header(cfg, "predict");
  manifest["grid"] = {{"x_min", grid.bounds.x_min}, {"x_max", grid.bounds.x_max},
                      {"y_min", grid.bounds.y_min}, {"y_max", grid.bounds.y_max},
                      {"h", grid.h}};
  manifest["total_mass"] = density.total();
  manifest["min_cell_mass"] = density.min_value();
  manifest["masked_cells"] = density.masked_count();

  std::ofstream table(cfg.output_dir / "weak_integrals.csv");
  table << "bump_index,center_re,center_im,radius,amplitude,value\n";
  manifest["weak_integrals"] = ordered_json::array();
  for (std::size_t b = 0; b < cfg.bumps.size(); ++b) {
    const BumpFunction& phi = cfg.bumps[b];
    GridSpec phi_grid = cfg.grid ? *cfg.grid : bump_grid(phi, cfg.grid_h);
    double value = weak_integral(cfg.measures, phi, phi_grid);
    table << fmt::format("{},{},{},{},{},{}\n", b, phi.center.real(), phi.center.imag(),
                         phi.radius, phi.amplitude, value);
    ordered_json entry = bump_json(phi);
    entry["value"] = value;
    manifest["weak_integrals"].push_back(entry);
  }
  write_json(cfg.output_dir / "manifest.json", manifest);

  fmt::print(log, "predict: total mass {:.6f}, min cell mass {:.3e}\n", density.total(),
             density.min_value());
  return kExitOk;
}

int cmd_compare(const ExperimentConfig& cfg, std::ostream& log) {
  require_measures(cfg, 1);
  require_n(cfg);
  if (cfg.bumps.empty()) throw ConfigError("compare needs at least one bump");
  apply_threads(cfg);
  fs::create_directories(cfg.output_dir);
  const int n = cfg.n_list.front();

  std::vector<Instance> results(static_cast<std::size_t>(cfg.trials));
#pragma omp parallel for schedule(dynamic)
  for (long t = 0; t < cfg.trials; ++t)
    results[static_cast<std::size_t>(t)] = run_instance(cfg, n, static_cast<int>(t));

  bool converged = std::all_of(results.begin(), results.end(),
                               [](const Instance& r) { return r.report.residual_ok; });

  ordered_json manifest = manifest_header(cfg, "compare");
  manifest["n"] = n;
  manifest["trials"] = cfg.trials;
  manifest["rows"] = ordered_json::array();

  std::ofstream table(cfg.output_dir / "compare.csv");
  table << "bump_index,empirical_mean,empirical_stderr,predicted,z_score\n";

  bool all_within = true;
  for (std::size_t b = 0; b < cfg.bumps.size(); ++b) {
    const BumpFunction& phi = cfg.bumps[b];
    std::vector<double> stats;
    stats.reserve(results.size());
    for (const Instance& inst : results) {
      EmpiricalMeasure emp{inst.report.roots, n, cfg.seed, {}};
      stats.push_back(linear_statistic(emp, phi));
    }
    Estimate e = mean_and_stderr(stats);
    GridSpec phi_grid = cfg.grid ? *cfg.grid : bump_grid(phi, cfg.grid_h);
    double predicted = weak_integral(cfg.measures, phi, phi_grid);
    double z = (e.stderr_ > 1e-15) ? (e.value - predicted) / e.stderr_
                                   : (std::abs(e.value - predicted) <= 1e-12 ? 0.0 : 1e9);
    all_within = all_within && std::abs(z) <= 3.0;
    table << fmt::format("{},{},{},{},{}\n", b, e.value, e.stderr_, predicted, z);
    ordered_json row = bump_json(phi);
    row["empirical_mean"] = e.value;
    row["empirical_stderr"] = e.stderr_;
    row["predicted"] = predicted;
    row["z_score"] = z;
    manifest["rows"].push_back(row);
    fmt::print(log, "compare: bump {} mean {:.6f} +/- {:.6f} predicted {:.6f} z {:.2f}\n", b,
               e.value, e.stderr_, predicted, z);
  }
  manifest["converged"] = converged;
  manifest["all_within_3_sigma"] = all_within;
  write_json(cfg.output_dir / "manifest.json", manifest);

  if (!converged) return kExitNoConvergence;
  return all_within ? kExitOk : kExitAssertionFailed;
}

namespace {

bool verify_cot_formula(int n, std::ostream& log) {
  std::vector<std::complex<double>> ones(static_cast<std::size_t>(n), {1.0, 0.0});
  std::vector<std::complex<double>> minus(static_cast<std::size_t>(n), {-1.0, 0.0});
  PolySum sum({RootPoly(ones), RootPoly(minus)});
  RootFindReport report = find_roots(sum);

  std::vector<std::complex<double>> expected;
  for (int k = 1; k <= n; ++k)
    expected.emplace_back(0.0, -1.0 / std::tan((2.0 * k + 1.0) * kPi / (2.0 * n)));
  double err = max_matching_distance(report.roots, expected);
  bool ok = report.residual_ok && err <= 1e-8;
  fmt::print(log, "verify: cot formula (n={}) max error {:.3e} -> {}\n", n, err,
             ok ? "pass" : "FAIL");
  return ok;
}

bool verify_modulus_formula(std::ostream& log) {
  const int n = 64;
  std::vector<std::complex<double>> unit, twice;
  for (int k = 0; k < n; ++k) {
    std::complex<double> w = std::polar(1.0, kTwoPi * k / n);
    unit.push_back(w);
    twice.push_back(2.0 * w);
  }
  PolySum sum({RootPoly(unit), RootPoly(twice)});
  RootFindReport report = find_roots(sum);

  // (2^n + 1)/2 via log1p keeps full precision at n = 64.
  double expected_mod = std::exp((n * std::log(2.0) + std::log1p(std::pow(2.0, -n)) -
                                  std::log(2.0)) / n);
  double mod_err = 0, arg_err = 0;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (std::complex<double> z : report.roots) {
    mod_err = std::max(mod_err, std::abs(std::abs(z) - expected_mod) / expected_mod);
    double a = std::arg(z);
    double idx = a * n / kTwoPi;
    long k = std::lround(idx);
    arg_err = std::max(arg_err, std::abs(a - kTwoPi * static_cast<double>(k) / n));
    std::size_t slot = static_cast<std::size_t>(((k % n) + n) % n);
    seen[slot] = true;
  }
  bool distinct = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  bool ok = report.residual_ok && distinct && mod_err <= 1e-10 && arg_err <= 1e-10;
  fmt::print(log, "verify: modulus formula (n={}) mod err {:.3e} arg err {:.3e} -> {}\n", n,
             mod_err, arg_err, ok ? "pass" : "FAIL");
  return ok;
}

bool verify_walsh_containment(std::uint64_t seed, std::ostream& log) {
  const int kInstances = 100;
  const int degrees[] = {10, 50, 200};
  int failures = 0;
  for (int i = 0; i < kInstances; ++i) {
    RandomStream rs(seed, 1000 + static_cast<std::uint64_t>(i));
    int m = 2 + static_cast<int>(rs.uniform01() * 2.0);  // 2 or 3
    int n = degrees[i % 3];
    std::vector<RootPoly> parts;
    for (int k = 0; k < m; ++k)
      parts.emplace_back(random_catalog_measure(rs).sample_roots(n, rs));
    PolySum sum(std::move(parts));
    RootFindReport report = find_roots(sum, {}, splitmix64(seed) + static_cast<std::uint64_t>(i));
    double bound = walsh_bound(sum);
    bool inside = std::all_of(report.roots.begin(), report.roots.end(),
                              [&](std::complex<double> z) { return std::abs(z) <= bound; });
    if (!(report.residual_ok && certify(sum, report) && inside)) ++failures;
  }
  fmt::print(log, "verify: Walsh containment fuzz ({} instances) failures {} -> {}\n", kInstances,
             failures, failures == 0 ? "pass" : "FAIL");
  return failures == 0;
}

}  // namespace

int cmd_verify(const ExperimentConfig& cfg, std::ostream& log) {
  apply_threads(cfg);
  int n = cfg.n_list.empty() ? 100 : cfg.n_list.front();
  bool ok = verify_cot_formula(n, log);
  ok = verify_modulus_formula(log) && ok;
  ok = verify_walsh_containment(cfg.seed, log) && ok;
  return ok ? kExitOk : kExitAssertionFailed;
}

int cmd_diagnose(const ExperimentConfig& cfg, std::ostream& log) {
  require_measures(cfg, 2);
  require_n(cfg);
  if (!cfg.region_k) throw ConfigError("diagnose needs a K rectangle");
  apply_threads(cfg);
  fs::create_directories(cfg.output_dir);

  const RootMeasure& mu = cfg.measures[0];
  const RootMeasure& nu = cfg.measures[1];
  const Rect& K = *cfg.region_k;
  ProbeRegion probe = cfg.probe_region ? *cfg.probe_region : ProbeRegion{K};
  int trials = std::max(cfg.trials, 100);
  // The gap-set grid must resolve K with at least 100 cells per side.
  double h = std::min({cfg.grid_h, K.width() / 128.0, K.height() / 128.0});

  ordered_json manifest = manifest_header(cfg, "diagnose");
  manifest["reports"] = ordered_json::array();
  for (int n : cfg.n_list) {
    DiagnosticsReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.ratio_event_prob = ratio_event_probability(mu, nu, n, probe, trials, cfg.seed);
    rep.gap_set = gap_set_measure(mu, nu, K, n, h);
    rep.concentration_second_moment = concentration_second_moment(mu, K, n, trials, cfg.seed);

    ordered_json entry;
    entry["n"] = rep.n;
    entry["trials"] = rep.trials;
    entry["ratio_event_prob"] = rep.ratio_event_prob.value;
    entry["ratio_event_stderr"] = rep.ratio_event_prob.stderr_;
    entry["gap_set_measure"] = rep.gap_set;
    entry["concentration_second_moment"] = rep.concentration_second_moment.value;
    entry["concentration_stderr"] = rep.concentration_second_moment.stderr_;
    manifest["reports"].push_back(entry);
    fmt::print(log,
               "diagnose: n={} ratio {:.4f}+/-{:.4f} gap {:.4f} concentration {:.3e}+/-{:.1e}\n",
               n, rep.ratio_event_prob.value, rep.ratio_event_prob.stderr_, rep.gap_set,
               rep.concentration_second_moment.value, rep.concentration_second_moment.stderr_);
  }
  write_json(cfg.output_dir / "diagnostics.json", manifest);
  return kExitOk;
}

}  // namespace polysum
