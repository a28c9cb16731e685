// Compares the OpenMP kernels against their serial references: potential
// field sampling and one Aberth-Ehrlich sweep.

#include <chrono>
#include <cstdio>
#include <vector>

#include "polysum/limitlaw.hpp"
#include "polysum/rootfinder.hpp"
#include "polysum/util.hpp"

using namespace polysum;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::vector<RootMeasure> measures = {RootMeasure::uniform_disk({1.0, 0.0}, 1.0),
                                       RootMeasure::uniform_disk({-1.0, 0.0}, 1.0)};
  GridSpec spec{{-4.0, 4.0, -3.0, 3.0}, 0.005};

  auto t0 = std::chrono::steady_clock::now();
  GridField serial = potential_field_serial(measures, spec);
  double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  GridField parallel = potential_field(measures, spec);
  double t_parallel = seconds_since(t0);

  double max_diff = 0;
  for (std::size_t i = 0; i < serial.values().size(); ++i)
    max_diff = std::max(max_diff, std::abs(serial.values()[i] - parallel.values()[i]));
  std::printf("potential_field  %zu cells  serial %.3fs  openmp %.3fs  max |diff| %.1e\n",
              spec.cell_count(), t_serial, t_parallel, max_diff);

  const int n = 400;
  RandomStream rs(42);
  std::vector<RootPoly> parts;
  for (int k = 0; k < 2; ++k) parts.emplace_back(measures[k].sample_roots(n, rs));
  PolySum sum(std::move(parts));

  std::vector<std::complex<double>> z(n);
  for (int j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] = std::polar(3.0, kTwoPi * j / n);
  std::vector<std::complex<double>> out_serial, out_parallel;

  const int sweeps = 20;
  t0 = std::chrono::steady_clock::now();
  for (int s = 0; s < sweeps; ++s) aberth_sweep(sum, z, out_serial, 7, false);
  t_serial = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  for (int s = 0; s < sweeps; ++s) aberth_sweep(sum, z, out_parallel, 7, true);
  t_parallel = seconds_since(t0);

  max_diff = 0;
  for (int j = 0; j < n; ++j)
    max_diff = std::max(max_diff, std::abs(out_serial[static_cast<std::size_t>(j)] -
                                           out_parallel[static_cast<std::size_t>(j)]));
  std::printf("aberth_sweep     n=%d x%d     serial %.3fs  openmp %.3fs  max |diff| %.1e\n", n,
              sweeps, t_serial, t_parallel, max_diff);
  return 0;
}
