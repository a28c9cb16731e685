#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "polysum/polyeval.hpp"

namespace polysum {

struct RootFindOptions {
  double tol = 1e-12;            // relative Newton-correction target
  int max_iters = 500;           // sweeps per restart
  int restarts = 3;              // extra attempts with fresh initialization
  double init_radius_factor = 1.5;
};

struct RootFindReport {
  std::vector<std::complex<double>> roots;
  int iterations = 0;                 // total sweeps across restarts
  double max_newton_correction = 0;   // max |w_j|/(1+|z_j|) at the final sweep
  bool residual_ok = false;
  double walsh_radius = 0;
};

// Radius of the origin-centered disk guaranteed to contain all zeros of the
// sum: 2^{m-1} M / sin(pi/n)^{m-1}, with M the largest root modulus over all
// parts. m = 1 trivially gives M. Requires degree >= 2 when m >= 2.
double walsh_bound(const PolySum& sum);

// Simultaneous Aberth-Ehrlich iteration for all n zeros of S, driven by
// sum_newton_ratio. Jacobi-style sweeps (parallelizable); the final restart
// falls back to Gauss-Seidel ordering for robustness.
RootFindReport find_roots(const PolySum& sum, const RootFindOptions& opts = {},
                          std::uint64_t seed = 0x0ff5e7);

// One Jacobi sweep from the snapshot `current` into `next`; returns the max
// relative Newton correction. Exposed so the serial reference and the OpenMP
// kernel can be compared directly.
double aberth_sweep(const PolySum& sum, const std::vector<std::complex<double>>& current,
                    std::vector<std::complex<double>>& next, std::uint64_t perturb_seed,
                    bool parallel);

// Independent check of a report: root count, Newton corrections, Walsh
// containment, and reconstruction of S at probe points from the root product.
bool certify(const PolySum& sum, const RootFindReport& report);

}  // namespace polysum
