#pragma once

#include <complex>
#include <vector>

#include "polysum/gridfield.hpp"
#include "polysum/measures.hpp"

namespace polysum {

// Smooth compactly supported test function
//   phi(z) = amplitude * exp(-1/(1 - t)),  t = |z - center|^2 / radius^2 < 1,
// and 0 for t >= 1, with its Laplacian in closed form.
struct BumpFunction {
  std::complex<double> center;
  double radius;
  double amplitude = 1.0;

  double value(std::complex<double> z) const;
  double laplacian(std::complex<double> z) const;
};

// Pointwise max of the logarithmic potentials (the potential of the limit
// measure of zeros of the sum).
double max_potential(const std::vector<RootMeasure>& measures, std::complex<double> z);

// U sampled at every cell center of the grid. The serial variant is the
// reference implementation for the OpenMP kernel.
GridField potential_field(const std::vector<RootMeasure>& measures, const GridSpec& spec);
GridField potential_field_serial(const std::vector<RootMeasure>& measures, const GridSpec& spec);

// (1/2pi) * integral of laplacian(phi) * U over the grid rectangle, midpoint
// rule with the closed-form Laplacian of phi. The rectangle must contain the
// support of phi with margin >= 2h.
double weak_integral(const std::vector<RootMeasure>& measures, const BumpFunction& phi,
                     const GridSpec& spec);

// Cell masses (1/2pi) * (5-point discrete Laplacian of U) * h^2. Cells whose
// stencil touches a point where U itself is -infinity are masked.
GridField grid_density(const std::vector<RootMeasure>& measures, const GridSpec& spec);

// Default grid for a set of measures: bounding box of the supports inflated
// by the given margin.
GridSpec default_grid(const std::vector<RootMeasure>& measures, double margin = 2.0,
                      double h = 0.01);

// (1/pi) * integral of phi(iy) / (1 + y^2) dy, adaptive quadrature to 1e-10.
// The exact limit of linear statistics for the two-disk configuration.
double cauchy_reference(const BumpFunction& phi);

// Reference value of the integral of phi against the limit measure of the
// {+-1} / {+-i} atomic pair, computed as a fine-grid weak integral.
double lines_reference(const BumpFunction& phi, double h = 0.005);

}  // namespace polysum
