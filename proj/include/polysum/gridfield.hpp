#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <vector>

#include "polysum/util.hpp"

namespace polysum {

struct GridSpec {
  Rect bounds;
  double h = 0.01;  // cell spacing

  std::size_t nx() const;
  std::size_t ny() const;
  std::size_t cell_count() const { return nx() * ny(); }
  // Center of cell (i, j), i indexing x and j indexing y.
  std::complex<double> cell_center(std::size_t i, std::size_t j) const;
};

// Rectangular grid of scalar samples at cell centers. Cells may be masked
// (stored as NaN) when the sampled quantity is not finite there.
class GridField {
 public:
  GridField(GridSpec spec, std::vector<double> values);

  const GridSpec& spec() const { return spec_; }
  std::size_t nx() const { return spec_.nx(); }
  std::size_t ny() const { return spec_.ny(); }
  double at(std::size_t i, std::size_t j) const { return values_[j * nx() + i]; }
  double& at(std::size_t i, std::size_t j) { return values_[j * nx() + i]; }
  const std::vector<double>& values() const { return values_; }
  bool masked(std::size_t i, std::size_t j) const;

  // Sum of unmasked values, Kahan-compensated, row-major order.
  double total() const;
  double min_value() const;
  std::size_t masked_count() const;

  // CSV of "x,y,value" rows (shortest round-trip decimals; masked cells
  // written as nan) plus a JSON sidecar with the bounds and spacing.
  void save_csv(const std::filesystem::path& csv_path) const;
  static GridField load_csv(const std::filesystem::path& csv_path);

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

}  // namespace polysum
