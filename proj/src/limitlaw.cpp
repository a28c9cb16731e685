#include "polysum/limitlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polysum/errors.hpp"

namespace polysum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Below this distance from the support boundary (in t = |z-c|^2/R^2 units)
// the bump and all its derivatives are smaller than ~1e-200; treat as zero to
// avoid overflow in the 1/(1-t)^k factors.
constexpr double kBumpCutoff = 1.0 / 600.0;

}  // namespace

double BumpFunction::value(std::complex<double> z) const {
  double t = std::norm(z - center) / (radius * radius);
  double omt = 1.0 - t;
  if (omt <= kBumpCutoff) return 0.0;
  return amplitude * std::exp(-1.0 / omt);
}

double BumpFunction::laplacian(std::complex<double> z) const {
  double t = std::norm(z - center) / (radius * radius);
  double omt = 1.0 - t;
  if (omt <= kBumpCutoff) return 0.0;
  double g = std::exp(-1.0 / omt);
  double inv2 = 1.0 / (omt * omt);
  double inv3 = inv2 / omt;
  double inv4 = inv3 / omt;
  return 4.0 * amplitude / (radius * radius) * g * (t * (inv4 - 2.0 * inv3) - inv2);
}

double max_potential(const std::vector<RootMeasure>& measures, std::complex<double> z) {
  if (measures.empty()) throw ConfigError("max_potential needs at least one measure");
  double best = -kInf;
  for (const RootMeasure& m : measures) best = std::max(best, m.potential(z));
  return best;
}

namespace {

GridField potential_field_impl(const std::vector<RootMeasure>& measures, const GridSpec& spec,
                               bool parallel) {
  const std::size_t nx = spec.nx();
  const std::size_t ny = spec.ny();
  std::vector<double> values(nx * ny);
#pragma omp parallel for schedule(static) if (parallel)
  for (long j = 0; j < static_cast<long>(ny); ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      values[static_cast<std::size_t>(j) * nx + i] =
          max_potential(measures, spec.cell_center(i, static_cast<std::size_t>(j)));
    }
  }
  return GridField(spec, std::move(values));
}

}  // namespace

GridField potential_field(const std::vector<RootMeasure>& measures, const GridSpec& spec) {
  return potential_field_impl(measures, spec, true);
}

GridField potential_field_serial(const std::vector<RootMeasure>& measures, const GridSpec& spec) {
  return potential_field_impl(measures, spec, false);
}

double weak_integral(const std::vector<RootMeasure>& measures, const BumpFunction& phi,
                     const GridSpec& spec) {
  const Rect& b = spec.bounds;
  const double margin = 2.0 * spec.h;
  if (phi.center.real() - phi.radius < b.x_min + margin ||
      phi.center.real() + phi.radius > b.x_max - margin ||
      phi.center.imag() - phi.radius < b.y_min + margin ||
      phi.center.imag() + phi.radius > b.y_max - margin)
    throw GridCoverageError("support not covered");

  const std::size_t nx = spec.nx();
  const std::size_t ny = spec.ny();
  std::vector<double> row_sums(ny, 0.0);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < static_cast<long>(ny); ++j) {
    KahanSum row;
    for (std::size_t i = 0; i < nx; ++i) {
      std::complex<double> zc = spec.cell_center(i, static_cast<std::size_t>(j));
      double lap = phi.laplacian(zc);
      if (lap == 0.0) continue;
      double u = max_potential(measures, zc);
      if (u == -kInf) continue;  // measure-zero set of atoms
      row.add(lap * u);
    }
    row_sums[static_cast<std::size_t>(j)] = row.value();
  }
  // Rows are reduced in a fixed order so the result is thread-count invariant.
  KahanSum total;
  for (double r : row_sums) total.add(r);
  return total.value() * spec.h * spec.h / kTwoPi;
}

GridField grid_density(const std::vector<RootMeasure>& measures, const GridSpec& spec) {
  if (spec.h <= 0 || spec.bounds.width() <= 0 || spec.bounds.height() <= 0)
    throw ConfigError("degenerate grid");
  // Potential on the grid plus one ghost ring for the 5-point stencil.
  GridSpec padded{{spec.bounds.x_min - spec.h, spec.bounds.x_max + spec.h,
                   spec.bounds.y_min - spec.h, spec.bounds.y_max + spec.h},
                  spec.h};
  GridField u = potential_field(measures, padded);

  const std::size_t nx = spec.nx();
  const std::size_t ny = spec.ny();
  std::vector<double> mass(nx * ny);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < static_cast<long>(ny); ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      std::size_t pi = i + 1;
      std::size_t pj = static_cast<std::size_t>(j) + 1;
      double c = u.at(pi, pj);
      double e = u.at(pi + 1, pj);
      double w = u.at(pi - 1, pj);
      double n = u.at(pi, pj + 1);
      double s = u.at(pi, pj - 1);
      double& out = mass[static_cast<std::size_t>(j) * nx + i];
      if (c == -kInf || e == -kInf || w == -kInf || n == -kInf || s == -kInf)
        out = kNan;
      else
        out = (e + w + n + s - 4.0 * c) / kTwoPi;  // h^2 * Laplacian / (2 pi)
    }
  }
  return GridField(spec, std::move(mass));
}

namespace {

Rect support_bbox(const RootMeasure& measure) {
  return std::visit(
      [](const auto& m) -> Rect {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, UniformDisk> || std::is_same_v<T, UniformCircle>) {
          return {m.center.real() - m.radius, m.center.real() + m.radius,
                  m.center.imag() - m.radius, m.center.imag() + m.radius};
        } else if constexpr (std::is_same_v<T, Atomic>) {
          Rect r{m.atoms.front().point.real(), m.atoms.front().point.real(),
                 m.atoms.front().point.imag(), m.atoms.front().point.imag()};
          for (const Atom& a : m.atoms) {
            r.x_min = std::min(r.x_min, a.point.real());
            r.x_max = std::max(r.x_max, a.point.real());
            r.y_min = std::min(r.y_min, a.point.imag());
            r.y_max = std::max(r.y_max, a.point.imag());
          }
          return r;
        } else {
          Rect r = support_bbox(m.components.front());
          for (const RootMeasure& c : m.components) {
            Rect rc = support_bbox(c);
            r.x_min = std::min(r.x_min, rc.x_min);
            r.x_max = std::max(r.x_max, rc.x_max);
            r.y_min = std::min(r.y_min, rc.y_min);
            r.y_max = std::max(r.y_max, rc.y_max);
          }
          return r;
        }
      },
      measure.variant());
}

}  // namespace

GridSpec default_grid(const std::vector<RootMeasure>& measures, double margin, double h) {
  if (measures.empty()) throw ConfigError("default_grid needs at least one measure");
  Rect r = support_bbox(measures.front());
  for (const RootMeasure& m : measures) {
    Rect rm = support_bbox(m);
    r.x_min = std::min(r.x_min, rm.x_min);
    r.x_max = std::max(r.x_max, rm.x_max);
    r.y_min = std::min(r.y_min, rm.y_min);
    r.y_max = std::max(r.y_max, rm.y_max);
  }
  return {{r.x_min - margin, r.x_max + margin, r.y_min - margin, r.y_max + margin}, h};
}

namespace {

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a);
  double fm = f(m);
  double fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double cauchy_reference(const BumpFunction& phi) {
  double xc = phi.center.real();
  double half = phi.radius * phi.radius - xc * xc;
  if (half <= 0) return 0.0;  // support misses the imaginary axis
  double s = std::sqrt(half);
  double yc = phi.center.imag();
  auto f = [&phi](double y) {
    return phi.value(std::complex<double>(0.0, y)) / (1.0 + y * y);
  };
  return integrate(f, yc - s, yc + s, 1e-10) / kPi;
}

double lines_reference(const BumpFunction& phi, double h) {
  std::vector<RootMeasure> measures = {
      RootMeasure::atomic({{{1.0, 0.0}, 0.5}, {{-1.0, 0.0}, 0.5}}),
      RootMeasure::atomic({{{0.0, 1.0}, 0.5}, {{0.0, -1.0}, 0.5}})};
  double margin = std::max(0.1, 3.0 * h);
  GridSpec spec{{phi.center.real() - phi.radius - margin, phi.center.real() + phi.radius + margin,
                 phi.center.imag() - phi.radius - margin, phi.center.imag() + phi.radius + margin},
                h};
  return weak_integral(measures, phi, spec);
}

}  // namespace polysum
