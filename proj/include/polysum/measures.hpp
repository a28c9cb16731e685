#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "polysum/rng.hpp"

namespace polysum {

class RootMeasure;

// Uniform probability measure on the closed disk |z - center| <= radius.
struct UniformDisk {
  std::complex<double> center;
  double radius;  // > 0
};

// Uniform probability measure on the circle |z - center| = radius.
// radius = 0 degenerates to a point mass at the center.
struct UniformCircle {
  std::complex<double> center;
  double radius;  // >= 0
};

struct Atom {
  std::complex<double> point;
  double weight;  // > 0
};

// Finitely many atoms, weights summing to 1.
struct Atomic {
  std::vector<Atom> atoms;
};

// Convex combination of other root measures, weights summing to 1.
struct Mixture {
  std::vector<RootMeasure> components;
  std::vector<double> weights;
};

// A compactly supported probability measure on the complex plane from which
// polynomial roots are drawn. Immutable after construction; all methods are
// safe for concurrent use.
class RootMeasure {
 public:
  using Variant = std::variant<UniformDisk, UniformCircle, Atomic, Mixture>;

  static RootMeasure uniform_disk(std::complex<double> center, double radius);
  static RootMeasure uniform_circle(std::complex<double> center, double radius);
  static RootMeasure atomic(std::vector<Atom> atoms);
  static RootMeasure mixture(std::vector<RootMeasure> components, std::vector<double> weights);

  // Smallest R with supp contained in the closed disk of radius R about 0.
  double support_radius() const { return support_radius_; }

  // Logarithmic potential U(z) = \int log|z - w| dmeasure(w), in closed form.
  // Returns -infinity only at an atom of positive weight.
  double potential(std::complex<double> z) const;

  std::complex<double> sample(RandomStream& stream) const;

  // n i.i.d. draws; deterministic given (measure, n, stream state).
  std::vector<std::complex<double>> sample_roots(int n, RandomStream& stream) const;

  const Variant& variant() const { return v_; }

 private:
  RootMeasure(Variant v, double support_radius);

  Variant v_;
  double support_radius_;
};

// Random measure from the cataloged variants (disk, circle, atoms, mixture),
// with support inside B(3). Used by randomized containment checks.
RootMeasure random_catalog_measure(RandomStream& stream);

}  // namespace polysum
