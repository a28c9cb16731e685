#include "polysum/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polysum/errors.hpp"
#include "polysum/util.hpp"

namespace polysum {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_weights_sum_to_one(const std::vector<double>& weights) {
  double total = 0;
  for (double w : weights) {
    if (!(w > 0)) throw ConfigError("measure weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTol)
    throw ConfigError("measure weights must sum to 1 within 1e-12");
}

}  // namespace

std::complex<double> RandomStream::in_disk(std::complex<double> c, double r) {
  double rad = r * std::sqrt(uniform01());
  double theta = kTwoPi * uniform01();
  return c + std::polar(rad, theta);
}

std::complex<double> RandomStream::on_circle(std::complex<double> c, double r) {
  double theta = kTwoPi * uniform01();
  return c + std::polar(r, theta);
}

RootMeasure::RootMeasure(Variant v, double support_radius)
    : v_(std::move(v)), support_radius_(support_radius) {}

RootMeasure RootMeasure::uniform_disk(std::complex<double> center, double radius) {
  if (!(radius > 0)) throw ConfigError("uniform disk radius must be positive");
  return RootMeasure(UniformDisk{center, radius}, std::abs(center) + radius);
}

RootMeasure RootMeasure::uniform_circle(std::complex<double> center, double radius) {
  if (!(radius >= 0)) throw ConfigError("uniform circle radius must be nonnegative");
  return RootMeasure(UniformCircle{center, radius}, std::abs(center) + radius);
}

RootMeasure RootMeasure::atomic(std::vector<Atom> atoms) {
  if (atoms.empty()) throw ConfigError("atomic measure needs at least one atom");
  std::vector<double> weights;
  weights.reserve(atoms.size());
  double r = 0;
  for (const Atom& a : atoms) {
    weights.push_back(a.weight);
    r = std::max(r, std::abs(a.point));
  }
  check_weights_sum_to_one(weights);
  return RootMeasure(Atomic{std::move(atoms)}, r);
}

RootMeasure RootMeasure::mixture(std::vector<RootMeasure> components, std::vector<double> weights) {
  if (components.empty()) throw ConfigError("mixture must be nonempty");
  if (components.size() != weights.size())
    throw ConfigError("mixture components and weights differ in length");
  check_weights_sum_to_one(weights);
  double r = 0;
  for (const RootMeasure& c : components) r = std::max(r, c.support_radius());
  return RootMeasure(Mixture{std::move(components), std::move(weights)}, r);
}

double RootMeasure::potential(std::complex<double> z) const {
  return std::visit(
      [z](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, UniformDisk>) {
          double d = std::abs(z - m.center);
          if (d > m.radius) return std::log(d);
          // Interior value; the unit-radius formula rescaled to radius R.
          double s = d / m.radius;
          return 0.5 * (s * s - 1.0) + std::log(m.radius);
        } else if constexpr (std::is_same_v<T, UniformCircle>) {
          double d = std::abs(z - m.center);
          double v = std::max(d, m.radius);
          return v > 0 ? std::log(v) : -kInf;
        } else if constexpr (std::is_same_v<T, Atomic>) {
          double acc = 0;
          for (const Atom& a : m.atoms) {
            double d = std::abs(z - a.point);
            if (d == 0) return -kInf;
            acc += a.weight * std::log(d);
          }
          return acc;
        } else {
          double acc = 0;
          for (std::size_t i = 0; i < m.components.size(); ++i) {
            double u = m.components[i].potential(z);
            if (u == -kInf) return -kInf;
            acc += m.weights[i] * u;
          }
          return acc;
        }
      },
      v_);
}

std::complex<double> RootMeasure::sample(RandomStream& stream) const {
  std::complex<double> z = std::visit(
      [&stream](const auto& m) -> std::complex<double> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, UniformDisk>) {
          return stream.in_disk(m.center, m.radius);
        } else if constexpr (std::is_same_v<T, UniformCircle>) {
          return stream.on_circle(m.center, m.radius);
        } else if constexpr (std::is_same_v<T, Atomic>) {
          double u = stream.uniform01();
          double acc = 0;
          for (const Atom& a : m.atoms) {
            acc += a.weight;
            if (u < acc) return a.point;
          }
          return m.atoms.back().point;
        } else {
          double u = stream.uniform01();
          double acc = 0;
          for (std::size_t i = 0; i < m.components.size(); ++i) {
            acc += m.weights[i];
            if (u < acc) return m.components[i].sample(stream);
          }
          return m.components.back().sample(stream);
        }
      },
      v_);
  // Rounding in polar-to-cartesian conversion can push a boundary point a few
  // ulps past the support radius; clamp so the containment invariant is exact.
  double r = std::abs(z);
  if (r > support_radius_ && r > 0) z *= support_radius_ / r;
  return z;
}

std::vector<std::complex<double>> RootMeasure::sample_roots(int n, RandomStream& stream) const {
  if (n < 1) throw ConfigError("sample_roots requires n >= 1");
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(sample(stream));
  return out;
}

RootMeasure random_catalog_measure(RandomStream& stream) {
  double pick = stream.uniform01();
  if (pick < 0.3) {
    return RootMeasure::uniform_disk(stream.in_rectangle(-1, 1, -1, 1),
                                     stream.uniform(0.2, 1.5));
  }
  if (pick < 0.6) {
    return RootMeasure::uniform_circle(stream.in_rectangle(-1, 1, -1, 1),
                                       stream.uniform(0.0, 1.5));
  }
  if (pick < 0.85) {
    int count = 2 + static_cast<int>(stream.uniform01() * 3);
    std::vector<Atom> atoms;
    for (int i = 0; i < count; ++i)
      atoms.push_back({stream.in_rectangle(-1.5, 1.5, -1.5, 1.5), 1.0 / count});
    // Renormalize exactly in case 1/count does not sum to 1 in doubles.
    double total = 0;
    for (const Atom& a : atoms) total += a.weight;
    atoms.back().weight += 1.0 - total;
    return RootMeasure::atomic(std::move(atoms));
  }
  std::vector<RootMeasure> comps;
  comps.push_back(RootMeasure::uniform_disk(stream.in_rectangle(-1, 1, -1, 1),
                                            stream.uniform(0.2, 1.0)));
  comps.push_back(RootMeasure::uniform_circle(stream.in_rectangle(-1, 1, -1, 1),
                                              stream.uniform(0.0, 1.0)));
  double w = stream.uniform(0.2, 0.8);
  return RootMeasure::mixture(std::move(comps), {w, 1.0 - w});
}

Estimate mean_and_stderr(const std::vector<double>& samples) {
  KahanSum s;
  for (double x : samples) s.add(x);
  double mean = s.value() / static_cast<double>(samples.size());
  if (samples.size() < 2) return {mean, 0.0};
  KahanSum sq;
  for (double x : samples) sq.add((x - mean) * (x - mean));
  double var = sq.value() / static_cast<double>(samples.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(samples.size()))};
}

Estimate binomial_estimate(long successes, long trials) {
  double p = static_cast<double>(successes) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

}  // namespace polysum
