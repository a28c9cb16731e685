#include <doctest.h>

#include <cmath>
#include <complex>

#include "polysum/errors.hpp"
#include "polysum/measures.hpp"
#include "polysum/util.hpp"

using namespace polysum;
using std::complex;

namespace {

// Monte-Carlo oracle for the logarithmic potential: (1/N) sum log|z - w_i|
// with its standard error.
Estimate mc_potential(const RootMeasure& m, complex<double> z, int n, RandomStream& rs) {
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) samples.push_back(std::log(std::abs(z - m.sample(rs))));
  return mean_and_stderr(samples);
}

const RootMeasure kDisk = RootMeasure::uniform_disk({1.0, 0.0}, 1.0);
const RootMeasure kTwoAtoms = RootMeasure::atomic({{{1, 0}, 0.5}, {{-1, 0}, 0.5}});

}  // namespace

TEST_CASE("atomic sampling hits only the atoms with the right frequencies") {
  RandomStream rs(11);
  auto draws = kTwoAtoms.sample_roots(1000, rs);
  int plus = 0;
  for (auto z : draws) {
    bool is_plus = z == complex<double>(1, 0);
    bool is_minus = z == complex<double>(-1, 0);
    CHECK((is_plus || is_minus));
    plus += is_plus ? 1 : 0;
  }
  CHECK(plus >= 450);
  CHECK(plus <= 550);
}

TEST_CASE("circle samples lie on the circle") {
  RandomStream rs(12);
  auto m = RootMeasure::uniform_circle({0, 0}, 1.0);
  for (auto z : m.sample_roots(500, rs)) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-15);
}

TEST_CASE("disk sample mean approximates the center") {
  RandomStream rs(13);
  auto draws = kDisk.sample_roots(10000, rs);
  complex<double> mean = 0;
  for (auto z : draws) mean += z;
  mean /= 10000.0;
  // Centroid of the uniform disk is its center; sd of each coordinate is
  // R/2 = 0.5, so the mean is within 0.05 except with negligible probability.
  CHECK(std::abs(mean - complex<double>(1, 0)) < 0.05);
}

TEST_CASE("samples never leave the support radius") {
  RandomStream rs(14);
  auto mix = RootMeasure::mixture(
      {kDisk, RootMeasure::uniform_circle({0, 1}, 0.5)}, {0.25, 0.75});
  for (auto z : mix.sample_roots(5000, rs)) CHECK(std::abs(z) <= mix.support_radius());
}

TEST_CASE("disk potential closed form") {
  CHECK(kDisk.potential({3, 0}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(kDisk.potential({1, 0}) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("circle potential at the center") {
  auto m = RootMeasure::uniform_circle({0, 0}, 2.0);
  CHECK(m.potential({0, 0}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  // Monte-Carlo oracle agreement at the same point.
  RandomStream rs(15);
  Estimate e = mc_potential(m, {0, 0}, 1000000, rs);
  CHECK(std::abs(e.value - std::log(2.0)) <= 3 * e.stderr_);
}

TEST_CASE("two-atom potential at i is half log 2") {
  CHECK(kTwoAtoms.potential({0, 1}) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("potential is -infinity exactly at an atom") {
  CHECK(kTwoAtoms.potential({1, 0}) == -std::numeric_limits<double>::infinity());
  // and max() against -infinity behaves as the identity
  CHECK(std::max(kTwoAtoms.potential({1, 0}), 0.25) == 0.25);
}

TEST_CASE("support radius per variant") {
  CHECK(kDisk.support_radius() == 2.0);
  auto atoms = RootMeasure::atomic({{{0, 1}, 0.5}, {{0, -1}, 0.5}});
  CHECK(atoms.support_radius() == 1.0);
  auto mix = RootMeasure::mixture({kDisk, atoms}, {0.5, 0.5});
  CHECK(mix.support_radius() == 2.0);
}

TEST_CASE("invalid construction is rejected") {
  CHECK_THROWS_AS(RootMeasure::uniform_disk({0, 0}, 0.0), ConfigError);
  CHECK_THROWS_AS(RootMeasure::atomic({{{1, 0}, 0.6}, {{-1, 0}, 0.6}}), ConfigError);
  CHECK_THROWS_AS(RootMeasure::atomic({}), ConfigError);
  CHECK_THROWS_AS(RootMeasure::mixture({}, {}), ConfigError);
}

TEST_CASE("closed forms match the Monte-Carlo estimator across variants") {
  RandomStream rs(16);
  std::vector<RootMeasure> variants = {
      RootMeasure::uniform_disk({0.5, -0.25}, 1.5),
      RootMeasure::uniform_circle({-0.5, 0.5}, 0.75),
      RootMeasure::atomic({{{1, 0}, 0.25}, {{-1, 0}, 0.25}, {{0, 1}, 0.5}}),
      RootMeasure::mixture({kDisk, RootMeasure::uniform_circle({0, 0}, 1.0)}, {0.3, 0.7})};
  for (const RootMeasure& m : variants) {
    for (int k = 0; k < 20; ++k) {
      complex<double> z = rs.in_rectangle(-4, 4, -4, 4);
      double closed = m.potential(z);
      if (closed == -std::numeric_limits<double>::infinity()) continue;
      Estimate e = mc_potential(m, z, 100000, rs);
      CHECK(std::abs(e.value - closed) <= 4 * e.stderr_ + 1e-12);
    }
  }
}

TEST_CASE("far-field potential behaves like log|z|") {
  std::vector<RootMeasure> variants = {
      kDisk, RootMeasure::uniform_circle({0.5, 0}, 1.0), kTwoAtoms,
      RootMeasure::mixture({kDisk, kTwoAtoms}, {0.5, 0.5})};
  for (const RootMeasure& m : variants) {
    double c_bound = 2.0 * (m.support_radius() + 1.0);
    RandomStream rs(17);
    for (double r : {10.0, 100.0, 1000.0, 10000.0}) {
      complex<double> z = std::polar(r, kTwoPi * rs.uniform01());
      CHECK(std::abs(m.potential(z) - std::log(r)) <= c_bound / r);
    }
  }
}

TEST_CASE("disk and circle potentials are radially symmetric") {
  auto disk = RootMeasure::uniform_disk({0.5, 0.5}, 1.25);
  auto circle = RootMeasure::uniform_circle({-0.25, 1.0}, 0.8);
  for (const auto& m : {disk, circle}) {
    complex<double> center = std::holds_alternative<UniformDisk>(m.variant())
                                 ? std::get<UniformDisk>(m.variant()).center
                                 : std::get<UniformCircle>(m.variant()).center;
    for (double r : {0.3, 1.1, 2.5}) {
      double ref = m.potential(center + std::polar(r, 0.0));
      for (int k = 1; k < 16; ++k) {
        double v = m.potential(center + std::polar(r, kTwoPi * k / 16.0));
        CHECK(std::abs(v - ref) <= 1e-12);
      }
    }
  }
}

TEST_CASE("sampling is deterministic given seed and stream") {
  RandomStream a(99, 5), b(99, 5);
  auto ra = kDisk.sample_roots(100, a);
  auto rb = kDisk.sample_roots(100, b);
  CHECK(ra == rb);
  RandomStream c(99, 6);
  CHECK(kDisk.sample_roots(100, c) != ra);
}
