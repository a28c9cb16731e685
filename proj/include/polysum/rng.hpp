#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace polysum {

// Mixes a 64-bit value; used to derive independent generator seeds from
// (master seed, stream index) pairs.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seeded random stream. Each Monte-Carlo trial (or other independent unit of
// work) owns its own stream derived from (seed, stream_id), so trials can run
// in any order or in parallel and still be reproducible.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : gen_(splitmix64(splitmix64(seed) ^ splitmix64(stream_id ^ 0xa5a5a5a5a5a5a5a5ull))) {}

  // Uniform in [0, 1), 53 bits. Avoids std::uniform_real_distribution, whose
  // output is implementation-defined.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  std::uint64_t bits() { return gen_(); }

  std::complex<double> in_rectangle(double x_min, double x_max, double y_min, double y_max) {
    return {uniform(x_min, x_max), uniform(y_min, y_max)};
  }

  // Uniform on the disk of radius r about c (radius = r*sqrt(u), angle uniform).
  std::complex<double> in_disk(std::complex<double> c, double r);

  std::complex<double> on_circle(std::complex<double> c, double r);

 private:
  std::mt19937_64 gen_;
};

}  // namespace polysum
