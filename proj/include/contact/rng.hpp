#pragma once

// Seeded sampling for verification suites. The uniform mapping is written out
// explicitly so identical seeds give identical samples on every platform.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace contact {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double a, double b) {
    double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  }

  double log_uniform(double a, double b) {
    return a * std::exp(uniform(0.0, 1.0) * std::log(b / a));
  }

  std::vector<double> box(int dim, double a, double b) {
    std::vector<double> x(static_cast<std::size_t>(dim));
    for (auto& xi : x) xi = uniform(a, b);
    return x;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace contact
