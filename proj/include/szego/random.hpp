// Deterministic per-(seed, stream) random engines.
#pragma once

#include <cstdint>
#include <random>

#include "szego/polynomial.hpp"

namespace szego {

/// Independent engine for stream `index` under `seed`; the result depends only
/// on (seed, index), so work split across threads reproduces serial output.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x5eedu};
  return std::mt19937_64(seq);
}

/// Uniform direction on S^{2n−1}, optionally restricted to a coordinate support mask.
template <class Engine>
cvec random_direction(Engine& gen, int n, unsigned support_mask = ~0u) {
  std::normal_distribution<double> normal(0.0, 1.0);
  cvec u(n);
  double norm2 = 0.0;
  do {
    for (int j = 0; j < n; ++j) {
      const double a = normal(gen);
      const double b = normal(gen);
      u[j] = (support_mask >> j) & 1u ? cdouble(a, b) : cdouble(0.0, 0.0);
    }
    norm2 = u.squaredNorm();
  } while (norm2 < 1e-300);
  return u / std::sqrt(norm2);
}

}  // namespace szego
