#pragma once

#include <cstdint>
#include <random>

#include "ultranorm/field.hpp"

namespace ultranorm {

using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p_true = 0.5) { return std::bernoulli_distribution(p_true)(rng); }

/// A p-adic unit a/b with 1 <= a, b < p^2 and p dividing neither, with random sign.
inline Scalar random_unit(Rng& rng, const FieldConfig& cfg) {
  const std::int64_t p = cfg.p();
  auto draw = [&] {
    for (;;) {
      std::int64_t k = uniform_int(rng, 1, p * p - 1);
      if (k % p != 0) return k;
    }
  };
  Scalar u{BigInt(draw()), BigInt(draw())};
  return coin(rng) ? u : -u;
}

/// Nonzero scalar with valuation drawn uniformly from [vmin, vmax].
inline Scalar random_scalar(Rng& rng, const FieldConfig& cfg, std::int64_t vmin, std::int64_t vmax) {
  return random_unit(rng, cfg) * uniformizer_power(uniform_int(rng, vmin, vmax), cfg);
}

}  // namespace ultranorm
