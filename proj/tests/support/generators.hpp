#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "mmfix/metric_core.hpp"

namespace mmfix::fixtures {

// Random symmetric table with entries in [0, max_entry], zero diagonal, then
// closed under shortest paths so the triangle inequality holds.
inline DistanceTable random_metric_table(std::mt19937_64& rng, std::size_t n, double max_entry = 10.0) {
  std::uniform_real_distribution<double> entry(0.0, max_entry);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Keep distinct points apart so identity of indiscernibles holds.
      d[i][j] = d[j][i] = std::max(entry(rng), 1e-3);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return DistanceTable::from_rows(std::move(d), Flavor::Additive);
}

inline std::size_t random_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::vector<std::size_t> random_map(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> f(n);
  for (auto& v : f) v = random_size(rng, 0, n - 1);
  return f;
}

// Decodes `code` in base n into a self-map of {0, ..., n-1}.
inline std::vector<std::size_t> decode_map(std::size_t code, std::size_t n) {
  std::vector<std::size_t> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = code % n;
    code /= n;
  }
  return f;
}

}  // namespace mmfix::fixtures
