#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cutbench/graph.hpp"

namespace cutbench {

/// Exhaustive Max-Cut oracle. Exploits the flip symmetry Cut(x) = Cut(~x) by
/// pinning node n-1 to partition 0, so 2^(n-1) candidates are scanned. Ties
/// resolve to the candidate with the smallest binary value (bits[0] is the
/// most significant bit). Guarded to n <= 24.
inline CutAssignment brute_force_optimum(const WeightedGraph& g) {
  const int n = g.n();
  if (n > 24) throw std::length_error("brute_force_optimum: n > 24");

  const std::uint32_t m = static_cast<std::uint32_t>(n - 1);
  const std::uint32_t count = n == 1 ? 1u : (1u << m);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  std::vector<std::uint8_t> best_bits = bits;
  double best = cut_value(g, bits);

  for (std::uint32_t c = 1; c < count; ++c) {
    for (std::uint32_t i = 0; i < m; ++i) bits[i] = static_cast<std::uint8_t>((c >> (m - 1 - i)) & 1u);
    const double value = cut_value(g, bits);
    if (value > best) {
      best = value;
      best_bits = bits;
    }
  }
  return CutAssignment{std::move(best_bits), best};
}

}  // namespace cutbench
