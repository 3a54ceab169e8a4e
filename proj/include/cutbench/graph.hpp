#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cutbench {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

/// Undirected weighted graph with canonical edge storage: every edge is kept
/// as (u, v, w) with u < v, sorted lexicographically, no duplicates, w >= 0.
/// Immutable after construction; safe to share across threads.
class WeightedGraph {
public:
  WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw std::invalid_argument("graph: node count must be >= 1");
    for (auto& e : edges_) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u < 0 || e.v >= n_) throw std::invalid_argument("graph: edge index out of range");
      if (e.u == e.v) throw std::invalid_argument("graph: self-loops are not allowed");
      if (!(e.w >= 0.0) || !std::isfinite(e.w))
        throw std::invalid_argument("graph: edge weights must be finite and >= 0");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
        throw std::invalid_argument("graph: duplicate edge");
    adj_.resize(static_cast<std::size_t>(n_));
    for (const auto& e : edges_) {
      adj_[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
      adj_[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
      total_weight_ += e.w;
    }
  }

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::pair<int, double>>& neighbors(int v) const {
    return adj_[static_cast<std::size_t>(v)];
  }
  double total_weight() const { return total_weight_; }

private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
  double total_weight_ = 0.0;
};

/// Total weight of edges whose endpoints lie in different partitions.
inline double cut_value(const WeightedGraph& g, std::span<const std::uint8_t> bits) {
  if (static_cast<int>(bits.size()) != g.n())
    throw std::invalid_argument("cut_value: assignment length does not match node count");
  double cut = 0.0;
  for (const auto& e : g.edges())
    if (bits[static_cast<std::size_t>(e.u)] != bits[static_cast<std::size_t>(e.v)]) cut += e.w;
  return cut;
}

/// A binary partition vector together with its cut value.
struct CutAssignment {
  std::vector<std::uint8_t> bits;
  double cut_value = 0.0;
};

}  // namespace cutbench
