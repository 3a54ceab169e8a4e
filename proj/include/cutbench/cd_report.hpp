#pragma once

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cutbench {

/// Maximal groups of solvers whose average ranks lie within `cd` of each
/// other, over the rank-ascending order. Each group is a contiguous window;
/// windows contained in a larger one are dropped, so singletons appear only
/// for solvers that belong to no wider group.
inline std::vector<std::vector<std::string>> cd_groups(const std::vector<std::string>& ids,
                                                       const std::vector<double>& avg_ranks,
                                                       double cd) {
  if (ids.size() != avg_ranks.size())
    throw std::invalid_argument("cd_groups: ids and ranks must have equal length");
  const std::size_t k = ids.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return avg_ranks[a] < avg_ranks[b]; });
  std::vector<std::vector<std::string>> groups;
  std::size_t last_end = 0;  // one past the end of the widest group so far
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i;
    while (j + 1 < k && avg_ranks[order[j + 1]] - avg_ranks[order[i]] <= cd) ++j;
    if (j + 1 <= last_end) continue;  // contained in a previous window
    std::vector<std::string> group;
    for (std::size_t t = i; t <= j; ++t) group.push_back(ids[order[t]]);
    groups.push_back(std::move(group));
    last_end = j + 1;
  }
  return groups;
}

/// Critical-difference diagram data: solver ids with average ranks sorted
/// ascending (best first), the CD value, and the within-CD groups.
inline nlohmann::json cd_diagram_data(const std::vector<std::string>& ids,
                                      const std::vector<double>& avg_ranks, double cd) {
  if (ids.size() != avg_ranks.size())
    throw std::invalid_argument("cd_diagram_data: ids and ranks must have equal length");
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return avg_ranks[a] < avg_ranks[b]; });
  nlohmann::json ranking = nlohmann::json::array();
  for (std::size_t idx : order)
    ranking.push_back({{"solver_id", ids[idx]}, {"avg_rank", avg_ranks[idx]}});
  return nlohmann::json{
      {"cd", cd}, {"ranking", ranking}, {"groups", cd_groups(ids, avg_ranks, cd)}};
}

inline void emit_cd_diagram_data(const std::vector<std::string>& ids,
                                 const std::vector<double>& avg_ranks, double cd,
                                 std::ostream& out) {
  out << cd_diagram_data(ids, avg_ranks, cd).dump(2) << '\n';
  if (!out) throw std::runtime_error("emit_cd_diagram_data: write failed");
}

}  // namespace cutbench
