#pragma once

#include "tfvs/tournament.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tfvs {

/// One weight transfer: `deleted` (the lighter endpoint) leaves the instance
/// and `charged` loses `delta` = the deleted vertex's current weight.
struct ReduceStep
{
  Index deleted;
  Index charged;
  Weight delta;

  friend auto operator==(const ReduceStep &, const ReduceStep &) -> bool = default;
};

struct ReduceResult
{
  /// D, in deletion order (indices of the input tournament).
  std::vector<Index> deleted;
  /// V(G) minus D.
  VertexSet survivors;
  /// Reduced weights on the survivors, densely indexed in ascending order.
  WeightMap reduced_weights;
  std::vector<ReduceStep> steps;

  auto deleted_set() const -> VertexSet
  {
    VertexSet d(survivors.universe());
    for (auto v : deleted)
      d.insert(v);
    return d;
  }

  /// Reduced weights on a subset of the survivors, densely re-indexed.
  auto weights_on(const VertexSet & subset) const -> WeightMap
  {
    std::vector<Weight> out;
    out.reserve(subset.count());
    Index rank = 0;
    survivors.for_each([&](Index v) {
      if (subset.contains(v))
        out.push_back(reduced_weights[rank]);
      ++rank;
    });
    return WeightMap(std::move(out));
  }
};

/// Lexicographically smallest arc (x, y) with x in N+(p) - D and
/// y in N-(p) - D, or nullopt.
inline auto arc_selection_order(const Tournament & t, Index p, const VertexSet & removed)
  -> std::optional<std::pair<Index, Index>>
{
  t.check_index(p);
  auto const out = out_neighbors(t, p) - removed;
  auto const in = in_neighbors(t, p) - removed;
  for (auto x = out.first(); x < t.size(); x = out.next(x + 1)) {
    auto const & row = t.out_row(static_cast<Index>(x));
    for (auto y = in.first(); y < t.size(); y = in.next(y + 1))
      if (row.contains(static_cast<Index>(y)))
        return std::pair{static_cast<Index>(x), static_cast<Index>(y)};
  }
  return std::nullopt;
}

/**
 * Deletes the lighter endpoint of cross arcs N+(p) -> N-(p) one at a time,
 * charging its weight to the other endpoint, until p lies on no triangle.
 *
 * The arc handled at each step is the one arc_selection_order would return.
 * On equal weights the out-neighbour x is deleted. Runs in O(n^2): the cross
 * relation is kept as bit rows A[x] = N+(x) ∩ N-(p) with per-row counts, and
 * every deletion clears one row or one column of it.
 */
inline auto reduce(const Tournament & t, const WeightMap & w, Index p) -> ReduceResult
{
  t.check_index(p);
  if (w.size() != t.size())
    throw std::invalid_argument("weight map has " + std::to_string(w.size()) + " entries for " +
                                std::to_string(t.size()) + " vertices");
  auto const n = t.size();
  auto const in = in_neighbors(t, p);
  auto const xs = t.out_row(p).to_vector();

  std::vector<VertexSet> cross;
  std::vector<std::size_t> out_degree_into_in;
  cross.reserve(xs.size());
  out_degree_into_in.reserve(xs.size());
  for (auto x : xs) {
    cross.push_back(t.out_row(x) & in);
    out_degree_into_in.push_back(cross.back().count());
  }

  std::vector<Weight> current = w.values();
  ReduceResult result;
  VertexSet removed(n);

  // Counts only ever decrease, so the first nonzero row never moves back.
  std::size_t cursor = 0;
  while (true) {
    while (cursor < xs.size() && out_degree_into_in[cursor] == 0)
      ++cursor;
    if (cursor == xs.size())
      break;
    auto const x = xs[cursor];
    auto const y = static_cast<Index>(cross[cursor].first());

    bool const drop_x = current[x] <= current[y];
    Index const v = drop_x ? x : y;
    Index const u = drop_x ? y : x;
    Weight const delta = current[v];
    current[u] -= delta;
    current[v] = 0;
    result.steps.push_back({v, u, delta});
    result.deleted.push_back(v);
    removed.insert(v);

    if (drop_x) {
      out_degree_into_in[cursor] = 0;
    } else {
      for (std::size_t i = cursor; i < xs.size(); ++i)
        if (cross[i].contains(y)) {
          cross[i].erase(y);
          --out_degree_into_in[i];
        }
    }
  }

  result.survivors = removed.complement();
  std::vector<Weight> kept;
  kept.reserve(n - result.deleted.size());
  result.survivors.for_each([&](Index v) { kept.push_back(current[v]); });
  result.reduced_weights = WeightMap(std::move(kept));
  return result;
}

} // namespace tfvs
