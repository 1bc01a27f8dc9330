#pragma once

#include "tfvs/tournament.hpp"

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

namespace tfvs {

namespace detail {

/// Smallest (p, x, y) with p->x->y->p inside `alive`.
inline auto first_triangle_within(const Tournament & t, const VertexSet & alive)
  -> std::optional<std::tuple<Index, Index, Index>>
{
  std::optional<std::tuple<Index, Index, Index>> found;
  alive.for_each([&](Index p) {
    if (found)
      return;
    auto const out = t.out_row(p) & alive;
    auto in = alive - t.out_row(p);
    in.erase(p);
    out.for_each([&](Index x) {
      if (found)
        return;
      auto const y = (t.out_row(x) & in).first();
      if (y < t.size())
        found.emplace(p, x, static_cast<Index>(y));
    });
  });
  return found;
}

} // namespace detail

/**
 * Local-ratio 3-approximation. While some triangle has three vertices of
 * positive residual weight, subtract the smallest of the three residuals
 * from all three. The zero-residual vertices then hit every triangle; they
 * are pruned to an inclusion-minimal FVS by trying to drop them in reverse
 * order of zeroing.
 */
inline auto approx3_local_ratio(const Tournament & t, const WeightMap & w) -> Solution
{
  auto const n = t.size();
  if (w.size() != n)
    throw std::invalid_argument("weight map size does not match tournament");

  std::vector<Weight> residual = w.values();
  VertexSet positive(n);
  std::vector<Index> zeroed; // in the order residuals hit zero
  for (Index v = 0; v < n; ++v) {
    if (residual[v] > 0)
      positive.insert(v);
    else
      zeroed.push_back(v);
  }

  while (auto tri = detail::first_triangle_within(t, positive)) {
    auto [a, b, c] = *tri;
    auto const delta = std::min({residual[a], residual[b], residual[c]});
    for (auto v : {a, b, c}) {
      residual[v] -= delta;
      if (residual[v] == 0) {
        positive.erase(v);
        zeroed.push_back(v);
      }
    }
  }

  auto solution = positive.complement();
  for (auto it = zeroed.rbegin(); it != zeroed.rend(); ++it) {
    solution.erase(*it);
    if (!verify_fvs(t, solution))
      solution.insert(*it);
  }
  return make_solution(t, w, solution);
}

} // namespace tfvs
