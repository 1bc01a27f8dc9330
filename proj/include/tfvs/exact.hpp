#pragma once

#include "tfvs/config.hpp"
#include "tfvs/tournament.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace tfvs {

namespace detail {

using Mask = std::uint64_t;

/// True iff sorted(a) precedes sorted(b) lexicographically.
constexpr auto lex_less(Mask a, Mask b) -> bool
{
  if (a == b)
    return false;
  auto const low = static_cast<unsigned>(std::countr_zero(a ^ b));
  auto const above = ~Mask{0} << low; // includes the differing bit
  if ((a >> low) & 1u)
    // a has the element, b continues with something larger or ends
    return (b & above) != 0;
  return (a & above) == 0;
}

/// Minimum-weight FVS avoiding the vertices outside `allowed`; the
/// lexicographically smallest one among equal weights.
inline auto exhaustive_search(const Tournament & t, const WeightMap & w, Mask allowed) -> Mask
{
  auto const n = t.size();
  std::array<Mask, 64> rows{};
  for (Index v = 0; v < n; ++v)
    rows[v] = t.out_row(v).words().empty() ? 0 : t.out_row(v).words()[0];

  Mask const all = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
  auto acyclic_without = [&](Mask removed) {
    Mask keep = all & ~removed;
    Mask seen = 0;
    for (Mask rest = keep; rest; rest &= rest - 1) {
      auto v = std::countr_zero(rest);
      auto d = std::popcount(rows[v] & keep);
      if ((seen >> d) & 1u)
        return false;
      seen |= Mask{1} << d;
    }
    return true;
  };

  std::vector<Index> bits;
  for (Mask rest = allowed; rest; rest &= rest - 1)
    bits.push_back(static_cast<Index>(std::countr_zero(rest)));
  auto const k = bits.size();

  // Start from the whole allowed set; feasible when at most one vertex is
  // forbidden.
  Mask best = allowed;
  Weight best_weight = 0;
  for (auto v : bits)
    best_weight += w[v];
  bool have_best = acyclic_without(allowed);

  // Gray-code walk over subsets of `allowed`, weight kept incrementally.
  Mask current = 0;
  Weight weight = 0;
  std::uint64_t const total = std::uint64_t{1} << k;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (i != 0) {
      auto const flip = bits[static_cast<std::size_t>(std::countr_zero(i))];
      Mask const bit = Mask{1} << flip;
      if (current & bit) {
        current &= ~bit;
        weight -= w[flip];
      } else {
        current |= bit;
        weight += w[flip];
      }
    }
    if (have_best && (weight > best_weight || (weight == best_weight && !lex_less(current, best))))
      continue;
    if (acyclic_without(current)) {
      best = current;
      best_weight = weight;
      have_best = true;
    }
  }
  if (!have_best)
    throw std::logic_error("no feedback vertex set within the allowed vertices");
  return best;
}

inline auto check_exact_size(const Tournament & t, std::size_t limit) -> void
{
  if (t.size() > limit || t.size() > 30)
    throw SizeLimitExceeded("exact solver accepts at most " + std::to_string(std::min<std::size_t>(limit, 30)) +
                            " vertices, instance has " + std::to_string(t.size()));
}

inline auto mask_to_set(Mask m, std::size_t n) -> VertexSet
{
  VertexSet s(n);
  for (; m; m &= m - 1)
    s.insert(static_cast<Index>(std::countr_zero(m)));
  return s;
}

} // namespace detail

/// Optimal FVS by enumerating every vertex subset with weight pruning. Among
/// optima the lexicographically smallest sorted id list wins.
inline auto exact_min_fvs(const Tournament & t, const WeightMap & w, std::size_t limit = 20) -> Solution
{
  detail::check_exact_size(t, limit);
  if (w.size() != t.size())
    throw std::invalid_argument("weight map size does not match tournament");
  auto const n = t.size();
  detail::Mask const all = (detail::Mask{1} << n) - 1;
  auto const best = detail::exhaustive_search(t, w, all);
  return make_solution(t, w, detail::mask_to_set(best, n));
}

/// Optimal FVS that does not contain p.
inline auto exact_min_fvs_disjoint(const Tournament & t, const WeightMap & w, Index p, std::size_t limit = 20)
  -> Solution
{
  detail::check_exact_size(t, limit);
  t.check_index(p);
  if (w.size() != t.size())
    throw std::invalid_argument("weight map size does not match tournament");
  auto const n = t.size();
  detail::Mask const allowed = ((detail::Mask{1} << n) - 1) & ~(detail::Mask{1} << p);
  auto const best = detail::exhaustive_search(t, w, allowed);
  return make_solution(t, w, detail::mask_to_set(best, n));
}

} // namespace tfvs
