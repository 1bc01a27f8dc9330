#pragma once

#include "tfvs/vertex_set.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tfvs {

/// Stable external vertex identifier; survives induced subgraphs.
using VertexId = std::uint32_t;
using Weight = std::uint64_t;

/// Thrown when a matrix or edit would break the tournament property.
class InvalidTournament : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown for vertex indices or ids that are not part of a tournament.
class UnknownVertex : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

/**
 * A tournament stored as bit-packed out-neighbourhood rows.
 *
 * Row v holds N+(v). Every vertex also carries an external id; ids are
 * strictly increasing in index order, which makes "ascending index" and
 * "ascending id" the same tie-break everywhere.
 */
class Tournament
{
public:
  Tournament() = default;

  /// Transitive tournament on n vertices (arc i->j iff i<j), ids 0..n-1.
  static auto transitive(std::size_t n) -> Tournament
  {
    std::vector<VertexId> ids(n);
    std::iota(ids.begin(), ids.end(), VertexId{0});
    return transitive(std::move(ids));
  }

  static auto transitive(std::vector<VertexId> ids) -> Tournament
  {
    Tournament t(std::move(ids));
    auto const n = t.size();
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        t._out[i].insert(j);
    return t;
  }

  /// Builds from a dense boolean matrix; throws InvalidTournament on any
  /// diagonal entry, symmetric pair or missing arc.
  static auto from_matrix(const std::vector<std::vector<bool>> & adj) -> Tournament
  {
    std::vector<VertexId> ids(adj.size());
    std::iota(ids.begin(), ids.end(), VertexId{0});
    Tournament t(std::move(ids));
    for (Index i = 0; i < adj.size(); ++i) {
      if (adj[i].size() != adj.size())
        throw InvalidTournament("row " + std::to_string(i) + " has wrong length");
      for (Index j = 0; j < adj.size(); ++j)
        if (adj[i][j])
          t._out[i].insert(j);
    }
    t.validate();
    return t;
  }

  /// Builds from rows that are already known to form a tournament.
  static auto from_rows(std::vector<VertexId> ids, std::vector<VertexSet> rows) -> Tournament
  {
    Tournament t;
    t._ids = std::move(ids);
    t._out = std::move(rows);
    return t;
  }

  auto size() const -> std::size_t { return _ids.size(); }
  auto id(Index v) const -> VertexId { return _ids[v]; }
  auto ids() const -> const std::vector<VertexId> & { return _ids; }

  auto has_arc(Index from, Index to) const -> bool { return _out[from].contains(to); }
  auto out_row(Index v) const -> const VertexSet & { return _out[v]; }
  auto out_degree(Index v) const -> std::size_t { return _out[v].count(); }
  auto in_degree(Index v) const -> std::size_t { return size() - 1 - out_degree(v); }

  /// Reverses the arc between u and v so that it points u->v.
  auto orient(Index u, Index v) -> void
  {
    check_index(u);
    check_index(v);
    if (u == v)
      throw InvalidTournament("self-loop at " + std::to_string(u));
    _out[u].insert(v);
    _out[v].erase(u);
  }

  auto flip(Index u, Index v) -> void
  {
    if (has_arc(u, v))
      orient(v, u);
    else
      orient(u, v);
  }

  auto check_index(Index v) const -> void
  {
    if (v >= size())
      throw UnknownVertex("unknown vertex index " + std::to_string(v));
  }

  /// Local index of an external id.
  auto index_of(VertexId id) const -> std::optional<Index>
  {
    auto it = std::lower_bound(_ids.begin(), _ids.end(), id);
    if (it == _ids.end() || *it != id)
      return std::nullopt;
    return static_cast<Index>(it - _ids.begin());
  }

  /// Converts external ids to a VertexSet, throwing UnknownVertex.
  auto set_of(std::span<const VertexId> ids) const -> VertexSet
  {
    VertexSet s(size());
    for (auto id : ids) {
      auto v = index_of(id);
      if (!v)
        throw UnknownVertex("unknown vertex id " + std::to_string(id));
      s.insert(*v);
    }
    return s;
  }

  auto ids_of(const VertexSet & s) const -> std::vector<VertexId>
  {
    std::vector<VertexId> out;
    out.reserve(s.count());
    s.for_each([&](Index v) { out.push_back(_ids[v]); });
    return out;
  }

  /// Throws InvalidTournament naming the first offending pair.
  auto validate() const -> void
  {
    auto const n = size();
    for (Index i = 0; i < n; ++i) {
      if (_out[i].contains(i))
        throw InvalidTournament("diagonal set (" + std::to_string(i) + "," + std::to_string(i) + ")");
      for (Index j = i + 1; j < n; ++j) {
        bool ij = _out[i].contains(j), ji = _out[j].contains(i);
        if (ij && ji)
          throw InvalidTournament("symmetric pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
        if (!ij && !ji)
          throw InvalidTournament("missing arc (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }

  friend auto operator==(const Tournament &, const Tournament &) -> bool = default;

private:
  explicit Tournament(std::vector<VertexId> ids)
    : _ids(std::move(ids)), _out(_ids.size(), VertexSet(_ids.size()))
  {
  }

  std::vector<VertexId> _ids;
  std::vector<VertexSet> _out;
};

/// N+(v).
inline auto out_neighbors(const Tournament & t, Index v) -> VertexSet
{
  t.check_index(v);
  return t.out_row(v);
}

/// N-(v); together with N+(v) partitions V(T) minus v.
inline auto in_neighbors(const Tournament & t, Index v) -> VertexSet
{
  t.check_index(v);
  auto s = t.out_row(v).complement();
  s.erase(v);
  return s;
}

/// Vertex weights aligned with the indices of one tournament.
class WeightMap
{
public:
  WeightMap() = default;
  explicit WeightMap(std::vector<Weight> w) : _w(std::move(w)) {}

  static auto unit(std::size_t n) -> WeightMap { return WeightMap(std::vector<Weight>(n, 1)); }

  auto size() const -> std::size_t { return _w.size(); }
  auto operator[](Index v) const -> Weight { return _w[v]; }
  auto operator[](Index v) -> Weight & { return _w[v]; }
  auto values() const -> const std::vector<Weight> & { return _w; }

  /// Sum of weights over s; throws std::overflow_error if it does not fit.
  auto sum(const VertexSet & s) const -> Weight
  {
    Weight total = 0;
    s.for_each([&](Index v) { total = checked_add(total, _w[v]); });
    return total;
  }

  auto total() const -> Weight
  {
    Weight total = 0;
    for (auto x : _w)
      total = checked_add(total, x);
    return total;
  }

  /// Weights of the members of s, re-indexed densely in ascending order.
  auto restrict_to(const VertexSet & s) const -> WeightMap
  {
    std::vector<Weight> out;
    out.reserve(s.count());
    s.for_each([&](Index v) { out.push_back(_w[v]); });
    return WeightMap(std::move(out));
  }

  static auto checked_add(Weight a, Weight b) -> Weight
  {
    if (a > std::numeric_limits<Weight>::max() - b)
      throw std::overflow_error("weight sum exceeds 64-bit range");
    return a + b;
  }

  friend auto operator==(const WeightMap &, const WeightMap &) -> bool = default;

private:
  std::vector<Weight> _w;
};

struct Instance
{
  Tournament tournament;
  WeightMap weights;
};

/// A claimed feedback vertex set, as sorted external ids plus total weight.
struct Solution
{
  std::vector<VertexId> vertices;
  Weight weight = 0;

  friend auto operator==(const Solution &, const Solution &) -> bool = default;
};

inline auto make_solution(const Tournament & t, const WeightMap & w, const VertexSet & s) -> Solution
{
  return Solution{t.ids_of(s), w.sum(s)};
}

/// Tournament induced on `keep`; ids and relative order are preserved.
inline auto induced_subgraph(const Tournament & t, const VertexSet & keep) -> Tournament
{
  if (keep.universe() != t.size())
    throw UnknownVertex("vertex set universe does not match tournament size");
  auto const members = keep.to_vector();
  auto const k = members.size();
  std::vector<VertexId> ids;
  ids.reserve(k);
  std::vector<VertexSet> rows(k, VertexSet(k));
  for (Index a = 0; a < k; ++a) {
    ids.push_back(t.id(members[a]));
    auto const & row = t.out_row(members[a]);
    for (Index b = 0; b < k; ++b)
      if (row.contains(members[b]))
        rows[a].insert(b);
  }
  return Tournament::from_rows(std::move(ids), std::move(rows));
}

/**
 * Unique topological order of an acyclic tournament, or nullopt if it has a
 * cycle. Candidate order is by decreasing out-degree; an acyclic tournament
 * has out-degrees exactly n-1..0. The candidate is checked arc by arc before
 * it is returned.
 */
inline auto topological_sort(const Tournament & t) -> std::optional<std::vector<Index>>
{
  auto const n = t.size();
  std::vector<Index> order(n, 0);
  std::vector<bool> seen(n, false);
  for (Index v = 0; v < n; ++v) {
    auto d = t.out_degree(v);
    if (seen[d])
      return std::nullopt;
    seen[d] = true;
    order[n - 1 - d] = v;
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (!t.has_arc(order[i], order[j]))
        return std::nullopt;
  return order;
}

/// True iff the sub-tournament induced on `keep` is acyclic, i.e. its
/// out-degrees are pairwise distinct.
inline auto is_acyclic_on(const Tournament & t, const VertexSet & keep) -> bool
{
  auto const k = keep.count();
  std::vector<bool> seen(k, false);
  bool ok = true;
  keep.for_each([&](Index v) {
    if (!ok)
      return;
    auto d = t.out_row(v).intersection_count(keep);
    if (seen[d])
      ok = false;
    else
      seen[d] = true;
  });
  return ok;
}

inline auto is_acyclic(const Tournament & t) -> bool
{
  return is_acyclic_on(t, VertexSet::full(t.size()));
}

/**
 * Strongly connected components, listed from the source component to the
 * sink component (every arc between two components points forward).
 *
 * With vertices sorted by decreasing out-degree, the first k vertices beat
 * all the others exactly when their out-degrees sum to k(k-1)/2 + k(n-k);
 * components are the stretches between such cut points.
 */
inline auto strong_components(const Tournament & t) -> std::vector<VertexSet>
{
  auto const n = t.size();
  std::vector<Index> order(n);
  std::vector<std::size_t> degree(n);
  for (Index v = 0; v < n; ++v) {
    order[v] = v;
    degree[v] = t.out_degree(v);
  }
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return degree[a] > degree[b]; });

  std::vector<VertexSet> components;
  VertexSet current(n);
  std::size_t prefix = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    auto const v = order[k - 1];
    current.insert(v);
    prefix += degree[v];
    if (prefix == k * (k - 1) / 2 + k * (n - k)) {
      components.push_back(std::move(current));
      current = VertexSet(n);
    }
  }
  return components;
}

/// True iff T - S is acyclic.
inline auto verify_fvs(const Tournament & t, const VertexSet & removed) -> bool
{
  if (removed.universe() != t.size())
    throw UnknownVertex("vertex set universe does not match tournament size");
  return is_acyclic_on(t, removed.complement());
}

/// Same check for a set of external ids; throws UnknownVertex.
inline auto verify_fvs(const Tournament & t, std::span<const VertexId> removed) -> bool
{
  return verify_fvs(t, t.set_of(removed));
}

/**
 * An arc x->y with x in N+(p) and y in N-(p), i.e. a directed triangle
 * p->x->y->p. Returns the lexicographically smallest such (x, y), or nullopt
 * when p lies on no triangle.
 */
inline auto witness_triangle_through(const Tournament & t, Index p) -> std::optional<std::pair<Index, Index>>
{
  auto const out = out_neighbors(t, p);
  auto const in = in_neighbors(t, p);
  std::optional<std::pair<Index, Index>> found;
  out.for_each([&](Index x) {
    if (found)
      return;
    auto const y = (t.out_row(x) & in).first();
    if (y < t.size())
      found.emplace(x, static_cast<Index>(y));
  });
  return found;
}

} // namespace tfvs
