#pragma once

#include "tfvs/config.hpp"
#include "tfvs/exact.hpp"
#include "tfvs/reduce.hpp"
#include "tfvs/rng.hpp"
#include "tfvs/tournament.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

namespace tfvs {

enum class Algorithm
{
  exact,
  approx2,
  approx2_det,
  approx3,
};

inline auto to_string(Algorithm a) -> std::string_view
{
  switch (a) {
    case Algorithm::exact: return "exact";
    case Algorithm::approx2: return "approx2";
    case Algorithm::approx2_det: return "approx2-det";
    case Algorithm::approx3: return "approx3";
  }
  return "?";
}

inline auto parse_algorithm(std::string_view tag) -> Algorithm
{
  for (auto a : {Algorithm::exact, Algorithm::approx2, Algorithm::approx2_det, Algorithm::approx3})
    if (to_string(a) == tag)
      return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(tag) + "'");
}

/// Recursion-tree node counts, indexed by depth.
struct RecursionStats
{
  std::vector<std::uint64_t> nodes_per_depth;

  auto visit(std::size_t depth) -> void
  {
    if (nodes_per_depth.size() <= depth)
      nodes_per_depth.resize(depth + 1, 0);
    ++nodes_per_depth[depth];
  }

  auto total() const -> std::uint64_t
  {
    return std::accumulate(nodes_per_depth.begin(), nodes_per_depth.end(), std::uint64_t{0});
  }

  auto merge(const RecursionStats & o) -> void
  {
    if (nodes_per_depth.size() < o.nodes_per_depth.size())
      nodes_per_depth.resize(o.nodes_per_depth.size(), 0);
    for (std::size_t d = 0; d < o.nodes_per_depth.size(); ++d)
      nodes_per_depth[d] += o.nodes_per_depth[d];
  }
};

struct SolveReport
{
  Solution solution;
  Algorithm algorithm = Algorithm::exact;
  RecursionStats recursion;
  std::chrono::nanoseconds elapsed{0};
  std::uint64_t seed_used = 0;
  /// Weights of the candidates compared at the root of the last
  /// repetition: S_0 first, then one per pivot iteration.
  std::vector<Weight> root_candidate_weights;
};

struct Phase1Result
{
  /// The lightest vertices, ties by ascending index.
  VertexSet deleted;
  /// Heaviest weight in `deleted`.
  Weight delta = 0;
  VertexSet survivors;
  /// w - delta on the survivors, densely indexed.
  WeightMap reduced_weights;
};

/**
 * Deletes the floor(n * phase1_delete_fraction) lightest vertices (at least
 * one) and lowers every survivor's weight by the heaviest deleted weight.
 * Survivors weigh at least that much, so no weight goes negative.
 */
inline auto phase1(const Tournament & t, const WeightMap & w, const SolverConfig & cfg) -> Phase1Result
{
  auto const n = t.size();
  if (w.size() != n)
    throw std::invalid_argument("weight map size does not match tournament");
  auto const count = std::min(n, std::max<std::size_t>(1, cfg.phase1_delete_fraction.floor_of(n)));

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return w[a] < w[b]; });

  Phase1Result r{VertexSet(n), 0, {}, {}};
  for (std::size_t i = 0; i < count; ++i) {
    r.deleted.insert(order[i]);
    r.delta = std::max(r.delta, w[order[i]]);
  }
  r.survivors = r.deleted.complement();
  std::vector<Weight> reduced;
  reduced.reserve(n - count);
  r.survivors.for_each([&](Index v) { reduced.push_back(w[v] - r.delta); });
  r.reduced_weights = WeightMap(std::move(reduced));
  return r;
}

/// Vertices whose in- and out-degree are both at most floor(beta * n).
inline auto pivot_candidates(const Tournament & t, const SolverConfig & cfg) -> std::vector<Index>
{
  auto const n = t.size();
  auto const bound = cfg.degree_bound_fraction.floor_of(n);
  std::vector<Index> out;
  for (Index v = 0; v < n; ++v) {
    auto const d = t.out_degree(v);
    if (d <= bound && n - 1 - d <= bound)
      out.push_back(v);
  }
  return out;
}

enum class Side
{
  in,
  out,
};

/// Sorted union of id lists.
inline auto merge_ids(std::vector<VertexId> a, const std::vector<VertexId> & b) -> std::vector<VertexId>
{
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

/**
 * One pivot iteration: Reduce around p, solve G[N-(p) - D] and
 * G[N+(p) - D] under the reduced weights through `recurse`, and return
 * S- ∪ S+ ∪ D weighed under the original weights.
 *
 * `recurse(sub, weights, side)` must return an FVS of `sub` in external ids.
 * The result is a p-disjoint FVS of t whatever quality `recurse` has.
 */
template <typename Recurse>
auto phase2_iteration(const Tournament & t, const WeightMap & w, Index p, Recurse && recurse) -> Solution
{
  auto const r = reduce(t, w, p);
  auto const in_part = in_neighbors(t, p) & r.survivors;
  auto const out_part = out_neighbors(t, p) & r.survivors;

  Solution const s_in = recurse(induced_subgraph(t, in_part), r.weights_on(in_part), Side::in);
  Solution const s_out = recurse(induced_subgraph(t, out_part), r.weights_on(out_part), Side::out);

  auto members = r.deleted_set();
  members |= t.set_of(s_in.vertices);
  members |= t.set_of(s_out.vertices);
  return make_solution(t, w, members);
}

namespace detail {

enum class PivotPolicy
{
  sample,
  enumerate,
};

/// Recursive driver shared by the randomized and derandomized solvers.
class Approx2Engine
{
public:
  Approx2Engine(const SolverConfig & cfg, PivotPolicy policy) : _cfg(cfg), _policy(policy) {}

  auto solve(const Tournament & t, const WeightMap & w, std::uint64_t key, std::size_t depth) -> Solution
  {
    _stats.visit(depth);
    auto const n = t.size();
    if (n <= _cfg.base_case_size)
      return exact_min_fvs(t, w, _cfg.exact_limit);

    // Cycles never leave a strong component: singleton components are
    // dropped, small ones solved exactly here, and the union of the large
    // ones is handed to a single child.
    auto const components = strong_components(t);
    VertexSet large(n);
    for (auto const & c : components)
      if (c.count() > _cfg.base_case_size)
        large |= c;
    if (large.count() < n) {
      VertexSet chosen(n);
      for (auto const & c : components) {
        auto const size = c.count();
        if (size == 1 || size > _cfg.base_case_size)
          continue;
        auto const part = exact_min_fvs(induced_subgraph(t, c), w.restrict_to(c), _cfg.exact_limit);
        chosen |= t.set_of(part.vertices);
      }
      if (!large.empty()) {
        auto const part = solve(induced_subgraph(t, large), w.restrict_to(large), derive_key(key, 0), depth + 1);
        chosen |= t.set_of(part.vertices);
      }
      return make_solution(t, w, chosen);
    }

    std::vector<Weight> candidate_weights;

    // Iteration 0: drop the lightest vertices and recurse on the rest.
    auto const ph = phase1(t, w, _cfg);
    auto const rest = solve(induced_subgraph(t, ph.survivors), ph.reduced_weights, derive_key(key, 0), depth + 1);
    auto s0 = ph.deleted;
    s0 |= t.set_of(rest.vertices);
    Solution best = make_solution(t, w, s0);
    candidate_weights.push_back(best.weight);

    // Candidates only replace the incumbent when strictly lighter, so once it
    // weighs nothing the remaining iterations cannot change the answer.
    // Zero-weight subproblems are routine: phase 1 zeroes every survivor of
    // a unit-weight instance.
    auto const pivots = best.weight == 0 ? std::vector<Index>{} : pivot_candidates(t, _cfg);
    if (!pivots.empty()) {
      auto const iterations = _policy == PivotPolicy::sample ? _cfg.pivot_iterations : pivots.size();
      CounterRng rng(derive_key(key, 1));
      for (std::size_t i = 1; i <= iterations; ++i) {
        auto const p = _policy == PivotPolicy::sample ? pivots[rng.below(pivots.size())] : pivots[i - 1];
        auto candidate =
          phase2_iteration(t, w, p, [&](const Tournament & sub, const WeightMap & sub_w, Side side) {
            auto const child = 2 * i + (side == Side::in ? 0 : 1);
            return solve(sub, sub_w, derive_key(key, child), depth + 1);
          });
        candidate_weights.push_back(candidate.weight);
        // Strict: the earliest iteration wins ties.
        if (candidate.weight < best.weight)
          best = std::move(candidate);
        if (best.weight == 0)
          break;
      }
    }

    if (depth == 0)
      _root_candidates = std::move(candidate_weights);
    return best;
  }

  auto stats() const -> const RecursionStats & { return _stats; }
  auto root_candidates() const -> const std::vector<Weight> & { return _root_candidates; }

private:
  const SolverConfig & _cfg;
  PivotPolicy _policy;
  RecursionStats _stats;
  std::vector<Weight> _root_candidates;
};

inline auto check_weights(const Tournament & t, const WeightMap & w) -> void
{
  if (w.size() != t.size())
    throw std::invalid_argument("weight map size does not match tournament");
  (void)w.total();
}

} // namespace detail

/**
 * Randomized 2-approximation. Feasible on every run; with the default
 * configuration the result is within twice the optimum with probability at
 * least 1/2, and each extra repetition halves the failure probability.
 *
 * Pivots are drawn from counter-based streams keyed by (seed, path to the
 * recursion node), so results depend only on (instance, cfg).
 */
inline auto approx2_randomized(const Tournament & t, const WeightMap & w, const SolverConfig & cfg) -> SolveReport
{
  cfg.validate();
  detail::check_weights(t, w);
  auto const start = std::chrono::steady_clock::now();

  SolveReport report;
  report.algorithm = Algorithm::approx2;
  report.seed_used = cfg.seed;
  bool have = false;
  for (std::size_t rep = 0; rep < cfg.outer_repetitions; ++rep) {
    detail::Approx2Engine engine(cfg, detail::PivotPolicy::sample);
    auto s = engine.solve(t, w, derive_key(cfg.seed, rep), 0);
    report.recursion.merge(engine.stats());
    report.root_candidate_weights = engine.root_candidates();
    if (!have || s.weight < report.solution.weight) {
      report.solution = std::move(s);
      have = true;
    }
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

/// Deterministic 2-approximation: every admissible pivot is tried once.
/// Quasi-polynomial; refuses instances above cfg.derandomized_max_n.
inline auto approx2_derandomized(const Tournament & t, const WeightMap & w, const SolverConfig & cfg) -> SolveReport
{
  cfg.validate();
  detail::check_weights(t, w);
  if (t.size() > cfg.derandomized_max_n)
    throw SizeLimitExceeded("derandomized solver accepts at most " + std::to_string(cfg.derandomized_max_n) +
                            " vertices, instance has " + std::to_string(t.size()));
  auto const start = std::chrono::steady_clock::now();
  detail::Approx2Engine engine(cfg, detail::PivotPolicy::enumerate);
  SolveReport report;
  report.algorithm = Algorithm::approx2_det;
  report.solution = engine.solve(t, w, 0, 0);
  report.recursion = engine.stats();
  report.root_candidate_weights = engine.root_candidates();
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

} // namespace tfvs
