#pragma once

// Randomized property checks shared by the unit tests and the acceptance
// binary. Each check runs `cases` random instances and returns how many were
// examined plus a description of every violation.

#include "oracles.hpp"
#include "tfvs/approx.hpp"
#include "tfvs/local_ratio.hpp"
#include "tfvs/reduce.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace props {

using namespace tfvs;

struct Tally
{
  std::size_t cases = 0;
  std::vector<std::string> failures;

  auto fail(std::string what) -> void { failures.push_back(std::move(what)); }
  auto ok() const -> bool { return failures.empty(); }
};

inline auto describe(const oracle::Matrix & m, const std::vector<Weight> & w, long p = -1) -> std::string
{
  std::ostringstream out;
  out << "n=" << m.size();
  if (p >= 0)
    out << " p=" << p;
  out << " w=";
  for (auto x : w)
    out << x << ' ';
  out << "rows=";
  for (auto const & row : m) {
    for (bool b : row)
      out << (b ? '1' : '0');
    out << ' ';
  }
  return out.str();
}

/// Every subset of {0..n-1} \ {skip} as a sorted index list.
template <typename F>
auto for_each_subset(std::size_t n, long skip, F && f) -> void
{
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (skip >= 0 && ((mask >> skip) & 1u))
      continue;
    std::vector<Index> s;
    for (Index v = 0; v < n; ++v)
      if ((mask >> v) & 1u)
        s.push_back(v);
    f(s);
  }
}

/// A solution of T minus X, restricted away from X, solves T - X.
inline auto hereditary(std::uint64_t seed, std::size_t cases) -> Tally
{
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  Tally tally;
  while (tally.cases < cases) {
    std::size_t n = 2 + gen() % 9;
    auto m = oracle::random_matrix(n, gen);
    auto t = Tournament::from_matrix(m);
    Index x = static_cast<Index>(gen() % n);
    std::vector<bool> keep(n, true);
    keep[x] = false;
    ++tally.cases;
    for_each_subset(n, -1, [&](const std::vector<Index> & s) {
      if (!oracle::is_fvs(m, s))
        return;
      // s minus x must be an FVS of T - x (matrix oracle) and of the
      // library's induced subgraph.
      std::vector<Index> rest;
      std::vector<VertexId> ids;
      for (auto v : s)
        if (v != x) {
          rest.push_back(v);
          ids.push_back(v);
        }
      auto removed = keep;
      for (auto v : rest)
        removed[v] = false;
      auto sub = induced_subgraph(t, VertexSet(n, {x}).complement());
      if (oracle::has_cycle(m, removed) || !verify_fvs(sub, ids))
        tally.fail("hereditary: " + describe(m, {}, x));
    });
  }
  return tally;
}

/// Random tournament on n vertices with all arcs N-(p) -> N+(p): p = in_size.
inline auto split_matrix(std::size_t in_size, std::size_t out_size, std::mt19937 & gen) -> oracle::Matrix
{
  auto const n = in_size + out_size + 1;
  auto m = oracle::random_matrix(n, gen);
  for (std::size_t a = 0; a <= in_size; ++a)
    for (std::size_t b = in_size; b < n; ++b)
      if (a != b) {
        m[a][b] = true;
        m[b][a] = false;
      }
  // hide the structure behind a random relabelling
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), gen);
  oracle::Matrix out(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out[perm[a]][perm[b]] = m[a][b];
  return out;
}

/// For p on no triangle, S (without p) is an FVS of T iff S ∩ N-(p) and
/// S ∩ N+(p) are FVSs of the two halves.
inline auto split_soundness(std::uint64_t seed, std::size_t cases) -> Tally
{
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  Tally tally;
  while (tally.cases < cases) {
    std::size_t in_size = gen() % 6, out_size = gen() % (10 - in_size);
    auto m = split_matrix(in_size, out_size, gen);
    auto const n = m.size();
    auto t = Tournament::from_matrix(m);
    Index p = 0;
    while (witness_triangle_through(t, p))
      ++p;
    ++tally.cases;
    auto in = in_neighbors(t, p), out = out_neighbors(t, p);
    auto h_in = induced_subgraph(t, in), h_out = induced_subgraph(t, out);
    for_each_subset(n, p, [&](const std::vector<Index> & s) {
      std::vector<VertexId> s_in, s_out;
      for (auto v : s)
        (in.contains(v) ? s_in : s_out).push_back(v);
      if (oracle::is_fvs(m, s) != (verify_fvs(h_in, s_in) && verify_fvs(h_out, s_out)))
        tally.fail("split: " + describe(m, {}, p));
    });
  }
  return tally;
}

/// Instance whose light vertices each sit on a triangle with two heavy
/// ones, so optimal solutions tend to be large. Arcs among the light
/// vertices stay random.
inline auto heavy_core_instance(std::size_t n, std::mt19937 & gen) -> std::pair<oracle::Matrix, std::vector<Weight>>
{
  auto m = oracle::random_matrix(n, gen);
  auto const core = std::max<std::size_t>(2, n / 3);
  std::vector<Weight> w(n);
  for (std::size_t v = 0; v < n; ++v)
    w[v] = v < core ? 1 + gen() % 30 : 1 + gen() % 5;
  for (std::size_t a = 0; a < core; ++a)
    for (std::size_t b = a + 1; b < core; ++b) {
      m[a][b] = true;
      m[b][a] = false;
    }
  for (std::size_t v = core; v < n; ++v) {
    if (gen() % 4 == 0)
      continue;
    std::size_t a = gen() % core, b = gen() % core;
    if (a == b)
      continue;
    if (a > b)
      std::swap(a, b);
    m[b][v] = m[v][a] = true;
    m[v][b] = m[a][v] = false;
  }
  return {m, w};
}

/**
 * Phase-1 preservation: when some optimum has at least ceil(2n/3) vertices,
 * D plus any 2-approximate solution R of (G - D, w') weighs at most 2 OPT.
 * Checked for every such R, n in [6, 10] (so |D| = floor(n/6) = 1).
 */
inline auto phase1_preservation(std::uint64_t seed, std::size_t cases) -> Tally
{
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  SolverConfig cfg;
  cfg.base_case_size = 3;
  Tally tally;
  std::size_t attempts = 0;
  while (tally.cases < cases && attempts < 100 * cases) {
    ++attempts;
    std::size_t n = 6 + gen() % 5;
    auto [m, w] = heavy_core_instance(n, gen);
    auto const opt = oracle::brute_force(m, w);
    auto const need = (2 * n + 2) / 3;
    bool const hypothesis =
      std::any_of(opt.all.begin(), opt.all.end(), [&](auto const & s) { return s.size() >= need; });
    if (!hypothesis)
      continue;
    ++tally.cases;

    auto t = Tournament::from_matrix(m);
    auto const ph = phase1(t, WeightMap(w), cfg);
    auto const sub = induced_subgraph(t, ph.survivors);
    auto const sub_m = oracle::matrix_of(sub);
    auto const sub_opt = oracle::brute_force(sub_m, ph.reduced_weights.values());
    for_each_subset(sub.size(), -1, [&](const std::vector<Index> & r) {
      if (oracle::weight_of(ph.reduced_weights.values(), r) > 2 * sub_opt.weight || !oracle::is_fvs(sub_m, r))
        return;
      auto combined = ph.deleted;
      for (auto v : r)
        combined.insert(*t.index_of(sub.id(v)));
      auto const list = combined.to_vector();
      if (!oracle::is_fvs(m, list) || oracle::weight_of(w, list) > 2 * opt.weight)
        tally.fail("phase1: " + describe(m, w));
    });
  }
  if (tally.cases < cases)
    tally.fail("phase1: only " + std::to_string(tally.cases) + " instances met the size hypothesis");
  return tally;
}

/**
 * Reduce keeps 2-approximation for p-avoiding solutions: for every
 * p-avoiding FVS R of (G - D, w') within twice its p-avoiding optimum,
 * R ∪ D is a p-avoiding FVS of G within twice OPT_p(G, w).
 */
inline auto reduce_preservation(std::uint64_t seed, std::size_t cases) -> Tally
{
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  Tally tally;
  while (tally.cases < cases) {
    std::size_t n = 3 + gen() % 8;
    auto m = oracle::random_matrix(n, gen);
    auto t = Tournament::from_matrix(m);
    auto const w = oracle::random_weights(n, 0, 20, gen);
    Index p = static_cast<Index>(gen() % n);
    ++tally.cases;

    auto const r = reduce(t, w, p);
    auto const opt_p = oracle::brute_force(m, w.values(), p);
    auto const sub = induced_subgraph(t, r.survivors);
    auto const sub_m = oracle::matrix_of(sub);
    auto const local_p = static_cast<long>(*sub.index_of(p));
    auto const sub_opt = oracle::brute_force(sub_m, r.reduced_weights.values(), local_p);
    for_each_subset(sub.size(), local_p, [&](const std::vector<Index> & s) {
      if (oracle::weight_of(r.reduced_weights.values(), s) > 2 * sub_opt.weight || !oracle::is_fvs(sub_m, s))
        return;
      auto combined = r.deleted;
      for (auto v : s)
        combined.push_back(sub.id(v));
      std::sort(combined.begin(), combined.end());
      if (!oracle::is_fvs(m, combined) || oracle::weight_of(w.values(), combined) > 2 * opt_p.weight)
        tally.fail("reduce preservation: " + describe(m, w.values(), p));
    });
  }
  return tally;
}

/**
 * Recombination: phase2_iteration returns a p-avoiding FVS whatever FVSs
 * the recursion hands back. Exercised with exact, local-ratio and "take
 * the whole half" recursion; with exact recursion the result is within
 * twice the p-avoiding optimum.
 */
inline auto recombination(std::uint64_t seed, std::size_t cases) -> Tally
{
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  Tally tally;
  while (tally.cases < cases) {
    std::size_t n = 1 + gen() % 10;
    auto m = oracle::random_matrix(n, gen);
    auto t = Tournament::from_matrix(m);
    auto const w = oracle::random_weights(n, 0, 20, gen);
    Index p = static_cast<Index>(gen() % n);
    ++tally.cases;

    auto exact = [](const Tournament & sub, const WeightMap & sw, Side) { return exact_min_fvs(sub, sw); };
    auto local = [](const Tournament & sub, const WeightMap & sw, Side) { return approx3_local_ratio(sub, sw); };
    auto everything = [](const Tournament & sub, const WeightMap & sw, Side) {
      return make_solution(sub, sw, VertexSet::full(sub.size()));
    };
    auto const opt_p = oracle::brute_force(m, w.values(), p);
    auto check = [&](const Solution & s, const char * label, bool bounded) {
      auto const idx = oracle::as_indices(s.vertices);
      bool const has_p = std::find(idx.begin(), idx.end(), p) != idx.end();
      if (has_p || !oracle::is_fvs(m, idx) || oracle::weight_of(w.values(), idx) != s.weight)
        tally.fail(std::string("recombination (") + label + "): " + describe(m, w.values(), p));
      if (bounded && s.weight > 2 * opt_p.weight)
        tally.fail(std::string("recombination ratio: ") + describe(m, w.values(), p));
    };
    check(phase2_iteration(t, w, p, exact), "exact", true);
    check(phase2_iteration(t, w, p, local), "local-ratio", false);
    check(phase2_iteration(t, w, p, everything), "whole halves", false);
  }
  return tally;
}

/// Post-conditions of reduce on random (instance, pivot) pairs.
inline auto reduce_postconditions(std::uint64_t seed, std::size_t cases, std::size_t max_n) -> Tally
{
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  Tally tally;
  while (tally.cases < cases) {
    std::size_t n = 1 + gen() % max_n;
    auto m = oracle::random_matrix(n, gen);
    auto t = Tournament::from_matrix(m);
    auto const w = oracle::random_weights(n, 0, tally.cases % 2 ? 5 : 1000, gen);
    Index p = static_cast<Index>(gen() % n);
    ++tally.cases;

    auto const r = reduce(t, w, p);
    auto const label = describe(m, w.values(), p);
    std::vector<bool> gone(n, false);
    for (auto v : r.deleted)
      gone[v] = true;
    if (gone[p])
      tally.fail("pivot deleted: " + label);
    if (r.steps.size() > (n ? n - 1 : 0))
      tally.fail("too many steps: " + label);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (!gone[x] && !gone[y] && x != p && y != p && m[p][x] && m[y][p] && m[x][y])
          tally.fail("surviving cross arc: " + label);

    // Replay: each step removes exactly 2 * delta of total weight and never
    // drives a weight below zero.
    std::vector<long double> cur(w.values().begin(), w.values().end());
    long double total = std::accumulate(cur.begin(), cur.end(), 0.0L);
    for (auto const & s : r.steps) {
      if (cur[s.deleted] != static_cast<long double>(s.delta))
        tally.fail("delta is not the deleted weight: " + label);
      cur[s.charged] -= static_cast<long double>(s.delta);
      cur[s.deleted] = 0;
      if (cur[s.charged] < 0)
        tally.fail("negative weight: " + label);
      auto const next = std::accumulate(cur.begin(), cur.end(), 0.0L);
      if (total - next != 2.0L * static_cast<long double>(s.delta))
        tally.fail("step drop is not 2 delta: " + label);
      total = next;
    }
    std::size_t rank = 0;
    for (Index v = 0; v < n; ++v)
      if (!gone[v] && static_cast<long double>(r.reduced_weights[static_cast<Index>(rank++)]) != cur[v])
        tally.fail("reduced weights disagree with trace: " + label);
  }
  return tally;
}

} // namespace props
