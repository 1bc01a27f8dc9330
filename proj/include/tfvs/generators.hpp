#pragma once

#include "tfvs/io.hpp"
#include "tfvs/rng.hpp"
#include "tfvs/tournament.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfvs {

enum class Model
{
  uniform_random,
  planted,
  near_transitive,
};

enum class WeightModel
{
  unit,
  uniform_range,
};

inline auto to_string(Model m) -> std::string
{
  switch (m) {
    case Model::uniform_random: return "uniform-random";
    case Model::planted: return "planted";
    case Model::near_transitive: return "near-transitive";
  }
  return "?";
}

inline auto parse_model(std::string_view s) -> Model
{
  for (auto m : {Model::uniform_random, Model::planted, Model::near_transitive})
    if (to_string(m) == s)
      return m;
  throw std::invalid_argument("unknown model '" + std::string(s) + "'");
}

struct GenSpec
{
  std::size_t n = 1;
  Model model = Model::uniform_random;
  /// Planted vertex count k, or number of flipped arcs; unused otherwise.
  std::size_t parameter = 0;
  WeightModel weight_model = WeightModel::unit;
  Weight lo = 1;
  Weight hi = 1;
  std::uint64_t seed = 0;

  auto validate() const -> void
  {
    auto fail = [](const std::string & what) { throw std::invalid_argument("invalid generator spec: " + what); };
    if (n < 1)
      fail("n must be >= 1");
    if (model == Model::planted && parameter > n)
      fail("planted count exceeds n");
    if (model == Model::near_transitive && parameter > n * (n - 1) / 2)
      fail("flip count exceeds number of arcs");
    if (weight_model == WeightModel::uniform_range) {
      if (lo > hi)
        fail("lo > hi");
      if (hi - lo == std::numeric_limits<Weight>::max())
        fail("weight range too wide");
      if (hi > 0 && n > std::numeric_limits<Weight>::max() / hi)
        fail("weight range may overflow the total");
    }
  }
};

struct GeneratedInstance
{
  Instance instance;
  /// Weight of a vertex set whose removal leaves a transitive tournament,
  /// when the model provides one.
  std::optional<Weight> certificate;
  std::vector<VertexId> certificate_vertices;
  Metadata metadata;
};

namespace detail {

inline auto coin(std::mt19937_64 & gen) -> bool { return (gen() >> 63) != 0; }

/// k distinct values from [0, bound), ascending (Floyd's sampling).
inline auto sample_distinct(std::mt19937_64 & gen, std::uint64_t bound, std::size_t k) -> std::vector<std::uint64_t>
{
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = bound - k; j < bound; ++j) {
    auto t = CounterRng::uniform_below(gen, j + 1);
    if (!chosen.insert(t).second)
      chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

/// Pair index -> (i, j) with i < j, row-major over the upper triangle.
inline auto unrank_pair(std::uint64_t r, std::size_t n) -> std::pair<Index, Index>
{
  Index i = 0;
  std::uint64_t row = n - 1;
  while (r >= row) {
    r -= row;
    --row;
    ++i;
  }
  return {i, static_cast<Index>(i + 1 + r)};
}

} // namespace detail

/// Deterministic in `spec` (mt19937_64 is specified bit-exactly).
inline auto generate(const GenSpec & spec) -> GeneratedInstance
{
  spec.validate();
  std::mt19937_64 gen(spec.seed);
  auto const n = spec.n;

  GeneratedInstance out;
  auto t = Tournament::transitive(n);
  std::vector<Index> certificate_set;

  switch (spec.model) {
    case Model::uniform_random:
      for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
          if (detail::coin(gen))
            t.orient(j, i);
      break;
    case Model::planted: {
      auto const picks = detail::sample_distinct(gen, n, spec.parameter);
      VertexSet planted(n);
      for (auto v : picks)
        planted.insert(static_cast<Index>(v));
      planted.for_each([&](Index v) {
        for (Index u = 0; u < n; ++u) {
          if (u == v || (planted.contains(u) && u < v))
            continue;
          if (detail::coin(gen))
            t.orient(u, v);
          else
            t.orient(v, u);
        }
      });
      certificate_set = planted.to_vector();
      break;
    }
    case Model::near_transitive: {
      auto const pairs = detail::sample_distinct(gen, std::uint64_t{n} * (n - 1) / 2, spec.parameter);
      std::vector<std::pair<Index, Index>> flipped;
      for (auto r : pairs) {
        auto [i, j] = detail::unrank_pair(r, n);
        t.orient(j, i);
        flipped.emplace_back(i, j);
      }
      // Endpoint pairs for now; the cover is picked once weights exist.
      for (auto [i, j] : flipped) {
        certificate_set.push_back(i);
        certificate_set.push_back(j);
      }
      break;
    }
  }

  std::vector<Weight> weights(n, 1);
  if (spec.weight_model == WeightModel::uniform_range)
    for (auto & x : weights)
      x = spec.lo + CounterRng::uniform_below(gen, spec.hi - spec.lo + 1);
  out.instance = Instance{std::move(t), WeightMap(std::move(weights))};
  auto const & w = out.instance.weights;

  if (spec.model == Model::near_transitive) {
    // One endpoint per flipped arc, the lighter (smaller id on ties).
    VertexSet cover(n);
    for (std::size_t k = 0; k + 1 < certificate_set.size(); k += 2) {
      auto i = certificate_set[k], j = certificate_set[k + 1];
      if (cover.contains(i) || cover.contains(j))
        continue;
      cover.insert(w[i] <= w[j] ? i : j);
    }
    certificate_set = cover.to_vector();
  }

  if (spec.model != Model::uniform_random) {
    VertexSet cert(n);
    for (auto v : certificate_set)
      cert.insert(v);
    out.certificate = w.sum(cert);
    out.certificate_vertices = out.instance.tournament.ids_of(cert);
    out.metadata["certificate_upper_bound"] = std::to_string(*out.certificate);
  }

  out.metadata["model"] = to_string(spec.model);
  out.metadata["n"] = std::to_string(n);
  out.metadata["parameter"] = std::to_string(spec.parameter);
  out.metadata["seed"] = std::to_string(spec.seed);
  out.metadata["weights"] = spec.weight_model == WeightModel::unit
                              ? std::string("unit")
                              : "uniform-range:" + std::to_string(spec.lo) + ":" + std::to_string(spec.hi);
  return out;
}

} // namespace tfvs
