#pragma once

#include "tfvs/approx.hpp"
#include "tfvs/exact.hpp"
#include "tfvs/generators.hpp"
#include "tfvs/io.hpp"
#include "tfvs/local_ratio.hpp"
#include "tfvs/reduce.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <mutex>
#include <numeric>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace tfvs {

/// Success rates below this are flagged: 1/2 minus three binomial standard
/// deviations at 200 trials.
inline constexpr double success_flag_threshold = 0.43;

class MissingGroundTruth : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct CorpusEntry
{
  std::string id;
  Instance instance;
  Metadata metadata;
  std::optional<Weight> exact_weight;
};

inline auto instance_path(const std::filesystem::path & dir, const std::string & id) -> std::filesystem::path
{
  return dir / (id + ".tfvs");
}

inline auto metadata_path(const std::filesystem::path & instance) -> std::filesystem::path
{
  return std::filesystem::path(instance.string() + ".meta");
}

/// Every `*.tfvs` file in `dir`, with its `.meta` sidecar when present,
/// sorted by id.
inline auto load_corpus(const std::filesystem::path & dir) -> std::vector<CorpusEntry>
{
  if (!std::filesystem::is_directory(dir))
    throw IoError("not a directory: " + dir.string());
  std::vector<CorpusEntry> out;
  for (auto const & e : std::filesystem::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".tfvs")
      continue;
    CorpusEntry entry;
    entry.id = e.path().stem().string();
    try {
      entry.instance = parse_instance(read_file(e.path().string()));
    } catch (const ParseError & err) {
      throw ParseError(e.path().string() + ": " + err.what(), err.line(), err.column());
    }
    auto meta = metadata_path(e.path());
    if (std::filesystem::exists(meta)) {
      entry.metadata = parse_metadata(read_file(meta.string()));
      if (auto it = entry.metadata.find("exact_weight"); it != entry.metadata.end())
        entry.exact_weight = std::stoull(it->second);
    }
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(), [](auto const & a, auto const & b) { return a.id < b.id; });
  return out;
}

/// Writes `<dir>/<id>.tfvs` and its sidecar; records the exact optimum when
/// `with_exact` is set.
inline auto write_corpus_entry(const std::filesystem::path & dir, const std::string & id, GeneratedInstance g,
                               bool with_exact, std::size_t exact_limit = 20) -> void
{
  if (with_exact) {
    auto const opt = exact_min_fvs(g.instance.tournament, g.instance.weights, exact_limit);
    g.metadata["exact_weight"] = std::to_string(opt.weight);
  }
  auto const path = instance_path(dir, id);
  write_file(path.string(), format_instance(g.instance));
  write_file(metadata_path(path).string(), format_metadata(g.metadata));
}

/// Runs one solver and wraps the result in a report.
inline auto run_solver(Algorithm algo, const Instance & inst, const SolverConfig & cfg) -> SolveReport
{
  auto const & t = inst.tournament;
  auto const & w = inst.weights;
  switch (algo) {
    case Algorithm::approx2: return approx2_randomized(t, w, cfg);
    case Algorithm::approx2_det: return approx2_derandomized(t, w, cfg);
    case Algorithm::exact:
    case Algorithm::approx3: {
      auto const start = std::chrono::steady_clock::now();
      SolveReport r;
      r.algorithm = algo;
      r.solution = algo == Algorithm::exact ? exact_min_fvs(t, w, cfg.exact_limit) : approx3_local_ratio(t, w);
      r.recursion.visit(0);
      r.seed_used = cfg.seed;
      r.elapsed = std::chrono::steady_clock::now() - start;
      return r;
    }
  }
  throw std::logic_error("unhandled algorithm");
}

/// Writes the solution through its file format, reads it back and checks
/// feasibility and the declared weight.
inline auto verify_round_trip(const Instance & inst, const Solution & s) -> bool
{
  auto const back = parse_solution(format_solution(s));
  auto const set = inst.tournament.set_of(back.vertices);
  return back == s && verify_fvs(inst.tournament, set) && inst.weights.sum(set) == back.weight;
}

struct BenchRow
{
  std::string instance_id;
  std::size_t n = 0;
  Algorithm algorithm = Algorithm::approx2;
  Weight weight = 0;
  std::optional<Weight> exact;
  std::uint64_t elapsed_ns = 0;
  std::uint64_t nodes = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  std::optional<double> success_rate;
  std::optional<long double> node_ceiling;
  bool verified = false;

  /// weight / exact; 1 when both are zero.
  auto ratio() const -> std::optional<double>
  {
    if (!exact)
      return std::nullopt;
    if (*exact == 0)
      return weight == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    return static_cast<double>(weight) / static_cast<double>(*exact);
  }
};

struct BenchReport
{
  std::vector<BenchRow> rows;
  Metadata summary;

  /// key=value summary, a blank line, then a CSV table. Timing columns are
  /// blank unless `include_timing`, which makes the text reproducible.
  auto to_text(bool include_timing = true) const -> std::string
  {
    std::string out = format_metadata(summary);
    out += "\ninstance,n,algorithm,weight,exact,ratio,success_rate,trials,nodes,node_ceiling,seed,verified,elapsed_ns\n";
    char buf[64];
    for (auto const & r : rows) {
      out += r.instance_id + "," + std::to_string(r.n) + "," + std::string(to_string(r.algorithm)) + "," +
             std::to_string(r.weight) + ",";
      if (r.exact)
        out += std::to_string(*r.exact);
      out += ",";
      if (auto q = r.ratio()) {
        std::snprintf(buf, sizeof buf, "%.6f", *q);
        out += buf;
      }
      out += ",";
      if (r.success_rate) {
        std::snprintf(buf, sizeof buf, "%.4f", *r.success_rate);
        out += buf;
      }
      out += "," + std::to_string(r.trials) + "," + std::to_string(r.nodes) + ",";
      if (r.node_ceiling) {
        std::snprintf(buf, sizeof buf, "%.6Le", *r.node_ceiling);
        out += buf;
      }
      out += "," + std::to_string(r.seed) + "," + (r.verified ? "1" : "0") + ",";
      if (include_timing)
        out += std::to_string(r.elapsed_ns);
      out += "\n";
    }
    return out;
  }
};

namespace detail {

inline auto fnv1a(std::string_view s) -> std::uint64_t
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Calls f(i) for i in [0, count) on up to `threads` workers.
template <typename F>
auto parallel_for(std::size_t count, std::size_t threads, F && f) -> void
{
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i)
      f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < threads; ++k)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error)
            error = std::current_exception();
        }
      }
    });
  for (auto & t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

inline auto format_double(double x) -> std::string
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

} // namespace detail

/// Seed for trial `trial` on instance `id`.
inline auto trial_seed(std::uint64_t base_seed, std::string_view id, std::uint64_t trial) -> std::uint64_t
{
  return derive_key(derive_key(base_seed, detail::fnv1a(id)), trial);
}

/**
 * Runs approx2 `trials` times per corpus instance and reports the fraction
 * of runs within twice the stored optimum. Rows are in corpus order, so the
 * report does not depend on `threads`.
 */
inline auto estimate_success(const std::vector<CorpusEntry> & corpus, std::size_t trials, std::uint64_t base_seed,
                             SolverConfig cfg, std::size_t threads = 1) -> BenchReport
{
  for (auto const & e : corpus)
    if (!e.exact_weight)
      throw MissingGroundTruth("instance " + e.id + " has no exact_weight in its metadata");
  if (trials == 0)
    throw std::invalid_argument("trials must be positive");

  BenchReport report;
  report.rows.resize(corpus.size());
  detail::parallel_for(corpus.size(), threads, [&](std::size_t i) {
    auto const & e = corpus[i];
    auto local = cfg;
    BenchRow row;
    row.instance_id = e.id;
    row.n = e.instance.tournament.size();
    row.algorithm = Algorithm::approx2;
    row.exact = e.exact_weight;
    row.trials = trials;
    row.seed = trial_seed(base_seed, e.id, 0);
    row.verified = true;
    std::uint64_t successes = 0;
    for (std::size_t k = 0; k < trials; ++k) {
      local.seed = trial_seed(base_seed, e.id, k);
      auto const r = approx2_randomized(e.instance.tournament, e.instance.weights, local);
      row.verified = row.verified && verify_round_trip(e.instance, r.solution);
      if (r.solution.weight <= 2 * *e.exact_weight)
        ++successes;
      row.weight = std::max(row.weight, r.solution.weight);
      row.nodes += r.recursion.total();
      row.elapsed_ns += static_cast<std::uint64_t>(r.elapsed.count());
    }
    row.success_rate = static_cast<double>(successes) / static_cast<double>(trials);
    report.rows[i] = std::move(row);
  });

  double min_rate = 1.0, sum_rate = 0.0, max_ratio = 1.0;
  std::size_t flagged = 0;
  bool all_verified = true;
  for (auto const & r : report.rows) {
    min_rate = std::min(min_rate, *r.success_rate);
    sum_rate += *r.success_rate;
    max_ratio = std::max(max_ratio, r.ratio().value_or(1.0));
    flagged += *r.success_rate < success_flag_threshold;
    all_verified = all_verified && r.verified;
  }
  report.summary["mode"] = "estimate-success";
  report.summary["instances"] = std::to_string(report.rows.size());
  report.summary["trials"] = std::to_string(trials);
  report.summary["base_seed"] = std::to_string(base_seed);
  report.summary["flag_threshold"] = detail::format_double(success_flag_threshold);
  report.summary["flagged"] = std::to_string(flagged);
  report.summary["min_success_rate"] = detail::format_double(report.rows.empty() ? 1.0 : min_rate);
  report.summary["mean_success_rate"] =
    detail::format_double(report.rows.empty() ? 1.0 : sum_rate / static_cast<double>(report.rows.size()));
  report.summary["max_ratio_worst_trial"] = detail::format_double(max_ratio);
  report.summary["all_verified"] = all_verified ? "1" : "0";
  return report;
}

/// Runs each algorithm once per corpus instance.
inline auto compare_algorithms(const std::vector<CorpusEntry> & corpus, const std::vector<Algorithm> & algorithms,
                               std::uint64_t base_seed, SolverConfig cfg, std::size_t threads = 1) -> BenchReport
{
  BenchReport report;
  report.rows.resize(corpus.size() * algorithms.size());
  detail::parallel_for(report.rows.size(), threads, [&](std::size_t k) {
    auto const & e = corpus[k / algorithms.size()];
    auto const algo = algorithms[k % algorithms.size()];
    auto local = cfg;
    local.seed = trial_seed(base_seed, e.id, 0);
    auto const r = run_solver(algo, e.instance, local);
    BenchRow row;
    row.instance_id = e.id;
    row.n = e.instance.tournament.size();
    row.algorithm = algo;
    row.weight = r.solution.weight;
    row.exact = e.exact_weight;
    row.seed = local.seed;
    row.nodes = r.recursion.total();
    row.elapsed_ns = static_cast<std::uint64_t>(r.elapsed.count());
    row.verified = verify_round_trip(e.instance, r.solution);
    report.rows[k] = std::move(row);
  });

  report.summary["mode"] = "compare";
  report.summary["instances"] = std::to_string(corpus.size());
  report.summary["base_seed"] = std::to_string(base_seed);
  for (auto algo : algorithms) {
    double sum = 0, worst = 1;
    std::size_t counted = 0;
    bool verified = true;
    for (auto const & r : report.rows) {
      if (r.algorithm != algo)
        continue;
      verified = verified && r.verified;
      if (auto q = r.ratio()) {
        sum += *q;
        worst = std::max(worst, *q);
        ++counted;
      }
    }
    auto const key = std::string(to_string(algo));
    report.summary[key + ".verified"] = verified ? "1" : "0";
    if (counted) {
      report.summary[key + ".mean_ratio"] = detail::format_double(sum / static_cast<double>(counted));
      report.summary[key + ".max_ratio"] = detail::format_double(worst);
    }
  }
  return report;
}

/**
 * Worst-case node count of the approx2 recursion tree implied by its size
 * recurrence: one node, plus the phase-1 child on n - |D| vertices, plus two
 * children on at most floor(beta * n) vertices per pivot iteration.
 */
inline auto node_ceiling(std::size_t n, const SolverConfig & cfg) -> long double
{
  std::vector<long double> memo(n + 1, 0.0L);
  for (std::size_t m = 0; m <= n; ++m) {
    if (m <= cfg.base_case_size) {
      memo[m] = 1.0L;
      continue;
    }
    auto const d = std::min(m, std::max<std::size_t>(1, cfg.phase1_delete_fraction.floor_of(m)));
    auto const half = cfg.degree_bound_fraction.floor_of(m);
    memo[m] = 1.0L + memo[m - d] + 2.0L * static_cast<long double>(cfg.pivot_iterations) * memo[half];
  }
  return memo[n];
}

/// Least-squares slope of log(y) against log(x).
inline auto log_log_slope(const std::vector<double> & x, const std::vector<double> & y) -> double
{
  auto const k = static_cast<double>(x.size());
  if (x.size() < 2)
    return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto lx = std::log(x[i]), ly = std::log(std::max(y[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  auto const denom = k * sxx - sx * sx;
  return denom == 0 ? 0.0 : (k * sxy - sx * sy) / denom;
}

struct ScalingSpec
{
  std::vector<std::size_t> sizes;
  std::size_t reps = 1;
  Model model = Model::uniform_random;
  std::size_t parameter = 0;
  std::uint64_t base_seed = 0;
};

/**
 * approx2 on generated instances of growing size. Node counts are checked
 * against node_ceiling; the summary carries the fitted growth exponent of
 * the mean node count.
 */
inline auto bench_scaling(const ScalingSpec & spec, SolverConfig cfg, std::size_t threads = 1) -> BenchReport
{
  if (!std::is_sorted(spec.sizes.begin(), spec.sizes.end()))
    throw std::invalid_argument("size list must be ascending");
  BenchReport report;
  report.rows.resize(spec.sizes.size() * spec.reps);
  detail::parallel_for(report.rows.size(), threads, [&](std::size_t k) {
    auto const n = spec.sizes[k / spec.reps];
    auto const rep = k % spec.reps;
    GenSpec g{n, spec.model, spec.parameter, WeightModel::uniform_range, 1, 10,
              derive_key(spec.base_seed, (std::uint64_t{n} << 20) | rep)};
    auto const inst = generate(g).instance;
    auto local = cfg;
    local.seed = derive_key(g.seed, 1);
    auto const r = approx2_randomized(inst.tournament, inst.weights, local);
    BenchRow row;
    row.instance_id = "n" + std::to_string(n) + "-r" + std::to_string(rep);
    row.n = n;
    row.algorithm = Algorithm::approx2;
    row.weight = r.solution.weight;
    row.seed = local.seed;
    row.nodes = r.recursion.total();
    row.node_ceiling = node_ceiling(n, cfg);
    row.elapsed_ns = static_cast<std::uint64_t>(r.elapsed.count());
    row.verified = verify_round_trip(inst, r.solution);
    report.rows[k] = std::move(row);
  });

  std::vector<double> xs, ys;
  bool within = true, monotone = true, verified = true;
  double previous = 0;
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    double mean = 0;
    for (std::size_t r = 0; r < spec.reps; ++r) {
      auto const & row = report.rows[i * spec.reps + r];
      mean += static_cast<double>(row.nodes);
      within = within && static_cast<long double>(row.nodes) <= *row.node_ceiling;
      verified = verified && row.verified;
    }
    mean /= static_cast<double>(std::max<std::size_t>(1, spec.reps));
    monotone = monotone && mean >= previous;
    previous = mean;
    xs.push_back(static_cast<double>(spec.sizes[i]));
    ys.push_back(mean);
  }
  report.summary["mode"] = "scaling";
  report.summary["model"] = to_string(spec.model);
  report.summary["reps"] = std::to_string(spec.reps);
  report.summary["base_seed"] = std::to_string(spec.base_seed);
  report.summary["node_exponent"] = detail::format_double(log_log_slope(xs, ys));
  report.summary["within_ceiling"] = within ? "1" : "0";
  report.summary["monotone_nodes"] = monotone ? "1" : "0";
  report.summary["all_verified"] = verified ? "1" : "0";
  return report;
}

struct ReduceTiming
{
  std::vector<std::size_t> sizes;
  /// Best observed seconds per reduce call, per size.
  std::vector<double> seconds;
  /// c in t ~ c * n^2 (geometric mean of t / n^2).
  double coefficient = 0;
  /// Largest factor by which any size deviates from c * n^2.
  double max_deviation = 0;
  double exponent = 0;
};

/// Times reduce on uniform-random instances with a pivot of median
/// out-degree and fits t = c * n^2.
inline auto bench_reduce(const std::vector<std::size_t> & sizes, std::size_t reps, std::uint64_t seed) -> ReduceTiming
{
  using clock = std::chrono::steady_clock;
  ReduceTiming out;
  out.sizes = sizes;
  for (auto n : sizes) {
    auto const inst =
      generate(GenSpec{n, Model::uniform_random, 0, WeightModel::uniform_range, 1, 1000, derive_key(seed, n)})
        .instance;
    std::vector<Index> by_degree(n);
    std::iota(by_degree.begin(), by_degree.end(), Index{0});
    std::sort(by_degree.begin(), by_degree.end(), [&](Index a, Index b) {
      return inst.tournament.out_degree(a) < inst.tournament.out_degree(b);
    });
    auto const p = by_degree[n / 2];

    // Batch calls so each sample spans at least ~2ms.
    std::size_t batch = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < reps; ++r) {
      while (true) {
        auto const start = clock::now();
        std::size_t sink = 0;
        for (std::size_t b = 0; b < batch; ++b)
          sink += reduce(inst.tournament, inst.weights, p).deleted.size();
        std::chrono::duration<double> const took = clock::now() - start;
        if (sink == std::numeric_limits<std::size_t>::max())
          std::abort();
        if (took.count() < 2e-3 && batch < (std::size_t{1} << 20)) {
          batch *= 2;
          continue;
        }
        best = std::min(best, took.count() / static_cast<double>(batch));
        break;
      }
    }
    out.seconds.push_back(best);
  }

  double log_sum = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    log_sum += std::log(out.seconds[i] / (static_cast<double>(sizes[i]) * static_cast<double>(sizes[i])));
  out.coefficient = std::exp(log_sum / static_cast<double>(std::max<std::size_t>(1, sizes.size())));
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    auto const model = out.coefficient * static_cast<double>(sizes[i]) * static_cast<double>(sizes[i]);
    auto const ratio = out.seconds[i] / model;
    out.max_deviation = std::max(out.max_deviation, std::max(ratio, 1.0 / ratio));
  }
  std::vector<double> xs(sizes.begin(), sizes.end());
  out.exponent = log_log_slope(xs, out.seconds);
  return out;
}

} // namespace tfvs
