// tfvs: generate, solve, verify and benchmark weighted feedback vertex set
// instances on tournaments.
//
// Exit codes: 0 success, 1 usage, 2 I/O or parse error, 3 verification
// failure.

#include "tfvs/tfvs.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

using namespace tfvs;

namespace {

enum Exit : int
{
  ok = 0,
  usage = 1,
  io = 2,
  verification = 3,
};

struct UsageError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

/// Solver knobs exposed on every subcommand that runs a solver.
struct ConfigFlags
{
  SolverConfig cfg;
  std::uint64_t degree_num = 8, degree_den = 9;
  std::uint64_t phase1_num = 1, phase1_den = 6;

  auto attach(CLI::App & app) -> void
  {
    app.add_option("--seed", cfg.seed, "Base seed for pivot sampling")->capture_default_str();
    app.add_option("--base-case-size", cfg.base_case_size, "Solve exactly at or below this size")
      ->capture_default_str();
    app.add_option("--pivot-iterations", cfg.pivot_iterations, "Pivot iterations per recursion node")
      ->capture_default_str();
    app.add_option("--degree-bound-num", degree_num, "Pivot degree bound numerator")->capture_default_str();
    app.add_option("--degree-bound-den", degree_den, "Pivot degree bound denominator")->capture_default_str();
    app.add_option("--phase1-fraction-num", phase1_num, "Phase-1 deletion fraction numerator")
      ->capture_default_str();
    app.add_option("--phase1-fraction-den", phase1_den, "Phase-1 deletion fraction denominator")
      ->capture_default_str();
    app.add_option("--repetitions", cfg.outer_repetitions, "Independent repetitions, best kept")
      ->capture_default_str();
    app.add_option("--exact-limit", cfg.exact_limit, "Largest instance the exact solver accepts")
      ->capture_default_str();
  }

  auto resolve() -> SolverConfig
  {
    cfg.degree_bound_fraction = {degree_num, degree_den};
    cfg.phase1_delete_fraction = {phase1_num, phase1_den};
    try {
      cfg.validate();
    } catch (const std::invalid_argument & e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

auto emit(const std::string & out_path, const std::string & text) -> void
{
  if (out_path.empty() || out_path == "-")
    std::cout << text;
  else
    write_file(out_path, text);
}

auto load_instance(const std::string & path) -> Instance
{
  try {
    return parse_instance(read_file(path));
  } catch (const ParseError & e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

auto parse_size_list(const std::string & text) -> std::vector<std::size_t>
{
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw UsageError("bad size list entry '" + item + "'");
    }
  }
  if (out.empty())
    throw UsageError("empty size list");
  return out;
}

// ---------------------------------------------------------------- gen

struct GenArgs
{
  std::size_t n = 10;
  std::string model = "uniform-random";
  std::size_t parameter = 0;
  std::string weights = "unit";
  Weight lo = 1, hi = 10;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::string dir;
  bool exact = false;
  std::size_t exact_limit = 20;
  std::string out;
};

auto run_gen(const GenArgs & a) -> int
{
  GenSpec spec;
  spec.n = a.n;
  spec.parameter = a.parameter;
  spec.lo = a.lo;
  spec.hi = a.hi;
  spec.seed = a.seed;
  try {
    spec.model = parse_model(a.model);
    if (a.weights == "unit")
      spec.weight_model = WeightModel::unit;
    else if (a.weights == "uniform-range")
      spec.weight_model = WeightModel::uniform_range;
    else
      throw std::invalid_argument("unknown weight model '" + a.weights + "'");
    spec.validate();
    if (a.exact && a.n > std::min<std::size_t>(a.exact_limit, 30))
      throw std::invalid_argument("--exact needs n <= " + std::to_string(std::min<std::size_t>(a.exact_limit, 30)));
  } catch (const std::invalid_argument & e) {
    throw UsageError(e.what());
  }

  if (a.count > 0) {
    if (a.dir.empty())
      throw UsageError("--count needs --dir");
    std::filesystem::create_directories(a.dir);
    for (std::size_t k = 0; k < a.count; ++k) {
      auto s = spec;
      s.seed = a.seed + k;
      auto const id = a.model + "-n" + std::to_string(a.n) + "-s" + std::to_string(s.seed);
      write_corpus_entry(a.dir, id, generate(s), a.exact, a.exact_limit);
    }
    std::cout << "wrote " << a.count << " instances to " << a.dir << "\n";
    return ok;
  }

  auto g = generate(spec);
  if (a.exact)
    g.metadata["exact_weight"] =
      std::to_string(exact_min_fvs(g.instance.tournament, g.instance.weights, a.exact_limit).weight);
  emit(a.out, format_instance(g.instance));
  if (!a.out.empty() && a.out != "-")
    write_file(metadata_path(a.out).string(), format_metadata(g.metadata));
  return ok;
}

// ---------------------------------------------------------------- solve

struct SolveArgs
{
  std::string instance;
  std::string algo = "approx2";
  std::string out;
  bool stats = false;
};

auto run_solve(const SolveArgs & a, ConfigFlags & flags) -> int
{
  auto const cfg = flags.resolve();
  Algorithm algo;
  try {
    algo = parse_algorithm(a.algo);
  } catch (const std::invalid_argument & e) {
    throw UsageError(e.what());
  }
  auto const inst = load_instance(a.instance);
  SolveReport report;
  try {
    report = run_solver(algo, inst, cfg);
  } catch (const SizeLimitExceeded & e) {
    throw UsageError(e.what());
  }
  if (!verify_round_trip(inst, report.solution)) {
    std::cerr << "error: solver output failed verification\n";
    return verification;
  }
  emit(a.out, format_solution(report.solution));
  if (a.stats) {
    std::cerr << "algorithm=" << to_string(report.algorithm) << "\n"
              << "weight=" << report.solution.weight << "\n"
              << "size=" << report.solution.vertices.size() << "\n"
              << "nodes=" << report.recursion.total() << "\n"
              << "depth=" << report.recursion.nodes_per_depth.size() << "\n"
              << "seed=" << report.seed_used << "\n"
              << "elapsed_ns=" << report.elapsed.count() << "\n";
  }
  return ok;
}

// ---------------------------------------------------------------- verify

auto run_verify(const std::string & instance_path, const std::string & solution_path) -> int
{
  auto const inst = load_instance(instance_path);
  Solution s;
  try {
    s = parse_solution(read_file(solution_path));
  } catch (const ParseError & e) {
    throw ParseError(solution_path + ": " + e.what(), e.line(), e.column());
  }
  auto const & t = inst.tournament;
  for (auto id : s.vertices)
    if (!t.index_of(id)) {
      std::cout << "invalid: unknown vertex " << id << "\n";
      return verification;
    }
  auto const set = t.set_of(s.vertices);
  if (!verify_fvs(t, set)) {
    std::cout << "invalid: not a feedback vertex set\n";
    return verification;
  }
  auto const actual = inst.weights.sum(set);
  if (actual != s.weight) {
    std::cout << "invalid: declared weight " << s.weight << ", actual " << actual << "\n";
    return verification;
  }
  std::cout << "valid: weight " << actual << ", " << s.vertices.size() << " vertices\n";
  return ok;
}

// ---------------------------------------------------------------- reduce

auto run_reduce(const std::string & path, VertexId pivot, bool trace, const std::string & out) -> int
{
  auto const inst = load_instance(path);
  auto const & t = inst.tournament;
  auto const p = t.index_of(pivot);
  if (!p)
    throw UsageError("pivot " + std::to_string(pivot) + " is not a vertex");
  auto const r = reduce(t, inst.weights, *p);

  std::ostringstream text;
  if (trace)
    for (auto const & s : r.steps)
      text << "step deleted=" << t.id(s.deleted) << " charged=" << t.id(s.charged) << " delta=" << s.delta << "\n";
  text << "deleted";
  for (auto v : r.deleted)
    text << ' ' << t.id(v);
  text << "\nsurvivors";
  std::size_t rank = 0;
  r.survivors.for_each([&](Index v) { text << ' ' << t.id(v) << ':' << r.reduced_weights[rank++]; });
  text << "\n";
  emit(out, text.str());
  return ok;
}

// ---------------------------------------------------------------- estimate-success

struct EstimateArgs
{
  std::string corpus;
  std::size_t trials = 200;
  std::size_t threads = 1;
  std::string out;
};

auto run_estimate(const EstimateArgs & a, ConfigFlags & flags) -> int
{
  auto const cfg = flags.resolve();
  if (a.trials == 0)
    throw UsageError("--trials must be positive");
  auto const corpus = load_corpus(a.corpus);
  auto const report = estimate_success(corpus, a.trials, cfg.seed, cfg, a.threads);
  emit(a.out, report.to_text());
  if (report.summary.at("all_verified") != "1") {
    std::cerr << "error: a solver output failed verification\n";
    return verification;
  }
  if (report.summary.at("flagged") != "0") {
    std::cerr << "warning: " << report.summary.at("flagged") << " instance(s) below success rate "
              << success_flag_threshold << "\n";
    return verification;
  }
  return ok;
}

// ---------------------------------------------------------------- bench

struct BenchArgs
{
  std::string n_list = "50,100,200";
  std::size_t reps = 3;
  std::string model = "uniform-random";
  std::size_t parameter = 0;
  bool reduce_only = false;
  std::string corpus;
  std::string algos = "exact,approx2,approx2-det,approx3";
  std::size_t threads = 1;
  bool no_timing = false;
  std::string out;
};

auto run_bench(const BenchArgs & a, ConfigFlags & flags) -> int
{
  auto const cfg = flags.resolve();
  if (a.reduce_only) {
    auto const sizes = parse_size_list(a.n_list);
    auto const timing = bench_reduce(sizes, std::max<std::size_t>(1, a.reps), cfg.seed);
    std::ostringstream text;
    text << "mode=reduce\ncoefficient=" << timing.coefficient << "\nmax_deviation=" << timing.max_deviation
         << "\nexponent=" << timing.exponent << "\n\nn,seconds,model_seconds\n";
    for (std::size_t i = 0; i < sizes.size(); ++i)
      text << sizes[i] << ',' << timing.seconds[i] << ','
           << timing.coefficient * static_cast<double>(sizes[i]) * static_cast<double>(sizes[i]) << "\n";
    emit(a.out, text.str());
    return ok;
  }

  BenchReport report;
  if (!a.corpus.empty()) {
    std::vector<Algorithm> algos;
    std::stringstream ss(a.algos);
    std::string tag;
    try {
      while (std::getline(ss, tag, ','))
        algos.push_back(parse_algorithm(tag));
    } catch (const std::invalid_argument & e) {
      throw UsageError(e.what());
    }
    if (algos.empty())
      throw UsageError("no algorithms given");
    try {
      report = compare_algorithms(load_corpus(a.corpus), algos, cfg.seed, cfg, a.threads);
    } catch (const SizeLimitExceeded & e) {
      throw UsageError(e.what());
    }
  } else {
    ScalingSpec spec;
    spec.sizes = parse_size_list(a.n_list);
    spec.reps = a.reps;
    spec.parameter = a.parameter;
    spec.base_seed = cfg.seed;
    try {
      spec.model = parse_model(a.model);
    } catch (const std::invalid_argument & e) {
      throw UsageError(e.what());
    }
    report = bench_scaling(spec, cfg, a.threads);
  }
  emit(a.out, report.to_text(!a.no_timing));
  for (auto const & row : report.rows)
    if (!row.verified) {
      std::cerr << "error: solver output failed verification on " << row.instance_id << "\n";
      return verification;
    }
  return ok;
}

} // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Weighted feedback vertex set in tournaments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tfvs 1.0");

  GenArgs gen;
  auto * gen_cmd = app.add_subcommand("gen", "Generate an instance or a corpus directory");
  gen_cmd->add_option("--n", gen.n, "Vertex count")->capture_default_str();
  gen_cmd->add_option("--model", gen.model, "uniform-random | planted | near-transitive")->capture_default_str();
  gen_cmd->add_option("--param", gen.parameter, "Planted vertex count or number of flipped arcs")
    ->capture_default_str();
  gen_cmd->add_option("--weights", gen.weights, "unit | uniform-range")->capture_default_str();
  gen_cmd->add_option("--lo", gen.lo, "Lowest weight for uniform-range")->capture_default_str();
  gen_cmd->add_option("--hi", gen.hi, "Highest weight for uniform-range")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Write this many instances (seeds seed, seed+1, ...) to --dir");
  gen_cmd->add_option("--dir", gen.dir, "Corpus directory for --count");
  gen_cmd->add_flag("--exact", gen.exact, "Store the exact optimum as exact_weight in the metadata");
  gen_cmd->add_option("--exact-limit", gen.exact_limit, "Largest n for --exact")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Instance file (metadata goes to <out>.meta); stdout if omitted");

  SolveArgs solve;
  ConfigFlags solve_flags;
  auto * solve_cmd = app.add_subcommand("solve", "Solve an instance and write the solution");
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
  solve_cmd->add_option("--algo", solve.algo, "exact | approx2 | approx2-det | approx3")->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "Solution file; stdout if omitted");
  solve_cmd->add_flag("--stats", solve.stats, "Print run statistics to stderr");
  solve_flags.attach(*solve_cmd);

  std::string verify_instance, verify_solution;
  auto * verify_cmd = app.add_subcommand("verify", "Check a solution file against an instance");
  verify_cmd->add_option("instance", verify_instance, "Instance file")->required();
  verify_cmd->add_option("solution", verify_solution, "Solution file")->required();

  std::string reduce_instance, reduce_out;
  VertexId reduce_pivot = 0;
  bool reduce_trace = false;
  auto * reduce_cmd = app.add_subcommand("reduce", "Run the pivot reduction and print its result");
  reduce_cmd->add_option("instance", reduce_instance, "Instance file")->required();
  reduce_cmd->add_option("--pivot", reduce_pivot, "Pivot vertex id")->required();
  reduce_cmd->add_flag("--trace", reduce_trace, "Print every (deleted, charged, delta) step");
  reduce_cmd->add_option("--out", reduce_out, "Output file; stdout if omitted");

  EstimateArgs estimate;
  ConfigFlags estimate_flags;
  auto * estimate_cmd =
    app.add_subcommand("estimate-success", "Empirical probability that approx2 is within twice the optimum");
  estimate_cmd->add_option("--corpus", estimate.corpus, "Corpus directory with exact_weight metadata")->required();
  estimate_cmd->add_option("--trials", estimate.trials, "Seeds per instance")->capture_default_str();
  estimate_cmd->add_option("--threads", estimate.threads, "Worker threads")->capture_default_str();
  estimate_cmd->add_option("--out", estimate.out, "Report file; stdout if omitted");
  estimate_flags.attach(*estimate_cmd);

  BenchArgs bench;
  ConfigFlags bench_flags;
  auto * bench_cmd = app.add_subcommand("bench", "Scaling, reduce timing or algorithm comparison");
  bench_cmd->add_option("--n-list", bench.n_list, "Comma-separated sizes")->capture_default_str();
  bench_cmd->add_option("--reps", bench.reps, "Instances (or timing samples) per size")->capture_default_str();
  bench_cmd->add_option("--model", bench.model, "Generator model for scaling runs")->capture_default_str();
  bench_cmd->add_option("--param", bench.parameter, "Generator parameter for scaling runs")->capture_default_str();
  bench_cmd->add_flag("--reduce-only", bench.reduce_only, "Time the reduction alone and fit c*n^2");
  bench_cmd->add_option("--corpus", bench.corpus, "Compare algorithms on this corpus instead");
  bench_cmd->add_option("--algos", bench.algos, "Algorithms for --corpus")->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Worker threads")->capture_default_str();
  bench_cmd->add_flag("--no-timing", bench.no_timing, "Leave the elapsed_ns column empty");
  bench_cmd->add_option("--out", bench.out, "Report file; stdout if omitted");
  bench_flags.attach(*bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    auto const code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*gen_cmd)
      return run_gen(gen);
    if (*solve_cmd)
      return run_solve(solve, solve_flags);
    if (*verify_cmd)
      return run_verify(verify_instance, verify_solution);
    if (*reduce_cmd)
      return run_reduce(reduce_instance, reduce_pivot, reduce_trace, reduce_out);
    if (*estimate_cmd)
      return run_estimate(estimate, estimate_flags);
    if (*bench_cmd)
      return run_bench(bench, bench_flags);
  } catch (const UsageError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const ParseError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return io;
  } catch (const IoError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return io;
  } catch (const MissingGroundTruth & e) {
    std::cerr << "error: " << e.what() << "\n";
    return io;
  } catch (const std::filesystem::filesystem_error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return io;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return io;
  }
  return usage;
}
