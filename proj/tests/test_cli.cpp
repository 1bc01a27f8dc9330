#include "tfvs/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test
{
protected:
  void SetUp() override
  {
    dir = fs::temp_directory_path() / ("tfvs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  auto path(const std::string & name) const -> std::string { return (dir / name).string(); }

  /// Runs the binary with `args`; stdout goes to `stdout_file` (or is
  /// discarded). Returns the exit status.
  auto run(const std::string & args, const std::string & stdout_file = "") const -> int
  {
    auto const sink = stdout_file.empty() ? std::string("/dev/null") : path(stdout_file);
    auto const cmd = std::string(TFVS_CLI_PATH) + " " + args + " >" + sink + " 2>" + path("stderr.txt");
    auto const status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  auto read(const std::string & name) const -> std::string { return tfvs::read_file(path(name)); }

  fs::path dir;
};

} // namespace

TEST_F(Cli, GenSolveVerify)
{
  ASSERT_EQ(run("gen --n 14 --model planted --param 5 --weights uniform-range --lo 1 --hi 9 --seed 3 --out " +
                path("a.tfvs")),
            0);
  auto meta = tfvs::parse_metadata(read("a.tfvs.meta"));
  EXPECT_EQ(meta.at("model"), "planted");
  EXPECT_EQ(tfvs::parse_instance(read("a.tfvs")).tournament.size(), 14u);

  for (auto algo : {"exact", "approx2", "approx2-det", "approx3"}) {
    ASSERT_EQ(run("solve " + path("a.tfvs") + " --algo " + algo + " --seed 5 --out " + path("a.sol")), 0) << algo;
    EXPECT_EQ(run("verify " + path("a.tfvs") + " " + path("a.sol"), "verify.txt"), 0);
    EXPECT_EQ(read("verify.txt").rfind("valid", 0), 0u);
  }

  // Same seed, same bytes.
  ASSERT_EQ(run("solve " + path("a.tfvs") + " --seed 9", "s1.txt"), 0);
  ASSERT_EQ(run("solve " + path("a.tfvs") + " --seed 9", "s2.txt"), 0);
  EXPECT_EQ(read("s1.txt"), read("s2.txt"));
}

TEST_F(Cli, VerifyRejectsBadSolutions)
{
  tfvs::write_file(path("c3.tfvs"), "3\n1 1 1\n010\n001\n100\n");
  tfvs::write_file(path("empty.sol"), "0\n0\n");
  tfvs::write_file(path("wrong_weight.sol"), "2\n1\n0\n");
  tfvs::write_file(path("unknown.sol"), "1\n1\n5\n");
  tfvs::write_file(path("good.sol"), "1\n1\n2\n");
  tfvs::write_file(path("garbled.sol"), "1\nx\n");
  EXPECT_EQ(run("verify " + path("c3.tfvs") + " " + path("good.sol")), 0);
  EXPECT_EQ(run("verify " + path("c3.tfvs") + " " + path("empty.sol")), 3);
  EXPECT_EQ(run("verify " + path("c3.tfvs") + " " + path("wrong_weight.sol")), 3);
  EXPECT_EQ(run("verify " + path("c3.tfvs") + " " + path("unknown.sol")), 3);
  EXPECT_EQ(run("verify " + path("c3.tfvs") + " " + path("garbled.sol")), 2);
}

TEST_F(Cli, ErrorExitCodes)
{
  tfvs::write_file(path("bad.tfvs"), "3\n1 1 1\n011\n101\n100\n");
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("solve"), 1);
  EXPECT_EQ(run("solve " + path("missing.tfvs")), 2);
  EXPECT_EQ(run("solve " + path("bad.tfvs")), 2);
  EXPECT_NE(read("stderr.txt").find("line 3, column 2: symmetric pair (0,1)"), std::string::npos);

  tfvs::write_file(path("c3.tfvs"), "3\n1 1 1\n010\n001\n100\n");
  EXPECT_EQ(run("solve " + path("c3.tfvs") + " --algo nope"), 1);
  EXPECT_EQ(run("solve " + path("c3.tfvs") + " --degree-bound-num 1 --degree-bound-den 2"), 1);
  EXPECT_EQ(run("solve " + path("c3.tfvs") + " --base-case-size 2"), 1);
  EXPECT_EQ(run("gen --model nope"), 1);
  EXPECT_EQ(run("gen --n 40 --exact"), 1);
  EXPECT_EQ(run("reduce " + path("c3.tfvs") + " --pivot 7"), 1);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, ReduceTrace)
{
  tfvs::write_file(path("c3.tfvs"), "3\n5 3 4\n010\n001\n100\n");
  ASSERT_EQ(run("reduce " + path("c3.tfvs") + " --pivot 0 --trace", "r.txt"), 0);
  EXPECT_EQ(read("r.txt"), "step deleted=1 charged=2 delta=3\ndeleted 1\nsurvivors 0:5 2:1\n");
}

TEST_F(Cli, CorpusEstimateAndCompare)
{
  ASSERT_EQ(run("gen --n 12 --weights uniform-range --count 3 --seed 7 --exact --dir " + path("corpus")), 0);
  EXPECT_TRUE(fs::exists(dir / "corpus" / "uniform-random-n12-s7.tfvs"));
  auto meta = tfvs::parse_metadata(read("corpus/uniform-random-n12-s7.tfvs.meta"));
  EXPECT_TRUE(meta.count("exact_weight"));

  ASSERT_EQ(run("estimate-success --corpus " + path("corpus") + " --trials 20 --seed 1", "est.txt"), 0);
  auto const est = read("est.txt");
  EXPECT_NE(est.find("flagged=0"), std::string::npos);
  EXPECT_NE(est.find("instance,n,algorithm"), std::string::npos);

  ASSERT_EQ(run("bench --corpus " + path("corpus") + " --algos exact,approx3 --no-timing", "cmp.txt"), 0);
  EXPECT_NE(read("cmp.txt").find("exact.max_ratio=1.000000"), std::string::npos);

  // Without ground truth the estimate cannot run.
  ASSERT_EQ(run("gen --n 12 --count 1 --dir " + path("raw")), 0);
  EXPECT_EQ(run("estimate-success --corpus " + path("raw") + " --trials 5"), 2);
  EXPECT_EQ(run("estimate-success --corpus " + path("nowhere") + " --trials 5"), 2);
}

TEST_F(Cli, BenchModes)
{
  ASSERT_EQ(run("bench --n-list 20,30 --reps 2 --no-timing --out " + path("scale.txt")), 0);
  auto const scale = read("scale.txt");
  EXPECT_NE(scale.find("within_ceiling=1"), std::string::npos);
  EXPECT_NE(scale.find("node_exponent="), std::string::npos);

  ASSERT_EQ(run("bench --reduce-only --n-list 40,80 --reps 2", "reduce.txt"), 0);
  EXPECT_NE(read("reduce.txt").find("mode=reduce"), std::string::npos);

  EXPECT_EQ(run("bench --n-list 20,x"), 1);
}
