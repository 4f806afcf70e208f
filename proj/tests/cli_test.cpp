#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "galmot/cli.hpp"
#include "galmot/error.hpp"

using namespace galmot;

namespace {

cli::RunConfig make(const std::string& command) {
  cli::RunConfig c;
  c.command = command;
  return c;
}

int tool(const std::string& args, const std::string& out_path) {
  const std::string cmd = std::string(GALMOT_TOOL) + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Experiments, MotiveOfTrivialKummerColoring) {
  auto c = make("motive");
  c.covers = {"kummer:m=2"};
  c.coloring = "trivial";
  EXPECT_EQ(cli::run(c).tsv, "# coef\tsymbol\n1/2\t[V/{1}]\n");
}

TEST(Experiments, ArtinTableOfCubics) {
  auto c = make("artin-table");
  c.covers = {"roots:n=3"};
  c.qs = {7};
  // Split: C(7,3); irreducible: (7^3 - 7)/3; one linear factor: 7 * (7^2 - 7)/2.
  EXPECT_EQ(cli::run(c).tsv, "# q\torder\trep\tcount\n7\t1\t0\t35\n7\t2\t1\t147\n7\t3\t3\t112\n");
}

TEST(Experiments, ThetaCount) {
  auto c = make("theta-count");
  c.covers = {"kummer:m=2"};
  c.coloring = "trivial";
  c.qs = {7};
  c.ns = {2};
  EXPECT_EQ(cli::run(c).tsv, "# q\tn\tcount\n7\t2\t6\n");
}

TEST(Experiments, CountWithPrimeSetIsRejected) {
  auto c = make("count");
  c.covers = {"kummer:m=2"};
  c.coloring = "trivial";
  c.qs = {7};
  EXPECT_EQ(cli::run(c).tsv, "# q\tcount\n7\t3\n");
  c.primes = "2";
  EXPECT_THROW(cli::run(c), ColoringError);
}

TEST(Suites, CounterexampleRows) {
  auto c = make("counterexample");
  c.qs = {7, 9};
  auto r = cli::run(c);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.tsv, "# q\tcount_XxG\tcount_V\ttheta2_XxG\ttheta2_V\tstatus\n7\t6\t6\t12\t6\tok\n9\t8\t8\t16\t8\tok\n");
}

TEST(Suites, ExplicitBadPrimeIsReported) {
  auto c = make("torsor");
  c.covers = {"kummer:m=3"};
  c.qs = {5, 7};
  auto r = cli::run(c);
  EXPECT_TRUE(r.ok);
  EXPECT_NE(r.tsv.find("kummer:m=3\t5\t-"), std::string::npos);
  EXPECT_NE(r.tsv.find("kummer:m=3\t7\t4\t4\t0\tok\tok"), std::string::npos);
}

TEST(Suites, OutputIndependentOfJobs) {
  for (std::string s : {"torsor", "theta", "fibers"}) {
    auto c = make(s);
    c.qs = {7, 13};
    const auto one = cli::run(c).tsv;
    c.jobs = 3;
    EXPECT_EQ(cli::run(c).tsv, one) << s;
  }
  auto c = make("recursion");
  c.max_order = 12;
  const auto one = cli::run(c).tsv;
  c.jobs = 4;
  EXPECT_EQ(cli::run(c).tsv, one);
}

TEST(Validate, RejectsBadConfigs) {
  auto c = make("count");
  c.covers = {"kummer:m=0"};
  c.coloring = "trivial";
  c.qs = {7};
  EXPECT_THROW(cli::validate(c), ParseError);
  c.covers = {"kummer:m=3"};
  c.qs = {5};
  EXPECT_THROW(cli::validate(c), BadPrime);
  c.qs = {7};
  c.coloring.clear();
  EXPECT_THROW(cli::validate(c), Error);
  c.coloring = "classes=[5@1]";
  EXPECT_THROW(cli::validate(c), ColoringError);
  EXPECT_THROW(cli::validate(make("nonsense")), Error);
  auto j = make("torsor");
  j.jobs = 0;
  EXPECT_THROW(cli::validate(j), Error);
}

TEST(PrimeSetFlag, Parses) {
  EXPECT_TRUE(cli::parse_prime_set("all").is_all());
  EXPECT_EQ(cli::parse_prime_set("none"), PrimeSet::none());
  EXPECT_EQ(cli::parse_prime_set("3,2,3"), PrimeSet::of({2, 3}));
  EXPECT_THROW(cli::parse_prime_set("2,4"), ParseError);
  EXPECT_THROW(cli::parse_prime_set("2,,3"), ParseError);
}

TEST(ParallelFor, WritesByIndexAndRethrows) {
  std::vector<std::size_t> out(50);
  cli::parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = i * i; });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
  EXPECT_THROW(cli::parallel_for(10, 3,
                                 [](std::size_t i) {
                                   if (i == 7) throw std::runtime_error("boom");
                                 }),
               std::runtime_error);
}

TEST(Tool, ExitCodes) {
  const std::string out = ::testing::TempDir() + "galmot_tool_out.tsv";
  EXPECT_EQ(tool("motive --cover kummer:m=2 --coloring trivial", out), 0);
  EXPECT_EQ(slurp(out), "# coef\tsymbol\n1/2\t[V/{1}]\n");

  EXPECT_EQ(tool("count --cover kummer:m=0 --coloring trivial --q 7", out), 2);
  EXPECT_EQ(slurp(out), "");
  EXPECT_EQ(tool("count --cover kummer:m=2 --coloring trivial --q seven", out), 2);
  EXPECT_EQ(slurp(out), "");
  EXPECT_EQ(tool("count --cover kummer:m=3 --coloring trivial --q 5", out), 2);
  EXPECT_EQ(tool("frobnicate", out), 2);

  EXPECT_EQ(tool("counterexample --q 7,11,13", out), 0);
  EXPECT_NE(slurp(out).find("7\t6\t6\t12\t6\tok\n"), std::string::npos);

  const std::string file = ::testing::TempDir() + "galmot_tool_file.tsv";
  std::remove(file.c_str());
  EXPECT_EQ(tool("theta-count --cover kummer:m=2 --coloring trivial --n 2 --q 7 --out " + file, out), 0);
  EXPECT_EQ(slurp(file), "# q\tn\tcount\n7\t2\t6\n");
  EXPECT_EQ(slurp(out), "");
}
