#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "helix/cli.hpp"
#include "helix/help.hpp"

using namespace helix;

namespace {

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

bool contains(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "helix_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, SolveTableSevenA) {
  CliRun r = run({"solve", "--table", "embedded:psp4_7_partial", "--chars", "phi", "--order", "2"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "Number of solutions for elements of order 2: 3")) << r.out;
}

TEST(Cli, SolveSConstant) {
  CliRun r = run({"solve", "--table", "gen:psl2:243", "--chars", "chi121", "--order", "33", "--s-constant", "11",
               "--format", "json"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "\"count\": 0")) << r.out;
}

TEST(Cli, VerifyRemarkFourFour) {
  CliRun r = run({"verify", "--table", "gen:pgl2:243", "--order", "33", "--chain", "(1, 1,0,0,0,0, 12,0,0,0,-11,0)"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "satisfied, nontrivial")) << r.out;

  auto file = scratch("chain.json");
  std::ofstream(file) << R"({"unit_order": 33, "entries": {"3": {"3a": 1}, "11": {"11a": 1},
    "33": {"3a": 12, "11d": -11}}})";
  CliRun f = run({"verify", "--table", "gen:pgl2:243", "--order", "33", "--chain", file.string(), "--format", "json"});
  EXPECT_EQ(f.status, 0) << f.err;
  EXPECT_TRUE(contains(f.out, "\"satisfied\": true")) << f.out;

  CliRun bad = run({"verify", "--table", "gen:pgl2:243", "--order", "33", "--chain", "(1, 1,0,0,0,0, 13,0,0,0,-12,0)"});
  EXPECT_EQ(bad.status, 0);
  EXPECT_TRUE(contains(bad.out, "violated")) << bad.out;
}

TEST(Cli, GenValidateRoundTrip) {
  for (long q : {4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49}) {
    for (std::string family : {"psl2", "pgl2"}) {
      auto file = scratch(family + "_" + std::to_string(q) + ".json");
      CliRun g = run({"gen", "--family", family, "--q", std::to_string(q), "--out", file.string()});
      ASSERT_EQ(g.status, 0) << g.err;
      CliRun v = run({"validate", "--table", file.string()});
      EXPECT_EQ(v.status, 0) << family << " " << q << ": " << v.out;
      EXPECT_TRUE(contains(v.out, "valid\n"));
    }
  }
  auto file = scratch("pgl2_9_brauer.json");
  ASSERT_EQ(run({"gen", "--family", "pgl2", "--q", "9", "--with-brauer3", "--out", file.string()}).status, 0);
  EXPECT_EQ(run({"validate", "--table", file.string()}).status, 0);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"solve", "--table", "gen:psl2:32", "--order", "6", "--format", "json", "--jobs", "4"};
  CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> pq{"pq", "--table", "gen:psl2:16", "--pair", "2,3", "--pair", "2,5", "--format", "json"};
  EXPECT_EQ(run(pq).out, run(pq).out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).status, 1);
  EXPECT_EQ(run({"solve", "--table", "embedded:psp4_7_partial"}).status, 1);
  EXPECT_EQ(run({"gen", "--family", "psl2", "--q", "6"}).status, 1);
  EXPECT_EQ(run({"validate", "--table", "/no/such/file.json"}).status, 1);
  EXPECT_EQ(run({"validate", "--table", "embedded:nothing"}).status, 1);

  CliRun unknown = run({"solve", "--table", "embedded:psp4_7_partial", "--chars", "psi", "--order", "2"});
  EXPECT_EQ(unknown.status, 1);
  EXPECT_TRUE(contains(unknown.err, "psi")) << unknown.err;

  CliRun capped = run({"solve", "--table", "embedded:psp4_7_partial", "--chars", "phi", "--order", "2", "--cap", "1"});
  EXPECT_EQ(capped.status, 2);

  CliRun incomplete = run({"pq", "--table", "gen:psl2:5", "--pair", "2,3"});
  EXPECT_EQ(incomplete.status, 2);
  EXPECT_TRUE(contains(incomplete.out, "order 10: not tested"));
  EXPECT_EQ(run({"pq", "--table", "gen:psl2:5"}).status, 0);
  EXPECT_EQ(run({"pq", "--table", "embedded:psp4_7_aut_partial"}).status, 1);
  EXPECT_EQ(run({"pq", "--table", "embedded:psp4_7_aut_partial", "--assume-coverage", "--chars", "chi,phi"}).status, 0);
}

TEST(Cli, CharacterFamilies) {
  CharacterTable t = load_table_source("gen:psl2:243");
  EXPECT_EQ(select_characters(t, "chi121"), (std::vector<std::string>{"chi121a", "chi121b"}));
  EXPECT_EQ(select_characters(t, "chi1,chi243"), (std::vector<std::string>{"chi1", "chi243"}));
  EXPECT_EQ(select_characters(t, "all").size(), t.characters().size());
  EXPECT_THROW(select_characters(t, "chi7"), DataError);
  EXPECT_THROW(load_table_source("gen:psl2:243:brauer3"), std::exception);
  EXPECT_NO_THROW(load_table_source("gen:pgl2:243:brauer3"));
}

TEST(Cli, CapFromEnvironment) {
  setenv("HELIX_PQ_CAP", "17", 1);
  EXPECT_EQ(default_cap(), 17u);
  setenv("HELIX_PQ_CAP", "junk", 1);
  EXPECT_EQ(default_cap(), 1000000u);
  unsetenv("HELIX_PQ_CAP");
  EXPECT_EQ(default_cap(), 1000000u);
}
