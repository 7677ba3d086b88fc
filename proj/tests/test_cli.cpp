#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"
#include "tempinv/cli.hpp"

using namespace tempinv;
using namespace tempinv::test;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = tempinv::run(args, out, err);
  return {code, out.str(), err.str()};
}

int count_template_lines(const std::string& text) {
  int n = 0;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty() && line[0] == '{') ++n;
  return n;
}

}  // namespace

TEST_CASE("invariants subcommand reproduces the floortile counts") {
  RunResult tis =
      run_cli({"invariants", "--mode", "tis", fixture_path("floortile.pddl")});
  CHECK(tis.code == 0);
  CHECK(count_template_lines(tis.out) == 5);
  CHECK(tis.out.find("tempinv-format 1") == 0);
  CHECK(tis.out.find("{robot-at 0 [1]}") != std::string::npos);

  RunResult sis =
      run_cli({"invariants", "--mode", "sis", fixture_path("floortile.pddl")});
  CHECK(sis.code == 0);
  CHECK(count_template_lines(sis.out) == 0);
}

TEST_CASE("verify subcommand holds on the mini problem") {
  RunResult r = run_cli({"verify", "--template", "{robot-at 0 [1]}",
                         fixture_path("floortile.pddl"),
                         fixture_path("mini_floortile.pddl")});
  CHECK(r.code == 0);
  CHECK(r.out.find("Holds (depth 8)") != std::string::npos);
}

TEST_CASE("verify subcommand reports violations with exit code two") {
  RunResult r = run_cli({"verify", "--template", "{clear 0, painted 0 [1]}",
                         fixture_path("floortile_bug.pddl"),
                         fixture_path("mini_floortile.pddl")});
  CHECK(r.code == 2);
  CHECK(r.out.find("Violated") != std::string::npos);
  // witness happenings are replayable lines "N: event | event"
  CHECK(r.out.find("1: ") != std::string::npos);
}

TEST_CASE("pipeline compositionality: canon output feeds invariants") {
  RunResult canon = run_cli({"canon", fixture_path("floortile.pddl")});
  REQUIRE(canon.code == 0);
  std::string path = fixture_path("../floortile_canon_tmp.lisp");
  {
    std::ofstream f(path);
    f << canon.out;
  }
  RunResult direct =
      run_cli({"invariants", "--mode", "tis", fixture_path("floortile.pddl")});
  RunResult piped = run_cli({"invariants", "--mode", "tis", path});
  CHECK(direct.out == piped.out);
  std::remove(path.c_str());
}

TEST_CASE("idempotence: identical invocations give identical bytes") {
  RunResult a = run_cli({"invariants", "--mode", "tis", "--format", "json",
                         fixture_path("depot.pddl")});
  RunResult b = run_cli({"invariants", "--mode", "tis", "--format", "json",
                         fixture_path("depot.pddl")});
  CHECK(a.out == b.out);
  RunResult c = run_cli({"invariants", "--mode", "tis", "--format", "json",
                         "--jobs", "3", fixture_path("depot.pddl")});
  CHECK(a.out == c.out);
}

TEST_CASE("statevars subcommand") {
  RunResult bis = run_cli({"statevars", "--mode", "bis",
                           fixture_path("floortile.pddl"),
                           fixture_path("mini_floortile.pddl")});
  CHECK(bis.code == 0);
  CHECK(bis.out.find("variables 10 mean 2\n") != std::string::npos);
  RunResult tis = run_cli({"statevars", "--mode", "tis",
                           fixture_path("floortile.pddl"),
                           fixture_path("mini_floortile.pddl")});
  CHECK(tis.code == 0);
  CHECK(tis.out.find("robot-at(rbt1,tile1)") != std::string::npos);
}

TEST_CASE("debug subcommand diffs expected invariants") {
  std::string expect_path = fixture_path("../expected_tmp.txt");
  {
    std::ofstream f(expect_path);
    f << "{robot-at 0 [1]}\n{painted 0 [1]}\n";
  }
  RunResult r = run_cli(
      {"debug", "--expect", expect_path, fixture_path("floortile.pddl")});
  CHECK(r.code == 1);  // painted alone is not provable
  CHECK(r.out.find("ok {robot-at 0 [1]}") != std::string::npos);
  CHECK(r.out.find("missing {painted 0 [1]}") != std::string::npos);
  // the diagnosis names the failing schema fragments
  CHECK(r.out.find("paint-up end") != std::string::npos);
  std::remove(expect_path.c_str());
}

TEST_CASE("usage and parse errors exit with one") {
  RunResult bad = run_cli({"invariants", "--nonsense"});
  CHECK(bad.code == 1);
  RunResult missing = run_cli({"invariants", "--mode", "tis", "/nonexistent"});
  CHECK(missing.code == 1);
  RunResult malformed = run_cli({"verify", "--template", "{robot-at 0 [1]}",
                                 fixture_path("mini_floortile.pddl"),
                                 fixture_path("mini_floortile.pddl")});
  CHECK(malformed.code == 1);
  CHECK(!malformed.err.empty());
}
