#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CUBEPACK_CLI) + " " + args + " 2>/dev/null";
  Run r{-1, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("basis commands") {
    auto r = run("basis construct --n 9");
    CHECK(r.status == 0);
    CHECK(r.out == "9: 0 1 2 3 6\n");
    CHECK(run("basis minimal --n 7").out == "7: 0 1 2 3\n");
    CHECK(run("basis verify --n 4 --elements 0,1").status == 1);
    CHECK(run("basis verify --n 5 --elements 0,1,2").status == 0);
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(run("").status == 2);
    CHECK(run("no-such-command").status == 2);
    CHECK(run("count --family random --n 2 --k 6").status == 2);  // missing --seed
    CHECK(run("cantor build --base 9 --alphabet 0,9").status == 2);
    CHECK(run("slice-sweep --family concentric --n 2 --margin wide --r 0.6").status == 2);
  }

  TEST_CASE("audits report pass and fail") {
    CHECK(run("audit t1 --family concentric --n 2 --k-min 8 --k-max 9").status == 0);
    CHECK(run("cantor diffcover --base 4 --alphabet 0,3 --k 2").status == 1);
    CHECK(run("cantor diffcover --base 3 --alphabet 0,2 --k 3").status == 0);
  }

  TEST_CASE("deterministic output") {
    const auto a = run("count --family random --n 2 --pieces 50 --seed 3 --k 8");
    const auto b = run("count --family random --n 2 --pieces 50 --seed 3 --k 8");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    const auto m1 = run("minimize --n 2 --delta-exp 6 --budget 50 --seed 1 --seeds 2 --pieces 8");
    const auto m2 = run("minimize --n 2 --delta-exp 6 --budget 50 --seed 1 --seeds 2 --pieces 8");
    CHECK(m1.status == 0);
    CHECK(m1.out == m2.out);
  }

  TEST_CASE("files round trip") {
    const std::string path = "cli_test_packing.json";
    {
      std::ofstream f(path);
      f << R"({"dimension": 2, "pieces": [{"t_lo": 0.5, "t_hi": 0.75, "center": [0.5, 0.5]}]})";
    }
    CHECK(run("count --packing " + path + " --k 6 --out cli_test_cover.txt").status == 0);
    CHECK(run("render --cover cli_test_cover.txt --out cli_test.svg").status == 0);
    std::ifstream svg("cli_test.svg");
    std::stringstream s;
    s << svg.rdbuf();
    CHECK(s.str().find("<svg") != std::string::npos);
    {
      std::ofstream f(path);
      f << "{ not json";
    }
    CHECK(run("count --packing " + path + " --k 6").status == 2);
    std::remove(path.c_str());
    std::remove("cli_test_cover.txt");
    std::remove("cli_test.svg");
  }
}
