#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#ifndef ABF_CLI_PATH
#error "ABF_CLI_PATH must name the abf executable"
#endif

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(ABF_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  int st = pclose(f);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

nlohmann::json run_json(const std::string& args) {
  auto r = run(args + " --format json");
  REQUIRE(r.status == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("").status == 2);
  CHECK(run("nope").status == 2);
  CHECK(run("lhp --k three").status == 2);
  CHECK(run("lhp --x 1.5").status == 2);
  CHECK(run("lhp --format xml").status == 2);
  CHECK(run("trace-ff --k 2 --n 0 --a 1 --m 0").status == 2);
  CHECK(run("scaling-ff --k 2").status == 2);
  CHECK(run("trace-ff --k 3 --n 2 --v 0.1").status == 2);
  CHECK(run("--help").status == 0);
  CHECK(run("lhp --help").status == 0);
}

TEST_CASE("meta block") {
  auto j = run_json("lhp --k 4 --x 0.3 --m 1 --eps 1e-13 --max-terms 2000");
  auto& m = j["meta"];
  CHECK(m["k"] == 4);
  CHECK(m["x"] == 0.3);
  CHECK(m["eps"] == 1e-13);
  CHECK(m["max_terms"] == 2000);
  CHECK(m["m"] == 1);
  CHECK(m.contains("version"));
  CHECK(j["data"].size() == 5);
}

TEST_CASE("lhp column sums to one") {
  auto j = run_json("lhp --k 3 --x 0.5 --m 0");
  double s = 0;
  for (auto& row : j["data"]) s += row["P"].get<double>();
  CHECK(std::abs(s - 1.0) < 1e-8);
}

TEST_CASE("trace at n = 0 equals the lhp value") {
  auto t = run_json("trace-ff --k 3 --x 0.5 --n 0 --a 2 --m 1");
  auto l = run_json("lhp --k 3 --x 0.5 --m 1");
  double p2 = 0;
  for (auto& row : l["data"])
    if (row["a"] == 2) p2 = row["P"];
  auto q = t["data"][0]["Q"];
  CHECK(std::abs(q[0].get<double>() - p2) < 1e-10);
  CHECK(q[1].get<double>() == 0.0);
}

TEST_CASE("complex values in csv use two columns") {
  auto r = run("trace-ff --k 3 --n 1 --a 1 --m 0 --v 0.3+0.2i --vp 0.1-0.15i");
  CHECK(r.status == 0);
  CHECK(r.out.find("a,m,n,Q_re,Q_im") != std::string::npos);
  CHECK(r.out.find("# v=[[0.3,0.2]]") != std::string::npos);
}

TEST_CASE("environment overrides") {
  std::string env = "ABF_EPS=1e-11 ABF_MAX_TERMS=777 ";
  std::string cmd = env + ABF_CLI_PATH + " lhp --format json";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  pclose(f);
  auto j = nlohmann::json::parse(out);
  CHECK(j["meta"]["eps"] == 1e-11);
  CHECK(j["meta"]["max_terms"] == 777);
}

TEST_CASE("output is deterministic across runs and thread counts") {
  for (std::string cmd : {"weights --k 4 --x 0.6", "smatrix --k 5 --a 2 --b 3 --points 41",
                          "trace-ff --k 3 --n 1 --a 3 --m 0 --hat"}) {
    auto a = run(cmd), b = run(cmd);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }
  auto s1 = run_json("smatrix --k 4 --points 33 --threads 1");
  auto s4 = run_json("smatrix --k 4 --points 33 --threads 4");
  CHECK(s1["data"] == s4["data"]);
}

TEST_CASE("scaling and verify") {
  auto j = run_json("scaling-ff --k 3 --a 3 --beta 0.7 --betap 0 --xs 0.5,0.7,0.9");
  CHECK(j["meta"]["monotone"] == true);
  CHECK(j["data"].size() == 3);
  CHECK(j["data"][2]["rel_err"].get<double>() < 5e-2);

  auto v = run("verify --k 3 --x 0.5");
  CHECK(v.status == 0);
  CHECK(v.out.find(",false") == std::string::npos);
}
