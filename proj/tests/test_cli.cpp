#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "logkn/degen.hpp"
#include "logkn/graph_io.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
  json parsed() const { return json::parse(out); }
};

Result run(const std::string& args) {
  const std::string cmd = std::string(LOGKN_BINARY) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(LOGKN_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("analyze") {
  const auto r = run("analyze " + data("tate1.json"));
  REQUIRE(r.code == 0);
  const auto j = r.parsed();
  CHECK(j["monodromy"]["T"] == json::parse("[[1,0],[1,1]]"));
  CHECK(j["monodromy"]["rankN"] == 1);
  CHECK(j["monodromy"]["weights"] == json::parse("[1,0,1]"));
  CHECK(j["fiber"]["genus"] == 1);
  CHECK(j["fiber"]["boundary"] == 0);
  CHECK(j["euler"] == 0);
  CHECK(j["zeta"].empty());
  CHECK(j["total_homology"].size() == 4);
  CHECK(j["total_homology"][2]["rank"] == 2);
  CHECK(j["input"]["name"] == "tate-1");
  CHECK(j["warnings"].empty());
}

TEST_CASE("analyze rejects bad input") {
  const auto bad = run("analyze " + data("bad.json"));
  CHECK(bad.code == 1);
  CHECK(bad.parsed()["error"] == "Disconnected");
  const auto malformed = run("analyze " + data("malformed.json"));
  CHECK(malformed.code == 1);
  CHECK(malformed.parsed()["error"] == "ParseError");
  const auto missing = run("analyze " + data("no-such-file.json"));
  CHECK(missing.code == 1);
  CHECK(run("frobnicate").code == 1);
}

TEST_CASE("analyze a non-reduced fiber") {
  const auto r = run("analyze " + data("nodeblown.json"));
  REQUIRE(r.code == 0);
  const auto j = r.parsed();
  CHECK(j["semistable"] == false);
  CHECK(j["euler"] == 0);
  CHECK_FALSE(j.contains("monodromy"));
  CHECK(j["warnings"][0] == "non-reduced: fiber surface omitted");
}

TEST_CASE("blowup") {
  const auto smooth = run("blowup " + data("tate3.json") + " --smooth-point v0 --check");
  CHECK(smooth.code == 0);
  CHECK(smooth.parsed()["invariance"]["passed"] == true);
  CHECK(smooth.parsed()["invariance"]["path"] == "fiber");
  const auto node = run("blowup " + data("tate1.json") + " --node e0 --check");
  CHECK(node.code == 0);
  CHECK(node.parsed()["invariance"]["path"] == "euler-zeta");
  CHECK(run("blowup " + data("tate1.json") + " --node missing").code == 1);
  const auto no_mark = run("blowup " + data("tate1.json") + " --smooth-point v0 --through-mark");
  CHECK(no_mark.code == 1);
  CHECK(no_mark.parsed()["error"] == "NoMarkToMove");
  const auto marked = run("blowup " + data("ex2.json") + " --smooth-point v --through-mark --check");
  CHECK(marked.code == 0);
}

TEST_CASE("emitted graphs re-parse and validate") {
  const auto r = run("blowup " + data("tate1.json") + " --node e0");
  REQUIRE(r.code == 0);
  const auto g = logkn::degen::parse_graph(r.out);
  CHECK(logkn::degen::validate(g).empty());
  CHECK(g.vertices().size() == 2);
  const auto again = run("blowup " + data("tate3.json") + " --smooth-point v1");
  CHECK(logkn::degen::validate(logkn::degen::parse_graph(again.out)).empty());
}

TEST_CASE("chart") {
  const auto a = run("chart --generators \"2;3\"");
  REQUIRE(a.code == 0);
  CHECK(a.parsed()["saturated"] == false);
  CHECK(a.parsed()["kn_local_model"]["torus_rank"] == 1);
  const auto b = run("chart --multiplicities \"1,1\"");
  REQUIRE(b.code == 0);
  CHECK(b.parsed()["exact"] == true);
  CHECK(b.parsed()["kummer"] == false);
  const auto c = run("chart --generators \"1,0;0,1\"");
  CHECK(c.parsed()["saturated"] == true);
  CHECK(c.parsed()["kn_local_model"]["torus_rank"] == 2);
  CHECK(run("chart --generators \"1,x\"").code == 1);
  CHECK(run("chart --generators \"1,0,0,0,0\"").code == 1);
  CHECK(run("chart --multiplicities \"0\"").code == 1);
}

TEST_CASE("examples") {
  const auto tate = run("examples tate --n 5");
  REQUIRE(tate.code == 0);
  CHECK(tate.parsed()["monodromy"]["T"] == json::parse("[[1,0],[5,1]]"));
  CHECK(tate.parsed()["transvection"] == 5);
  const auto tate1 = run("examples tate --n 1");
  CHECK(tate1.parsed()["gluing_check"]["ok"] == true);
  const auto hopf = run("examples hopf");
  REQUIRE(hopf.code == 0);
  CHECK(hopf.parsed()["total"] == "[Z, Z^2, Z, Z, Z^2, Z]");
  const auto good = run("examples good-reduction --genus 2");
  CHECK(good.parsed()["total_homology"][1]["rank"] == 5);
  const auto bf = run("examples blowfiber --samples 200 --seed 5");
  CHECK(bf.code == 0);
  CHECK(bf.parsed()["passed"] == true);
  CHECK(bf.parsed()["cases"].size() == 26);
  CHECK(run("examples nonsense").code == 1);
}

TEST_CASE("pretty output") {
  const auto r = run("--pretty analyze " + data("tate1.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("monodromy.T") != std::string::npos);
  const auto trailing = run("analyze " + data("tate1.json") + " --pretty");
  CHECK(trailing.code == 0);
  CHECK(trailing.out == r.out);
}

TEST_CASE("compare-etale") {
  const auto lp = run("compare-etale --log-point 3 --mod 4");
  REQUIRE(lp.code == 0);
  CHECK(lp.parsed()["agree"] == true);
  CHECK(lp.parsed()["group"]["ranks"] == json::parse("[1,3,3,1]"));
  const auto mt = run("compare-etale " + data("tate1.json") + " --mod 2");
  REQUIRE(mt.code == 0);
  CHECK(mt.parsed()["consistent"] == true);
  CHECK(run("compare-etale --log-point 2 --mod 1").code == 1);
  CHECK(run("compare-etale " + data("nodeblown.json") + " --mod 2").code == 1);
}

TEST_CASE("blowfiber") {
  const auto r = run("blowfiber --i 3 --l 2 --samples 100 --seed 4");
  REQUIRE(r.code == 0);
  CHECK(r.parsed()["dimension"] == 3);
  const auto empty = run("blowfiber --i 2 --l 0");
  CHECK(empty.code == 1);
  CHECK(empty.parsed()["error"] == "CenterNotInDivisor");
}
