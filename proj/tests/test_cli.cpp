#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "treeapprox/cli.hpp"
#include "treeapprox/error.hpp"
#include "treeapprox/io.hpp"

using namespace treeapprox;
using io::json;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int status = run_cli(args, in, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path tmp(const std::string& name) {
  std::filesystem::path dir(TREEAPPROX_TEST_TMP);
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

json stable(json report) {
  report.erase("timing_seconds");
  report.erase("command");
  return report;
}

const std::string x2_text =
    "4\n00\n01\n10\n11\n"
    "0 4 2 4\n4 0 4 2\n2 4 0 4\n4 2 4 0\n";

}  // namespace

TEST_CASE("analyze reports the Nagata constant") {
  auto r = run({"analyze"}, x2_text);
  REQUIRE(r.status == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["tool"] == "treeapprox");
  CHECK(doc["version"] == tool_version);
  CHECK(doc["nagata"]["constant"]["exact"] == "1");
  CHECK(doc["nagata"]["is_ultrametric"] == true);
  CHECK(doc["input_digest"].get<std::string>().rfind("sha256:", 0) == 0);
  CHECK(doc["input_digest"].get<std::string>().size() == 7 + 64);
}

TEST_CASE("json metric input") {
  std::string j = R"({"points": ["a", "b", "c"], "distances": [[0, 1, "2"], [1, 0, 1.5], ["2", 1.5, 0]]})";
  auto r = run({"analyze", "--input", "-"}, j);
  REQUIRE(r.status == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["nagata"]["diameter"]["exact"] == "2");
  CHECK(doc["nagata"]["separation"]["exact"] == "1");
}

TEST_CASE("build-nagata report and tree round trip") {
  auto metric = tmp("x2.metric");
  write(metric, x2_text);
  auto tree = tmp("x2.tree.json");
  auto report = tmp("x2.report.json");
  auto r = run({"build-nagata", "--input", metric.string(), "--out", tree.string(), "--report", report.string()});
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  auto doc = json::parse(slurp(report));
  CHECK(doc["distortion"]["distortion"]["exact"] == "2");
  CHECK(doc["bound"]["exact"] == "6");
  CHECK(doc["construction"]["root"] == "00");

  auto space = io::read_metric(x2_text);
  auto t = io::tree_from_json(space, json::parse(slurp(tree)));
  CHECK(to_string(distortion(space, t).distortion) == doc["distortion"]["distortion"]["exact"]);

  auto rooted = json::parse(run({"build-nagata", "--root", "11"}, x2_text).out);
  CHECK(rooted["construction"]["root"] == "11");
  auto bad_root = run({"build-nagata", "--root", "zz"}, x2_text);
  CHECK(bad_root.status == 2);
  CHECK(json::parse(bad_root.err)["error"] == "UnknownLabel");
}

TEST_CASE("gen piped into analyze") {
  auto g = run({"gen", "--family", "cycle", "--n", "4"});
  REQUIRE(g.status == 0);
  auto doc = json::parse(run({"analyze"}, g.out).out);
  CHECK(doc["nagata"]["constant"]["exact"] == "2");
  CHECK(doc["nagata"]["is_zero_hyperbolic"] == false);

  auto path = tmp("c5.json");
  REQUIRE(run({"gen", "--family", "cycle", "--n", "5", "--out", path.string()}).status == 0);
  auto j = json::parse(slurp(path));
  CHECK(j["points"].size() == 5);
  CHECK(run({"analyze", "--input", path.string()}).status == 0);

  CHECK(run({"gen", "--family", "cycle", "--n", "2"}).status == 2);
  CHECK(run({"gen", "--family", "cycle"}).status == 2);
}

TEST_CASE("build-gupta with trace") {
  auto g = run({"gen", "--family", "random-treeset", "--n", "12", "--seed", "4"});
  auto trace = tmp("trace.json");
  auto r = run({"build-gupta", "--trace", trace.string()}, g.out);
  REQUIRE(r.status == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["checks"]["pairs"].get<int>() > 0);
  CHECK(doc["distortion"]["distortion"]["approx"].get<double>() < 8);
  auto t = json::parse(slurp(trace));
  CHECK(t["components"].size() == doc["construction"]["components"]);
  CHECK_FALSE(t["components"][0]["levels"].empty());

  auto cyc = run({"build-gupta"}, run({"gen", "--family", "cycle", "--n", "4"}).out);
  CHECK(cyc.status == 2);
  auto err = json::parse(cyc.err);
  CHECK(err["error"] == "NotZeroHyperbolic");
  CHECK(err["witness"].size() == 4);
}

TEST_CASE("search-opt methods and thread invariance") {
  auto e = json::parse(run({"search-opt", "--method", "exhaustive"}, x2_text).out);
  CHECK(e["best_distortion"]["exact"] == "2");
  CHECK(e["trees_examined"] == 16);
  CHECK(e["complete"] == true);
  auto b = json::parse(run({"search-opt", "--method", "bnb"}, x2_text).out);
  CHECK(b["best_distortion"]["exact"] == "2");
  auto l = json::parse(run({"search-opt", "--method", "local", "--seed", "3"}, x2_text).out);
  CHECK(l["method"] == "local");

  auto metric = run({"gen", "--family", "random-ultrametric", "--n", "7", "--seed", "1"}).out;
  for (const char* method : {"exhaustive", "local"}) {
    auto one = stable(json::parse(run({"search-opt", "--method", method, "--threads", "1"}, metric).out));
    for (const char* t : {"2", "8"})
      CHECK(stable(json::parse(run({"search-opt", "--method", method, "--threads", t}, metric).out)) == one);
  }
  CHECK(run({"search-opt", "--method", "magic"}, x2_text).status == 2);
}

TEST_CASE("extend writes values for every point") {
  auto metric = tmp("ext.metric");
  write(metric, x2_text);
  auto subset = tmp("ext.subset");
  write(subset, "00\n11\n");
  auto values = tmp("ext.values");
  write(values, "0 1\n2 1\n");
  auto out = tmp("ext.out");
  auto r = run({"extend", "--input", metric.string(), "--subset", subset.string(), "--values", values.string(),
                "--method", "nagata", "--out", out.string()});
  REQUIRE(r.status == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["within_bound"] == true);
  CHECK(doc["guaranteed_lip"]["exact"] == "8");
  std::istringstream lines(slurp(out));
  std::string line;
  std::vector<std::string> got;
  while (std::getline(lines, line)) got.push_back(line);
  REQUIRE(got.size() == 4);
  CHECK(got[0] == "00 0 1");
  CHECK(got[3] == "11 2 1");

  write(values, "0 1\n9 1\n");
  auto steep = run({"extend", "--input", metric.string(), "--subset", subset.string(), "--values", values.string()});
  CHECK(steep.status == 2);
  CHECK(json::parse(steep.err)["error"] == "InfeasibleConstraints");
  write(subset, "00\nqq\n");
  CHECK(run({"extend", "--input", metric.string(), "--subset", subset.string(), "--values", values.string()}).status ==
        2);
}

TEST_CASE("errors and exit codes") {
  auto unknown = run({"frobnicate"});
  CHECK(unknown.status == 2);
  CHECK(json::parse(unknown.err).contains("error"));
  CHECK(run({}).status == 2);
  CHECK(run({"analyze", "--bogus"}).status == 2);
  auto tri = run({"analyze"}, "3\na\nb\nc\n0 1 3\n1 0 1\n3 1 0\n");
  CHECK(tri.status == 2);
  auto err = json::parse(tri.err);
  CHECK(err["error"] == "TriangleViolation");
  CHECK(err["witness"].size() == 3);
  CHECK(run({"analyze"}, "2\na\nb\n0 1\n1\n").status == 2);
  CHECK(run({"analyze", "--input", tmp("missing").string()}).status == 2);
  CHECK(run({"--help"}).status == 0);
  CHECK(run({"--version"}).out == std::string(tool_version) + "\n");
  CHECK_FALSE(is_input_error(ErrorCode::BoundViolation));
  CHECK(is_input_error(ErrorCode::NotZeroHyperbolic));
}

TEST_CASE("reports are deterministic") {
  auto metric = run({"gen", "--family", "random-treeset", "--n", "20", "--seed", "8"}).out;
  CHECK(run({"gen", "--family", "random-treeset", "--n", "20", "--seed", "8"}).out == metric);
  for (const char* cmd : {"analyze", "build-nagata", "build-gupta"}) {
    auto a = stable(json::parse(run({cmd}, metric).out));
    auto b = stable(json::parse(run({cmd}, metric).out));
    CHECK(a == b);
  }
}
