#include "treeapprox/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "treeapprox/error.hpp"
#include "treeapprox/extend.hpp"
#include "treeapprox/fixtures.hpp"
#include "treeapprox/gupta.hpp"
#include "treeapprox/io.hpp"
#include "treeapprox/metric_analysis.hpp"
#include "treeapprox/nagata.hpp"
#include "treeapprox/search.hpp"

namespace treeapprox {

namespace {

using io::json;
using Clock = std::chrono::steady_clock;

unsigned default_threads() {
  if (const char* env = std::getenv("TREEAPPROX_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min(v, 256ul));
  }
  return 1;
}

struct Streams {
  std::istream& in;
  std::ostream& out;
};

bool is_stdio(const std::string& path) { return path.empty() || path == "-"; }

std::string read_source(const std::string& path, Streams& s) {
  if (is_stdio(path)) return std::string(std::istreambuf_iterator<char>(s.in), {});
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoFailure, "cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

void write_sink(const std::string& path, const std::string& content, Streams& s) {
  if (is_stdio(path)) {
    s.out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << content)) throw Error(ErrorCode::IoFailure, "cannot write " + path);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

struct Options {
  std::string input = "-";
  std::string out;
  std::string report;
  std::string trace;
  std::string root;
  std::string method;
  std::string subset;
  std::string values;
  std::string family;
  std::optional<int> n, N, k;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1000000;
  std::uint64_t iterations = 100;
  bool symmetry = false;
  unsigned threads = 1;
};

class Runner {
 public:
  Runner(const std::vector<std::string>& args, Streams streams, const Options& opt)
      : args_(args), s_(streams), opt_(opt), start_(Clock::now()) {}

  // Base report with provenance fields.
  json base(const std::string& command, const std::string& input_text) {
    json r;
    r["tool"] = "treeapprox";
    r["version"] = tool_version;
    r["subcommand"] = command;
    r["command"] = args_;
    if (!input_text.empty()) r["input_digest"] = "sha256:" + io::sha256_hex(input_text);
    return r;
  }

  int finish(json& report, const std::string& path) {
    report["timing_seconds"] = std::chrono::duration<double>(Clock::now() - start_).count();
    write_sink(path, dump(report), s_);
    return 0;
  }

  int analyze() {
    std::string text = read_source(opt_.input, s_);
    MetricSpace space = io::read_metric(text);
    json r = base("analyze", text);
    r["points"] = space.size();
    r["distinct_distances"] = space.distinct_distances().size();
    r["nagata"] = io::nagata_report_json(space, nagata_constant(space));
    return finish(r, opt_.report);
  }

  int build_nagata() {
    std::string text = read_source(opt_.input, s_);
    MetricSpace space = io::read_metric(text);
    std::optional<std::size_t> root;
    if (!opt_.root.empty()) {
      root = space.index_of(opt_.root);
      if (!root) throw Error(ErrorCode::UnknownLabel, "unknown root label '" + opt_.root + "'");
    }
    json r = base("build-nagata", text);
    NagataReport nr = nagata_constant(space);
    r["nagata"] = io::nagata_report_json(space, nr);
    json construction = {{"method", "nagata"}};
    std::optional<WeightedTree> tree;
    bool violated = false;
    if (space.size() == 1) {
      tree.emplace(1, std::vector<TreeEdge>{});
      construction["root"] = space.label(0);
      construction["depth"] = 0;
      r["bound"] = io::rational_json(0);
    } else {
      ChainHierarchy h = build_hierarchy(space, root);
      tree.emplace(nagata_tree(space, h));
      NagataCheck check = check_nagata_invariants(space, h, *tree, nr.constant);
      Rational bound = nagata_bound(nr.constant, h.depth());
      construction["root"] = space.label(h.root_point);
      construction["min_exponent"] = h.min_exponent();
      construction["max_exponent"] = h.max_exponent();
      construction["depth"] = h.depth();
      construction["radius_violations"] = check.radius_violations;
      construction["split_violations"] = check.split_violations;
      construction["worst_radius_ratio"] = io::rational_json(check.worst_radius_ratio);
      r["bound"] = io::rational_json(bound);
      DistortionReport d = distortion(space, *tree);
      violated = d.distortion > bound || check.radius_violations > 0 || check.split_violations > 0;
    }
    r["construction"] = construction;
    r["distortion"] = io::distortion_report_json(space, distortion(space, *tree));
    r["tree"] = io::tree_to_json(space, *tree);
    if (!opt_.out.empty()) write_sink(opt_.out, dump(io::tree_to_json(space, *tree)), s_);
    finish(r, opt_.report);
    if (violated) throw Error(ErrorCode::BoundViolation, "chain-hierarchy tree exceeds its bound");
    return 0;
  }

  json checks_json(const GuptaChecks& c) {
    return {{"pairs", c.pairs},
            {"sides", c.sides},
            {"term_one_violations", c.term_one_violations},
            {"term_two_violations", c.term_two_violations},
            {"ck_violations", c.ck_violations},
            {"claim_violations", c.claim_violations},
            {"identity_violations", c.identity_violations},
            {"side_violations", c.side_violations},
            {"cross_violations", c.cross_violations},
            {"pred_violations", c.pred_violations},
            {"pred_splits", c.pred_splits},
            {"distortion_violations", c.distortion_violations},
            {"max_term_one_ratio", io::rational_json(c.max_term_one_ratio)},
            {"max_term_two_ratio", io::rational_json(c.max_term_two_ratio)},
            {"max_component_distortion", io::rational_json(c.max_distortion)}};
  }

  json trace_json(const MetricSpace& space, const GuptaResult& g) {
    json comps = json::array();
    auto side = [&](const SideTerms& t) {
      return json{{"m", t.length},
                  {"tree_length", to_string(t.tree_length)},
                  {"d_xm_v1", to_string(t.to_first)},
                  {"term_one", to_string(t.term_one)},
                  {"term_two", to_string(t.term_two)}};
    };
    for (const auto& c : g.components) {
      json levels = json::array();
      for (std::size_t s = 0; s < c.spots.size(); ++s) {
        const auto& v = c.spots[s];
        while (levels.size() <= v.level) levels.push_back(json::array());
        levels[v.level].push_back({{"index", s},
                                   {"node", v.node == RTree::steiner ? json(nullptr) : json(v.node)},
                                   {"height", to_string(v.height)},
                                   {"depth", to_string(v.depth)},
                                   {"claim", space.label(v.claim)},
                                   {"pred", v.pred}});
      }
      json edges = json::array();
      for (auto [a, b] : c.edges) edges.push_back({space.label(a), space.label(b)});
      json boundary = json::array();
      for (std::size_t p : c.boundary) boundary.push_back(space.label(p));
      json pairs = json::array();
      for (const auto& p : c.pairs) {
        json pr = {{"x", space.label(p.x)}, {"y", space.label(p.y)}, {"x1", space.label(p.top)}};
        if (p.side_x.length > 1) pr["side_x"] = side(p.side_x);
        if (p.side_y.length > 1) pr["side_y"] = side(p.side_y);
        pairs.push_back(std::move(pr));
      }
      comps.push_back({{"root", {{"edge", c.root.edge}, {"offset", to_string(c.root.offset)}}},
                       {"boundary", boundary},
                       {"levels", levels},
                       {"edges", edges},
                       {"checks", checks_json(c.checks)},
                       {"pairs", pairs}});
    }
    return {{"components", comps}};
  }

  int build_gupta() {
    std::string text = read_source(opt_.input, s_);
    MetricSpace space = io::read_metric(text);
    json r = base("build-gupta", text);
    GuptaResult g = gupta_construct(space, !opt_.trace.empty());
    DistortionReport d = distortion(space, g.tree);
    r["construction"] = {{"method", "gupta"},
                         {"components", g.components.size()},
                         {"realization_nodes", g.rtree_nodes}};
    r["checks"] = checks_json(g.checks);
    r["bound"] = io::rational_json(8);
    r["distortion"] = io::distortion_report_json(space, d);
    r["tree"] = io::tree_to_json(space, g.tree);
    if (!opt_.out.empty()) write_sink(opt_.out, dump(io::tree_to_json(space, g.tree)), s_);
    if (!opt_.trace.empty()) write_sink(opt_.trace, dump(trace_json(space, g)), s_);
    finish(r, opt_.report);
    if (g.checks.violations() > 0 || d.distortion >= 8)
      throw Error(ErrorCode::BoundViolation, "halving-process checks failed");
    return 0;
  }

  int search_opt() {
    std::string text = read_source(opt_.input, s_);
    MetricSpace space = io::read_metric(text);
    json r = base("search-opt", text);
    SearchResult result;
    if (opt_.method == "exhaustive") {
      result = min_distortion_exhaustive(space, {opt_.threads, opt_.symmetry});
    } else if (opt_.method == "bnb") {
      result = min_distortion_bnb(space, opt_.budget);
    } else if (opt_.method == "local") {
      WeightedTree start = nagata_tree(space);
      result.best_tree = improve_local(space, start, opt_.seed, opt_.iterations, opt_.threads);
      result.best_distortion = distortion(space, result.best_tree).distortion;
      result.lower_bound = 1;
      result.method = SearchMethod::Local;
      result.complete = false;
      r["start_distortion"] = io::rational_json(distortion(space, start).distortion);
    } else {
      throw Error(ErrorCode::MalformedInput, "unknown search method '" + opt_.method + "'");
    }
    r["method"] = method_name(result.method);
    r["best_distortion"] = io::rational_json(result.best_distortion);
    r["lower_bound"] = io::rational_json(result.lower_bound);
    r["trees_examined"] = result.trees_examined;
    r["nodes_explored"] = result.nodes_explored;
    r["complete"] = result.complete;
    r["distortion"] = io::distortion_report_json(space, distortion(space, result.best_tree));
    r["tree"] = io::tree_to_json(space, result.best_tree);
    if (!opt_.out.empty()) write_sink(opt_.out, dump(io::tree_to_json(space, result.best_tree)), s_);
    return finish(r, opt_.report);
  }

  int extend() {
    std::string text = read_source(opt_.input, s_);
    MetricSpace space = io::read_metric(text);
    if (opt_.subset.empty() || opt_.values.empty())
      throw Error(ErrorCode::MalformedInput, "extend needs --subset and --values");
    std::string subset_text = read_source(opt_.subset, s_);
    std::string values_text = read_source(opt_.values, s_);
    ValuedSubset data;
    for (const auto& label : io::parse_label_list(subset_text)) {
      auto idx = space.index_of(label);
      if (!idx) throw Error(ErrorCode::UnknownLabel, "unknown subset label '" + label + "'");
      data.points.push_back(*idx);
    }
    data.values = io::parse_value_rows(values_text);
    ScaffoldMethod method = parse_scaffold(opt_.method.empty() ? "nagata" : opt_.method);
    ExtensionResult result = lipschitz_extend(space, data, method);

    json r = base("extend", text + subset_text + values_text);
    r["method"] = scaffold_name(method);
    r["subset_size"] = data.points.size();
    r["dimension"] = data.values.empty() ? 0 : data.values.front().size();
    r["guaranteed_lip"] = io::rational_json(result.guaranteed_lip);
    r["achieved_lip"] = result.achieved_lip;
    r["within_bound"] = result.within_bound();
    MetricSpace z = space.subspace(data.points);
    r["scaffold"] = io::tree_to_json(z, result.scaffold.tree);

    std::string lines;
    char buf[64];
    for (std::size_t p : space.label_order()) {
      lines += space.label(p);
      for (double v : result.extended[p]) {
        std::snprintf(buf, sizeof buf, " %.17g", v);
        lines += buf;
      }
      lines += '\n';
    }
    if (!opt_.out.empty()) write_sink(opt_.out, lines, s_);
    finish(r, opt_.report);
    if (!result.within_bound())
      throw Error(ErrorCode::BoundViolation, "extension exceeds its Lipschitz guarantee");
    return 0;
  }

  int gen() {
    FixtureParams p{opt_.n, opt_.N, opt_.k, opt_.seed};
    MetricSpace space = generate_fixture(opt_.family, p);
    bool as_json = opt_.out.size() >= 5 && opt_.out.compare(opt_.out.size() - 5, 5, ".json") == 0;
    write_sink(opt_.out, as_json ? io::format_metric_json(space) : io::format_metric_text(space), s_);
    return 0;
  }

 private:
  std::vector<std::string> args_;
  Streams s_;
  const Options& opt_;
  Clock::time_point start_;
};

void error_document(std::ostream& err, std::string_view name, const std::string& message,
                    const std::vector<std::string>& witness = {}) {
  json doc = {{"error", name}, {"message", message}};
  if (!witness.empty()) doc["witness"] = witness;
  err << doc.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  opt.threads = default_threads();
  CLI::App app{"Tree approximation of finite metric spaces", "treeapprox"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);

  auto input = [&](CLI::App* c) { c->add_option("--input", opt.input, "metric file, - for stdin"); };
  auto* analyze = app.add_subcommand("analyze", "metric checks and the Nagata constant");
  input(analyze);
  analyze->add_option("--report", opt.report, "report file (default stdout)");

  auto* nagata = app.add_subcommand("build-nagata", "chain-hierarchy spanning tree");
  input(nagata);
  nagata->add_option("--root", opt.root, "anchor point label");
  nagata->add_option("--out", opt.out, "tree file");
  nagata->add_option("--report", opt.report, "report file (default stdout)");

  auto* gupta = app.add_subcommand("build-gupta", "sphere-halving spanning tree for tree-like metrics");
  input(gupta);
  gupta->add_option("--out", opt.out, "tree file");
  gupta->add_option("--report", opt.report, "report file (default stdout)");
  gupta->add_option("--trace", opt.trace, "trace file");

  auto* search = app.add_subcommand("search-opt", "minimum-distortion spanning tree search");
  input(search);
  search->add_option("--method", opt.method, "exhaustive|bnb|local")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "bnb", "local"}));
  search->add_option("--budget", opt.budget, "branch-and-bound node budget");
  search->add_option("--seed", opt.seed, "local search seed");
  search->add_option("--iterations", opt.iterations, "local search rounds");
  search->add_flag("--symmetry", opt.symmetry, "exhaustive: assume a transitive isometry group");
  search->add_option("--threads", opt.threads, "worker threads");
  search->add_option("--out", opt.out, "tree file");
  search->add_option("--report", opt.report, "report file (default stdout)");

  auto* ext = app.add_subcommand("extend", "Lipschitz extension through a tree scaffold");
  input(ext);
  ext->add_option("--subset", opt.subset, "file with one subset label per line")->required();
  ext->add_option("--values", opt.values, "rows of m values in subset order")->required();
  ext->add_option("--method", opt.method, "nagata|gupta")->check(CLI::IsMember({"nagata", "gupta"}));
  ext->add_option("--out", opt.out, "extended values file");
  ext->add_option("--report", opt.report, "report file (default stdout)");

  auto* gen = app.add_subcommand("gen", "fixture generator");
  gen->add_option("--family", opt.family,
                  "binary-leaves|cycle|adic|example33|random-ultrametric|random-treeset")
      ->required();
  gen->add_option("--n", opt.n, "point count or word length");
  gen->add_option("--N", opt.N, "tree height (example33)");
  gen->add_option("--k", opt.k, "exponent (adic)");
  gen->add_option("--seed", opt.seed, "random seed");
  gen->add_option("--out", opt.out, "metric file (.json for the JSON form)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << tool_version << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    bool unknown = dynamic_cast<const CLI::RequiredError*>(&e) && app.get_subcommands().empty();
    error_document(err, unknown ? "UnknownCommand" : "BadFlag", e.what());
    return 2;
  }

  Streams streams{in, out};
  Runner runner(args, streams, opt);
  try {
    if (analyze->parsed()) return runner.analyze();
    if (nagata->parsed()) return runner.build_nagata();
    if (gupta->parsed()) return runner.build_gupta();
    if (search->parsed()) return runner.search_opt();
    if (ext->parsed()) return runner.extend();
    if (gen->parsed()) return runner.gen();
  } catch (const Error& e) {
    std::vector<std::string> witness;
    for (std::size_t i : e.witness()) witness.push_back(std::to_string(i));
    error_document(err, error_name(e.code()), e.what(), witness);
    return is_input_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    error_document(err, "IoFailure", e.what());
    return 2;
  }
  error_document(err, "UnknownCommand", "no subcommand given");
  return 2;
}

}  // namespace treeapprox
