#include "treeapprox/extend.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "treeapprox/error.hpp"
#include "treeapprox/gupta.hpp"
#include "treeapprox/metric_analysis.hpp"
#include "treeapprox/nagata.hpp"

namespace treeapprox {

namespace {

double norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace

std::string_view scaffold_name(ScaffoldMethod method) {
  return method == ScaffoldMethod::Nagata ? "nagata" : "gupta";
}

ScaffoldMethod parse_scaffold(std::string_view name) {
  if (name == "nagata") return ScaffoldMethod::Nagata;
  if (name == "gupta") return ScaffoldMethod::Gupta;
  throw Error(ErrorCode::MalformedInput, "unknown scaffold method '" + std::string(name) + "'");
}

Scaffold scaffold_embedding(const MetricSpace& z, ScaffoldMethod method) {
  if (method == ScaffoldMethod::Nagata) {
    WeightedTree tree = nagata_tree(z);
    Rational lip = 8 * nagata_constant(z).constant;
    RTree real = realize_tree(tree);
    return Scaffold{std::move(tree), std::move(real), lip};
  }
  WeightedTree tree = gupta_tree(z);
  RTree real = realize_tree(tree);
  return Scaffold{std::move(tree), std::move(real), Rational(8)};
}

TreeLocation one_point_extension(const RTreeMetric& metric, std::span<const Anchor> anchors) {
  const RTree& tree = metric.tree();
  if (tree.edges().empty()) throw Error(ErrorCode::OutOfRange, "one-point extension needs an edge");
  if (anchors.empty()) throw Error(ErrorCode::OutOfRange, "one-point extension needs an anchor");
  for (std::size_t i = 0; i < anchors.size(); ++i)
    for (std::size_t j = i + 1; j < anchors.size(); ++j)
      if (metric.between(anchors[i].location, anchors[j].location) >
          anchors[i].radius + anchors[j].radius)
        throw Error(ErrorCode::InfeasibleConstraints, "constraint balls do not intersect",
                    {i, j});

  std::optional<Rational> best_g;
  TreeLocation best;
  for (std::size_t e = 0; e < tree.edges().size(); ++e) {
    const auto& edge = tree.edges()[e];
    // g(t) = max(A + t, B - t) along the edge, t measured from edge.a
    std::optional<Rational> A, B;
    auto raise = [](std::optional<Rational>& slot, const Rational& v) {
      if (!slot || v > *slot) slot = v;
    };
    for (const auto& anchor : anchors) {
      if (anchor.location.edge == e) {
        raise(A, -anchor.location.offset - anchor.radius);
        raise(B, anchor.location.offset - anchor.radius);
        continue;
      }
      Rational da = metric.to_node(anchor.location, edge.a);
      Rational db = metric.to_node(anchor.location, edge.b);
      if (da < db)
        raise(A, da - anchor.radius);
      else
        raise(B, db + edge.length - anchor.radius);
    }
    Rational t;
    if (!A)
      t = edge.length;
    else if (!B)
      t = 0;
    else {
      t = (*B - *A) / 2;
      if (t < 0) t = 0;
      if (t > edge.length) t = edge.length;
    }
    Rational g = A ? Rational(*A + t) : Rational(*B - t);
    if (A && B && *B - t > g) g = *B - t;
    if (!best_g || g < *best_g) {
      best_g = g;
      best = {e, t};
    }
  }
  if (*best_g > 0) throw Error(ErrorCode::InfeasibleConstraints, "no point satisfies every constraint");
  const auto& edge = tree.edges()[best.edge];
  if (best.offset == 0) return node_location(tree, edge.a);
  if (best.offset == edge.length) return node_location(tree, edge.b);
  return best;
}

std::vector<double> interpolate(const RTree& tree, const std::vector<std::vector<double>>& vertex_values,
                                const TreeLocation& at) {
  const auto& edge = tree.edges()[at.edge];
  const auto& fa = vertex_values[tree.point_at(edge.a)];
  const auto& fb = vertex_values[tree.point_at(edge.b)];
  if (at.offset == 0) return fa;
  if (at.offset == edge.length) return fb;
  const double s = to_double(at.offset / edge.length);
  std::vector<double> out(fa.size());
  for (std::size_t k = 0; k < fa.size(); ++k) out[k] = fa[k] + s * (fb[k] - fa[k]);
  return out;
}

double lipschitz_constant(const MetricSpace& x, const std::vector<std::vector<double>>& values) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      worst = std::max(worst, norm_diff(values[i], values[j]) / to_double(x(i, j)));
  return worst;
}

bool ExtensionResult::within_bound() const {
  return achieved_lip <= to_double(guaranteed_lip) * (1 + 1e-9);
}

ExtensionResult lipschitz_extend(const MetricSpace& x, const ValuedSubset& data, ScaffoldMethod method) {
  const std::size_t n = x.size();
  const auto& zs = data.points;
  if (zs.empty()) throw Error(ErrorCode::MalformedInput, "subset must not be empty");
  if (data.values.size() != zs.size())
    throw Error(ErrorCode::MalformedInput, "one value row per subset point is required");
  const std::size_t m = data.values.front().size();
  if (m == 0) throw Error(ErrorCode::MalformedInput, "values need at least one coordinate");
  std::vector<std::size_t> z_index(n, n);
  for (std::size_t k = 0; k < zs.size(); ++k) {
    if (zs[k] >= n) throw Error(ErrorCode::OutOfRange, "subset point out of range");
    if (z_index[zs[k]] != n) throw Error(ErrorCode::DuplicateLabel, "subset lists a point twice");
    z_index[zs[k]] = k;
    if (data.values[k].size() != m)
      throw Error(ErrorCode::MalformedInput, "value rows differ in length");
    for (double v : data.values[k])
      if (!std::isfinite(v)) throw Error(ErrorCode::MalformedInput, "values must be finite");
  }
  for (std::size_t a = 0; a < zs.size(); ++a)
    for (std::size_t b = a + 1; b < zs.size(); ++b) {
      double d = to_double(x(zs[a], zs[b]));
      if (norm_diff(data.values[a], data.values[b]) > d * (1 + input_lipschitz_tolerance))
        throw Error(ErrorCode::InfeasibleConstraints, "input values are not 1-Lipschitz",
                    {zs[a], zs[b]});
    }

  MetricSpace z = x.subspace(zs);
  ExtensionResult result{{}, scaffold_embedding(z, method), {}, 0.0, {}};
  result.guaranteed_lip = result.scaffold.guaranteed_lip;
  result.extended.assign(n, {});

  if (zs.size() == 1) {
    for (auto& v : result.extended) v = data.values[0];
    result.achieved_lip = lipschitz_constant(x, result.extended);
    return result;
  }

  const RTree& w = result.scaffold.realization;
  RTreeMetric metric(w);
  const Rational& L = result.guaranteed_lip;
  result.placement.assign(n, {});
  std::vector<std::size_t> placed;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    result.placement[zs[k]] = node_location(w, w.node_of(k));
    placed.push_back(zs[k]);
  }
  for (std::size_t p : x.label_order()) {
    if (z_index[p] != n) continue;
    std::vector<Anchor> anchors;
    anchors.reserve(placed.size());
    for (std::size_t y : placed) anchors.push_back({result.placement[y], L * x(p, y)});
    result.placement[p] = one_point_extension(metric, anchors);
    placed.push_back(p);
  }

  for (std::size_t p = 0; p < n; ++p)
    result.extended[p] = z_index[p] != n ? data.values[z_index[p]]
                                         : interpolate(w, data.values, result.placement[p]);
  result.achieved_lip = lipschitz_constant(x, result.extended);
  return result;
}

}  // namespace treeapprox
