#include "treeapprox/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <sstream>

#include "treeapprox/error.hpp"

namespace treeapprox::io {

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedInput, why); }

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> nonempty_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    if (!line.empty()) out.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    pos = line.find_first_not_of(" \t\r", pos);
    if (pos == std::string_view::npos) break;
    auto end = line.find_first_of(" \t\r", pos);
    out.push_back(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end;
  }
  return out;
}

Rational rational_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return parse_rational(v.dump());
  // shortest round-trip decimal of the double
  if (v.is_number_float()) return parse_rational(v.dump());
  malformed("distance entries must be numbers or strings");
}

LabeledMatrix parse_json_metric(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc.contains("distances"))
    malformed("metric document needs \"points\" and \"distances\"");
  LabeledMatrix m;
  for (const auto& p : doc["points"]) {
    if (!p.is_string()) malformed("point labels must be strings");
    m.labels.push_back(p.get<std::string>());
  }
  if (!doc["distances"].is_array()) malformed("\"distances\" must be an array of rows");
  for (const auto& row : doc["distances"]) {
    if (!row.is_array()) malformed("\"distances\" must be an array of rows");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    m.rows.push_back(std::move(r));
  }
  return m;
}

}  // namespace

LabeledMatrix parse_metric(std::string_view text) {
  std::string_view body = trim(text);
  if (body.empty()) malformed("empty metric input");
  if (body.front() == '{') return parse_json_metric(body);

  auto lines = nonempty_lines(body);
  std::size_t n = 0;
  {
    auto first = lines.front();
    auto [ptr, ec] = std::from_chars(first.data(), first.data() + first.size(), n);
    if (ec != std::errc() || ptr != first.data() + first.size() || n == 0)
      malformed("first line must be the point count");
  }
  if (lines.size() < 1 + n) malformed("expected " + std::to_string(n) + " label lines");
  LabeledMatrix m;
  for (std::size_t i = 0; i < n; ++i) m.labels.emplace_back(lines[1 + i]);
  std::vector<Rational> values;
  for (std::size_t l = 1 + n; l < lines.size(); ++l)
    for (auto t : tokens(lines[l])) values.push_back(parse_rational(t));
  if (values.size() != n * n)
    malformed("expected " + std::to_string(n * n) + " distance entries, got " +
              std::to_string(values.size()));
  m.rows.assign(n, {});
  for (std::size_t i = 0; i < n; ++i)
    m.rows[i].assign(values.begin() + static_cast<std::ptrdiff_t>(i * n),
                     values.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
  return m;
}

MetricSpace read_metric(std::string_view text) { return validate_metric(parse_metric(text)); }

std::string format_metric_text(const MetricSpace& space) {
  std::ostringstream out;
  const std::size_t n = space.size();
  out << n << '\n';
  for (std::size_t i = 0; i < n; ++i) out << space.label(i) << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << to_string(space(i, j));
    out << '\n';
  }
  return out.str();
}

std::string format_metric_json(const MetricSpace& space) {
  json doc;
  doc["points"] = json::array();
  for (const auto& l : space.labels()) doc["points"].push_back(l);
  doc["distances"] = json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < space.size(); ++j) row.push_back(to_string(space(i, j)));
    doc["distances"].push_back(std::move(row));
  }
  return doc.dump() + "\n";
}

json tree_to_json(const MetricSpace& space, const WeightedTree& tree) {
  json doc;
  doc["vertices"] = json::array();
  for (const auto& l : space.labels()) doc["vertices"].push_back(l);
  doc["edges"] = json::array();
  for (const auto& e : tree.edges())
    doc["edges"].push_back({{"u", space.label(e.u)}, {"v", space.label(e.v)}, {"w", to_string(e.weight)}});
  return doc;
}

WeightedTree tree_from_json(const MetricSpace& space, const json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
    malformed("tree document needs \"vertices\" and \"edges\"");
  auto lookup = [&](const json& v) {
    if (!v.is_string()) malformed("tree vertices must be labels");
    auto idx = space.index_of(v.get<std::string>());
    if (!idx) throw Error(ErrorCode::UnknownLabel, "unknown label '" + v.get<std::string>() + "'");
    return *idx;
  };
  std::vector<bool> seen(space.size(), false);
  std::size_t count = 0;
  for (const auto& v : doc["vertices"]) {
    std::size_t i = lookup(v);
    if (seen[i]) throw Error(ErrorCode::DuplicateLabel, "vertex listed twice: " + space.label(i));
    seen[i] = true;
    ++count;
  }
  if (count != space.size())
    throw Error(ErrorCode::NotASpanningTree, "tree vertices must be exactly the metric points");
  std::vector<TreeEdge> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("w"))
      malformed("tree edges need u, v and w");
    edges.push_back({lookup(e["u"]), lookup(e["v"]), rational_from_json(e["w"])});
  }
  return WeightedTree(space.size(), std::move(edges));
}

json rational_json(const Rational& value) {
  return {{"exact", to_string(value)}, {"approx", to_double(value)}};
}

json nagata_report_json(const MetricSpace& space, const NagataReport& r) {
  json block = json::array();
  for (std::size_t i : r.witness_block) block.push_back(space.label(i));
  return {{"constant", rational_json(r.constant)},
          {"witness_scale", rational_json(r.witness_scale)},
          {"witness_block", block},
          {"is_ultrametric", r.is_ultrametric},
          {"is_zero_hyperbolic", r.is_zero_hyperbolic},
          {"separation", rational_json(r.separation)},
          {"diameter", rational_json(r.diameter)}};
}

json distortion_report_json(const MetricSpace& space, const DistortionReport& r) {
  auto pair = [&](const PointPair& p) { return json::array({space.label(p.first), space.label(p.second)}); };
  return {{"expansion", rational_json(r.expansion)},
          {"contraction", rational_json(r.contraction)},
          {"distortion", rational_json(r.distortion)},
          {"witness_expand", pair(r.witness_expand)},
          {"witness_contract", pair(r.witness_contract)}};
}

std::vector<std::string> parse_label_list(std::string_view text) {
  std::vector<std::string> out;
  for (auto line : nonempty_lines(text)) out.emplace_back(line);
  return out;
}

std::vector<std::vector<double>> parse_value_rows(std::string_view text) {
  std::vector<std::vector<double>> rows;
  for (auto line : nonempty_lines(text)) {
    std::vector<double> row;
    for (auto t : tokens(line)) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec != std::errc() || ptr != t.data() + t.size())
        malformed("bad number '" + std::string(t) + "' in values");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::IoFailure, "SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

}  // namespace treeapprox::io
