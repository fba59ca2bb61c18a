#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "treeapprox/metric_analysis.hpp"
#include "treeapprox/metric_space.hpp"
#include "treeapprox/rational.hpp"
#include "treeapprox/weighted_tree.hpp"

namespace treeapprox::io {

using nlohmann::json;

// Either the matrix text form (n, then n label lines, then n rows of n
// numbers) or a JSON object {"points": [...], "distances": [[...]]}. The JSON
// form is recognized by a leading '{'. Throws MalformedInput.
LabeledMatrix parse_metric(std::string_view text);
MetricSpace read_metric(std::string_view text);

std::string format_metric_text(const MetricSpace& space);
std::string format_metric_json(const MetricSpace& space);

// {"vertices": [labels], "edges": [{"u": label, "v": label, "w": "p/q"}]}
json tree_to_json(const MetricSpace& space, const WeightedTree& tree);
// Throws UnknownLabel, MalformedInput or NotASpanningTree.
WeightedTree tree_from_json(const MetricSpace& space, const json& doc);

// {"exact": "p/q", "approx": double}
json rational_json(const Rational& value);
json nagata_report_json(const MetricSpace& space, const NagataReport& report);
json distortion_report_json(const MetricSpace& space, const DistortionReport& report);

// One label per non-empty line.
std::vector<std::string> parse_label_list(std::string_view text);
// Rows of whitespace-separated doubles, one row per non-empty line.
std::vector<std::vector<double>> parse_value_rows(std::string_view text);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace treeapprox::io
