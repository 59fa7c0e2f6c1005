#pragma once

// Graph documents.
//
// Line format (order-insensitive, '#' starts a comment):
//
//   vertex <id>
//   edge <id> <source-id> <range-id>
//
// Structured format: {"vertices": [...], "edges": [{"id", "src", "dst"}]}
// where "dst" is the range vertex.

#include <string>
#include <string_view>

#include "afembed/graph.hpp"

namespace afembed {

/// Parses the line format. Syntax errors carry line/column; duplicate ids and
/// undeclared endpoints are reported at the offending declaration.
Graph parse_graph_text(std::string_view text);

/// Parses the structured (JSON) format.
Graph parse_graph_json(std::string_view text);

/// Dispatches on the first non-blank character: '{' selects JSON.
Graph parse_graph(std::string_view text);

/// Canonical line-format document; parse_graph_text inverts it exactly.
std::string serialize_graph(const Graph& g);

std::string serialize_graph_json(const Graph& g);

/// Graphviz digraph. Arcs point source -> range and carry the edge id label.
std::string export_dot(const Graph& g, std::string_view name = "E");

}  // namespace afembed
