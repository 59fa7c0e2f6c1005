#include "afembed/graph_io.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace afembed {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

struct Declared {
  std::size_t line;
  std::size_t column;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

Graph parse_graph_text(std::string_view text) {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::map<std::string, Declared> vertex_pos;
  std::map<std::string, Declared> edge_pos;
  std::vector<std::pair<Declared, Declared>> endpoint_pos;  // per edge: src, dst

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;

    auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto check_id = [&](const Token& t) {
      if (!is_valid_id(t.text))
        throw ParseError("invalid identifier '" + std::string(t.text) + "'",
                         line_no, t.column);
    };
    const Token& kw = tokens[0];
    if (kw.text == "vertex") {
      if (tokens.size() != 2)
        throw ParseError("expected 'vertex <id>'", line_no,
                         tokens.size() < 2 ? line.size() + 1 : tokens[2].column);
      check_id(tokens[1]);
      std::string id(tokens[1].text);
      if (auto it = vertex_pos.find(id); it != vertex_pos.end())
        throw ParseError("duplicate vertex id '" + id + "' (first declared at line " +
                             std::to_string(it->second.line) + ")",
                         line_no, tokens[1].column);
      vertex_pos.emplace(id, Declared{line_no, tokens[1].column});
      vertices.emplace_back(id);
    } else if (kw.text == "edge") {
      if (tokens.size() != 4)
        throw ParseError("expected 'edge <id> <source-id> <range-id>'", line_no,
                         tokens.size() < 4 ? line.size() + 1 : tokens[4].column);
      for (std::size_t k = 1; k < 4; ++k) check_id(tokens[k]);
      std::string id(tokens[1].text);
      if (auto it = edge_pos.find(id); it != edge_pos.end())
        throw ParseError("duplicate edge id '" + id + "' (first declared at line " +
                             std::to_string(it->second.line) + ")",
                         line_no, tokens[1].column);
      edge_pos.emplace(id, Declared{line_no, tokens[1].column});
      edges.push_back({EdgeId(id), VertexId(std::string(tokens[2].text)),
                       VertexId(std::string(tokens[3].text))});
      endpoint_pos.push_back({{line_no, tokens[2].column}, {line_no, tokens[3].column}});
    } else {
      throw ParseError("unknown declaration '" + std::string(kw.text) +
                           "' (expected 'vertex' or 'edge')",
                       line_no, kw.column);
    }
    if (end == text.size()) break;
  }

  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!vertex_pos.contains(edges[i].source.str()))
      throw ParseError("edge '" + edges[i].id.str() + "' has undeclared source '" +
                           edges[i].source.str() + "'",
                       endpoint_pos[i].first.line, endpoint_pos[i].first.column);
    if (!vertex_pos.contains(edges[i].range.str()))
      throw ParseError("edge '" + edges[i].id.str() + "' has undeclared range '" +
                           edges[i].range.str() + "'",
                       endpoint_pos[i].second.line, endpoint_pos[i].second.column);
  }
  return Graph::build(std::move(vertices), std::move(edges));
}

Graph parse_graph_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset is all nlohmann gives us; report it as column on line 1
    throw ParseError(std::string("malformed JSON: ") + e.what(), 1, e.byte);
  }
  if (!doc.is_object()) throw ParseError("graph document must be an object", 1, 1);
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  try {
    for (const auto& v : doc.value("vertices", nlohmann::json::array()))
      vertices.emplace_back(v.get<std::string>());
    for (const auto& e : doc.value("edges", nlohmann::json::array())) {
      edges.push_back({EdgeId(e.at("id").get<std::string>()),
                       VertexId(e.at("src").get<std::string>()),
                       VertexId(e.at("dst").get<std::string>())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad graph document: ") + e.what(), 0, 0);
  }
  try {
    return Graph::build(std::move(vertices), std::move(edges));
  } catch (const GraphError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

Graph parse_graph(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_graph_json(text);
    break;
  }
  return parse_graph_text(text);
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  for (const VertexId& v : g.vertices()) out << "vertex " << v.str() << '\n';
  for (const Edge& e : g.edges())
    out << "edge " << e.id.str() << ' ' << e.source.str() << ' ' << e.range.str()
        << '\n';
  return out.str();
}

std::string serialize_graph_json(const Graph& g) {
  nlohmann::ordered_json doc;
  doc["vertices"] = nlohmann::ordered_json::array();
  for (const VertexId& v : g.vertices()) doc["vertices"].push_back(v.str());
  doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) {
    nlohmann::ordered_json row;
    row["id"] = e.id.str();
    row["src"] = e.source.str();
    row["dst"] = e.range.str();
    doc["edges"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string export_dot(const Graph& g, std::string_view name) {
  std::ostringstream out;
  out << "digraph " << quote(std::string(name)) << " {\n";
  for (const VertexId& v : g.vertices()) out << "  " << quote(v.str()) << ";\n";
  for (const Edge& e : g.edges())
    out << "  " << quote(e.source.str()) << " -> " << quote(e.range.str())
        << " [label=" << quote(e.id.str()) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace afembed
