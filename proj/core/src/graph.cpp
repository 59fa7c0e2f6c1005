#include "afembed/graph.hpp"

#include <algorithm>
#include <cctype>

namespace afembed {

bool is_valid_id(std::string_view token) {
  if (token.empty()) return false;
  return std::none_of(token.begin(), token.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
           c == '#' || c == '"';
  });
}

Graph Graph::build(std::vector<VertexId> vertices, std::vector<Edge> edges) {
  Graph g;
  std::sort(vertices.begin(), vertices.end());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!is_valid_id(vertices[i].str()))
      throw GraphError("invalid vertex id '" + vertices[i].str() + "'");
    if (i > 0 && vertices[i] == vertices[i - 1])
      throw GraphError("duplicate vertex id '" + vertices[i].str() + "'");
    g.vertex_lookup_.emplace(vertices[i].str(), i);
  }
  g.vertices_ = std::move(vertices);

  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  g.in_.resize(g.vertices_.size());
  g.out_.resize(g.vertices_.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (!is_valid_id(e.id.str()))
      throw GraphError("invalid edge id '" + e.id.str() + "'");
    if (i > 0 && e.id == edges[i - 1].id)
      throw GraphError("duplicate edge id '" + e.id.str() + "'");
    auto src = g.vertex_lookup_.find(e.source.str());
    auto rng = g.vertex_lookup_.find(e.range.str());
    if (src == g.vertex_lookup_.end())
      throw GraphError("edge '" + e.id.str() + "' has undeclared source '" +
                       e.source.str() + "'");
    if (rng == g.vertex_lookup_.end())
      throw GraphError("edge '" + e.id.str() + "' has undeclared range '" +
                       e.range.str() + "'");
    g.edge_lookup_.emplace(e.id.str(), i);
    g.edge_src_.push_back(src->second);
    g.edge_rng_.push_back(rng->second);
    g.out_[src->second].push_back(i);
    g.in_[rng->second].push_back(i);
  }
  g.edges_ = std::move(edges);
  return g;
}

bool Graph::has_vertex(const VertexId& v) const {
  return vertex_lookup_.contains(v.str());
}

bool Graph::has_edge(const EdgeId& e) const {
  return edge_lookup_.contains(e.str());
}

std::size_t Graph::vertex_index(const VertexId& v) const {
  auto it = vertex_lookup_.find(v.str());
  if (it == vertex_lookup_.end())
    throw GraphError("unknown vertex '" + v.str() + "'");
  return it->second;
}

std::size_t Graph::edge_index(const EdgeId& e) const {
  auto it = edge_lookup_.find(e.str());
  if (it == edge_lookup_.end()) throw GraphError("unknown edge '" + e.str() + "'");
  return it->second;
}

std::vector<EdgeId> Graph::receivers(const VertexId& v) const {
  std::vector<EdgeId> out;
  for (std::size_t e : in_[vertex_index(v)]) out.push_back(edges_[e].id);
  return out;
}

std::vector<EdgeId> Graph::emitters(const VertexId& v) const {
  std::vector<EdgeId> out;
  for (std::size_t e : out_[vertex_index(v)]) out.push_back(edges_[e].id);
  return out;
}

bool is_path(const Graph& g, std::span<const EdgeId> edges) {
  for (const EdgeId& e : edges) g.edge_index(e);
  if (edges.empty()) return false;
  // edges[i] is a_{n-i}; consecutive entries need s(left) = r(right).
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (g.source(edges[i]) != g.range(edges[i + 1])) return false;
  }
  return true;
}

Path Path::vertex(const Graph& g, const VertexId& v) {
  g.vertex_index(v);
  return Path({}, v, v);
}

Path Path::from_edges(const Graph& g, std::vector<EdgeId> edges) {
  if (!is_path(g, edges)) throw GraphError("edge list is not a path");
  VertexId rng = g.range(edges.front());
  VertexId src = g.source(edges.back());
  return Path(std::move(edges), std::move(rng), std::move(src));
}

std::pair<Path, Path> Path::split(const Graph& g, std::size_t k) const {
  if (k == 0 || k >= edges_.size())
    throw PreconditionError("split index must satisfy 0 < k < length");
  const std::size_t outer = edges_.size() - k;
  std::vector<EdgeId> head(edges_.begin(), edges_.begin() + outer);
  std::vector<EdgeId> tail(edges_.begin() + outer, edges_.end());
  return {from_edges(g, std::move(head)), from_edges(g, std::move(tail))};
}

std::string Path::to_string() const {
  if (edges_.empty()) return range_.str();
  std::string out;
  for (const EdgeId& e : edges_) {
    if (!out.empty()) out += ' ';
    out += e.str();
  }
  return out;
}

}  // namespace afembed
