#pragma once

// Finite directed multigraphs E = (E^0, E^1, r, s) and paths in them.
//
// Paths are stored in composition order: the edge list (a_n, ..., a_1) has
// a_1 traversed first, r(a_i) = s(a_{i+1}), range r(a) = r(a_n) and source
// s(a) = s(a_1). Every container in this library that holds a path keeps
// that order, so index 0 is always the range end.

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "afembed/errors.hpp"

namespace afembed {

/// Opaque string identifier. The tag keeps vertex and edge ids apart.
template <class Tag>
class Id {
 public:
  Id() = default;
  explicit Id(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const Id&, const Id&) = default;
  friend bool operator==(const Id&, const Id&) = default;

 private:
  std::string value_;
};

using VertexId = Id<struct VertexTag>;
using EdgeId = Id<struct EdgeTag>;

/// True when `token` is usable as an id: nonempty and free of whitespace,
/// parentheses, '#' and '"'.
bool is_valid_id(std::string_view token);

struct Edge {
  EdgeId id;
  VertexId source;
  VertexId range;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable finite directed multigraph. Vertices are kept sorted by id and
/// edges sorted by edge id, so iteration order is canonical and two graphs
/// compare equal iff they have the same vertex set and edge set.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds. Throws GraphError on duplicate ids, invalid
  /// tokens, or edges whose endpoints are not declared.
  static Graph build(std::vector<VertexId> vertices, std::vector<Edge> edges);

  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  bool has_vertex(const VertexId& v) const;
  bool has_edge(const EdgeId& e) const;

  std::size_t vertex_index(const VertexId& v) const;
  std::size_t edge_index(const EdgeId& e) const;

  const Edge& edge(const EdgeId& e) const { return edges_[edge_index(e)]; }
  const VertexId& source(const EdgeId& e) const { return edge(e).source; }
  const VertexId& range(const EdgeId& e) const { return edge(e).range; }

  /// r^{-1}(v), sorted by edge id. Throws GraphError for unknown v.
  std::vector<EdgeId> receivers(const VertexId& v) const;
  /// s^{-1}(v), sorted by edge id. Throws GraphError for unknown v.
  std::vector<EdgeId> emitters(const VertexId& v) const;

  /// Index-based adjacency, for algorithms that want to avoid string lookups.
  const std::vector<std::size_t>& receiver_indices(std::size_t vertex) const {
    return in_[vertex];
  }
  const std::vector<std::size_t>& emitter_indices(std::size_t vertex) const {
    return out_[vertex];
  }
  std::size_t source_index(std::size_t edge) const { return edge_src_[edge]; }
  std::size_t range_index(std::size_t edge) const { return edge_rng_[edge]; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> vertex_lookup_;
  std::unordered_map<std::string, std::size_t> edge_lookup_;
  std::vector<std::size_t> edge_src_;
  std::vector<std::size_t> edge_rng_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
};

/// True iff the list (a_n, ..., a_1) is composable: r(a_i) = s(a_{i+1}).
/// An empty list is not a path. Throws GraphError on unknown edge ids.
bool is_path(const Graph& g, std::span<const EdgeId> edges);

/// A path in a graph: either a vertex (length 0) or a composable edge list
/// in composition order.
class Path {
 public:
  static Path vertex(const Graph& g, const VertexId& v);
  /// Throws GraphError when the list is empty or not composable.
  static Path from_edges(const Graph& g, std::vector<EdgeId> edges);

  std::size_t length() const noexcept { return edges_.size(); }
  bool is_vertex() const noexcept { return edges_.empty(); }
  const std::vector<EdgeId>& edges() const noexcept { return edges_; }
  const VertexId& range() const noexcept { return range_; }
  const VertexId& source() const noexcept { return source_; }

  /// Splits a_n ... a_1 into (a_n ... a_{k+1}, a_k ... a_1) for 0 < k < n.
  std::pair<Path, Path> split(const Graph& g, std::size_t k) const;

  /// Space-separated edge ids in composition order, or the vertex id.
  std::string to_string() const;

  friend bool operator==(const Path&, const Path&) = default;

 private:
  Path(std::vector<EdgeId> edges, VertexId range, VertexId source)
      : edges_(std::move(edges)), range_(std::move(range)),
        source_(std::move(source)) {}

  std::vector<EdgeId> edges_;
  VertexId range_;
  VertexId source_;
};

}  // namespace afembed

template <class Tag>
struct std::hash<afembed::Id<Tag>> {
  std::size_t operator()(const afembed::Id<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
