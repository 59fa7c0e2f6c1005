#pragma once

// Loop structure of a graph and the finiteness classification.
//
// A loop has an entrance when one of its vertices receives more than one
// edge. For finite graphs "no loop has an entrance" is equivalent to "every
// vertex that lies on a cycle has exactly one receiving edge": a cycle
// vertex with two receivers sits on a simple loop whose entrance is that
// vertex, and conversely an entrance r(a_i) is itself a cycle vertex with at
// least two receivers. Under that condition each nontrivial strongly
// connected component is a single simple loop, so the loops are disjoint and
// are recovered by walking receivers backwards.
//
// The entrance test is applied to cycle vertices rather than to arbitrary
// (possibly non-simple) loops; every vertex of a non-simple loop lies on a
// simple loop, so nothing is lost.

#include <optional>
#include <string>
#include <vector>

#include "afembed/graph.hpp"

namespace afembed {

/// Simple loop e_n ... e_1 with u_i = s(e_i), r(e_n) = u_1.
class SimpleLoop {
 public:
  /// `edges` in composition order (e_n first). Throws GraphError when the
  /// list is not a closed path or its range vertices repeat.
  static SimpleLoop make(const Graph& g, std::vector<EdgeId> edges);

  std::size_t length() const noexcept { return edges_.size(); }
  /// Composition order: e_n, ..., e_1.
  const std::vector<EdgeId>& edges() const noexcept { return edges_; }
  /// u_1, ..., u_n.
  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }

  /// e_i and u_i for 1 <= i <= n.
  const EdgeId& edge(std::size_t i) const { return edges_[edges_.size() - i]; }
  const VertexId& vertex(std::size_t i) const { return vertices_[i - 1]; }

  bool contains(const EdgeId& e) const;
  bool contains(const VertexId& v) const;

  /// The same loop read from the vertex u_k: the result has u'_1 = u_k.
  SimpleLoop rotated(const Graph& g, std::size_t k) const;

  std::string to_string() const;

  friend bool operator==(const SimpleLoop&, const SimpleLoop&) = default;

 private:
  std::vector<EdgeId> edges_;
  std::vector<VertexId> vertices_;
};

/// Entrance evidence: a loop `alpha` based at `entry_vertex` and a second
/// path `beta` with r(beta) = r(alpha) that starts with a different edge at
/// the range end. The default construction uses beta = (entry_edge).
struct EntranceWitness {
  SimpleLoop loop;
  VertexId entry_vertex;
  EdgeId entry_edge;
  Path alpha;
  Path beta;
};

enum class Verdict { AF, AFEmbeddableNotAF, NotFinite };

std::string to_string(Verdict v);

struct Classification {
  Verdict verdict;
  /// Disjoint simple loops, filled for AFEmbeddableNotAF.
  std::vector<SimpleLoop> loops;
  /// Filled for NotFinite.
  std::optional<EntranceWitness> witness;
};

/// A violating cycle vertex and a receiving edge of it that is off the loop
/// chosen through that vertex.
struct Entrance {
  VertexId vertex;
  EdgeId edge;
  friend bool operator==(const Entrance&, const Entrance&) = default;
};

/// Vertices that lie on at least one loop, sorted.
std::vector<VertexId> cycle_vertices(const Graph& g);

/// Nullopt iff no loop has an entrance. Otherwise the smallest cycle vertex
/// with more than one receiver, and the smallest receiving edge that is not
/// the closing edge of the DFS loop through it.
std::optional<Entrance> entrance_violation(const Graph& g);

/// Disjoint simple loops covering the cycle vertices, each starting at its
/// smallest vertex (u_1) and sorted by it. Throws PreconditionError when an
/// entrance exists.
std::vector<SimpleLoop> disjoint_simple_loops(const Graph& g);

/// Nullopt iff no loop has an entrance.
std::optional<EntranceWitness> find_entrance_witness(const Graph& g);

Classification classify(const Graph& g);

/// Throws PreconditionError("invalid witness: ...") unless the witness is
/// internally consistent for `g`.
void validate_witness(const Graph& g, const EntranceWitness& w);

/// The rendered infinite-projection argument for a witness.
struct InfinitenessStatement {
  Path alpha;
  Path beta;
  /// s*(alpha) s(alpha) = p(s(alpha))
  std::string isometry;
  /// s(alpha) s*(alpha) < s(alpha) s*(alpha) + s(beta) s*(beta) <= p(s(alpha))
  std::string chain;
};

InfinitenessStatement witness_infinite(const Graph& g, const EntranceWitness& w);

/// s_a as a term string: s(a_n) ... s(a_1), or p(v) for a vertex path.
std::string path_term(const Path& p);
/// s_a^*: s*(a_1) ... s*(a_n), or p(v) for a vertex path.
std::string path_adjoint_term(const Path& p);

}  // namespace afembed
