#pragma once

// Replacement of every loop of a graph without entrances by a Bratteli tail.
//
// For a simple loop e_n ... e_1 with u_i = s(e_i) the loop edges are removed
// and a tail is attached: a sink v, level vertices L_1, L_2, ... with mult(k)
// parallel edges from L_k to L_{k-1} (L_0 = v), and edges f_i : v -> u_i.
// The loop edge e_i is then represented by s(f_{i+1}) t s*(f_i) with the
// index taken cyclically (f_{n+1} = f_1), where t is the tail's unitary.
//
// Generated ids for a tail with namespace NS:
//   NS.v          sink
//   NS.L<k>.1     level vertex, k >= 1
//   NS.f<i>       edge v -> u_i
//   NS.b<k>.<m>   m-th edge L_k -> L_{k-1}

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "afembed/ck_term.hpp"
#include "afembed/graph.hpp"
#include "afembed/loops.hpp"

namespace afembed {

/// Edge multiplicities per tail level: a finite prefix followed by a value
/// repeated forever. Entries are >= 1 and the repeated value is >= 2, so the
/// path counts grow without bound.
class MultiplicitySeq {
 public:
  MultiplicitySeq() = default;
  MultiplicitySeq(std::vector<int> prefix, int tail);

  /// "2", "3;2", "3,1;2" (prefix entries before ';').
  static MultiplicitySeq parse(std::string_view text);

  /// Multiplicity of level k >= 1.
  int at(std::size_t level) const;
  const std::vector<int>& prefix() const noexcept { return prefix_; }
  int tail() const noexcept { return tail_; }

  /// N_0, ..., N_depth with N_k = mult(1) * ... * mult(k). Throws on overflow.
  std::vector<std::uint64_t> path_counts(std::size_t depth) const;

  std::string to_string() const;

  friend bool operator==(const MultiplicitySeq&, const MultiplicitySeq&) = default;

 private:
  std::vector<int> prefix_;
  int tail_ = 2;
};

struct BratteliTailSpec {
  std::string ns;
  MultiplicitySeq mult;

  VertexId sink() const { return VertexId(ns + ".v"); }
  /// L_k; level 0 is the sink.
  VertexId level_vertex(std::size_t k) const;
  EdgeId tail_edge(std::size_t k, std::size_t m) const;
  EdgeId f_edge(std::size_t i) const;
};

struct LoopReplacement {
  SimpleLoop loop;
  /// Endpoints of the removed loop edges, in the loop's composition order.
  std::vector<Edge> loop_edges;
  BratteliTailSpec tail;
  /// f_1, ..., f_n with s(f_i) = v and r(f_i) = u_i.
  std::vector<Edge> f_edges;
};

struct AugmentedGraphSpec {
  /// E with every replaced loop edge removed.
  Graph base;
  std::vector<LoopReplacement> replacements;
};

/// Images of the generators of C*(E) as terms over C*(F).
struct GeneratorMap {
  Graph domain;
  std::map<VertexId, CKTerm> vertices;
  std::map<EdgeId, CKTerm> edges;
};

struct Embedding {
  AugmentedGraphSpec spec;
  GeneratorMap map;
};

/// embed() refuses graphs in which a loop has an entrance.
class EntranceError : public PreconditionError {
 public:
  explicit EntranceError(EntranceWitness w)
      : PreconditionError("loop has an entrance at vertex '" + w.entry_vertex.str() +
                          "' via edge '" + w.entry_edge.str() + "'"),
        witness_(std::move(w)) {}
  const EntranceWitness& witness() const noexcept { return witness_; }

 private:
  EntranceWitness witness_;
};

/// Builds F and the generator map. Graphs without loops come back unchanged
/// with the identity map.
Embedding embed(const Graph& g, const MultiplicitySeq& mult = {});

/// F truncated after `depth` tail levels. Throws GraphError on namespace
/// collisions between tails or with the base graph.
Graph materialize(const AugmentedGraphSpec& spec, std::size_t depth);

/// The graph E the spec was built from (base plus the removed loop edges).
Graph original_graph(const AugmentedGraphSpec& spec);

/// Rewrite context over F_depth with one unitary per tail.
CKContext make_context(const AugmentedGraphSpec& spec, std::size_t depth);

/// N_0, ..., N_depth for the given tail: the number of tail paths of each
/// length ending at the sink, i.e. the matrix sizes of the corner's stages.
std::vector<std::uint64_t> corner_dimension(const AugmentedGraphSpec& spec,
                                            std::size_t tail_index, std::size_t depth);

std::string spec_to_json(const AugmentedGraphSpec& spec);
AugmentedGraphSpec spec_from_json(std::string_view text);

/// One line per generator: "vertex <id> = <term>" / "edge <id> = <term>".
std::string map_to_table(const GeneratorMap& map);
/// Inverse of map_to_table. Every generator of `domain` must appear once.
GeneratorMap map_from_table(std::string_view text, const Graph& domain,
                            const CKContext& ctx);

}  // namespace afembed
