#include "afembed/loops.hpp"

#include <algorithm>
#include <set>

namespace afembed {
namespace {

constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);

// Iterative Tarjan. Returns, per vertex index, whether it lies on a cycle.
std::vector<bool> on_cycle_flags(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false), cyclic(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;

  struct Frame {
    std::size_t vertex;
    std::size_t next;  // position in emitter list
  };
  std::vector<Frame> frames;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& out = g.emitter_indices(f.vertex);
      if (f.next < out.size()) {
        std::size_t e = out[f.next++];
        std::size_t w = g.range_index(e);
        if (w == f.vertex) cyclic[w] = true;  // self-loop
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.vertex] = std::min(low[f.vertex], index[w]);
        }
        continue;
      }
      const std::size_t v = f.vertex;
      frames.pop_back();
      if (!frames.empty()) {
        std::size_t parent = frames.back().vertex;
        low[parent] = std::min(low[parent], low[v]);
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> component;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        if (component.size() > 1)
          for (std::size_t x : component) cyclic[x] = true;
      }
    }
  }
  return cyclic;
}

// DFS from `start` following emitters in edge-id order until an edge returns
// to `start`. Returns the edges in traversal order (first edge leaves start).
std::vector<std::size_t> dfs_cycle_through(const Graph& g, std::size_t start) {
  std::vector<bool> visited(g.vertex_count(), false);
  visited[start] = true;
  struct Frame {
    std::size_t vertex;
    std::size_t next;
  };
  std::vector<Frame> frames{{start, 0}};
  std::vector<std::size_t> trail;
  while (!frames.empty()) {
    Frame& f = frames.back();
    const auto& out = g.emitter_indices(f.vertex);
    if (f.next >= out.size()) {
      frames.pop_back();
      if (!trail.empty()) trail.pop_back();
      continue;
    }
    std::size_t e = out[f.next++];
    std::size_t w = g.range_index(e);
    if (w == start) {
      trail.push_back(e);
      return trail;
    }
    if (visited[w]) continue;
    visited[w] = true;
    trail.push_back(e);
    frames.push_back({w, 0});
  }
  return {};
}

SimpleLoop loop_from_trail(const Graph& g, const std::vector<std::size_t>& trail) {
  std::vector<EdgeId> edges;
  for (auto it = trail.rbegin(); it != trail.rend(); ++it)
    edges.push_back(g.edges()[*it].id);
  return SimpleLoop::make(g, std::move(edges));
}

}  // namespace

SimpleLoop SimpleLoop::make(const Graph& g, std::vector<EdgeId> edges) {
  if (!is_path(g, edges)) throw GraphError("loop edges do not form a path");
  if (g.range(edges.front()) != g.source(edges.back()))
    throw GraphError("path is not closed: r(e_n) != s(e_1)");
  std::set<VertexId> ranges;
  for (const EdgeId& e : edges) {
    if (!ranges.insert(g.range(e)).second)
      throw GraphError("loop is not simple: vertex '" + g.range(e).str() +
                       "' repeats");
  }
  SimpleLoop loop;
  for (auto it = edges.rbegin(); it != edges.rend(); ++it)
    loop.vertices_.push_back(g.source(*it));
  loop.edges_ = std::move(edges);
  return loop;
}

bool SimpleLoop::contains(const EdgeId& e) const {
  return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

bool SimpleLoop::contains(const VertexId& v) const {
  return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
}

SimpleLoop SimpleLoop::rotated(const Graph& g, std::size_t k) const {
  const std::size_t n = length();
  if (k < 1 || k > n) throw PreconditionError("rotation index out of range");
  std::vector<EdgeId> edges;
  // new e'_j = e_{k+j-1}; composition order lists j = n down to 1
  for (std::size_t j = n; j >= 1; --j) edges.push_back(edge((k + j - 2) % n + 1));
  return make(g, std::move(edges));
}

std::string SimpleLoop::to_string() const {
  std::string out;
  for (const EdgeId& e : edges_) {
    if (!out.empty()) out += ' ';
    out += e.str();
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::AF:
      return "AF";
    case Verdict::AFEmbeddableNotAF:
      return "AF_EMBEDDABLE_NOT_AF";
    case Verdict::NotFinite:
      return "NOT_FINITE";
  }
  return "?";
}

std::vector<VertexId> cycle_vertices(const Graph& g) {
  auto flags = on_cycle_flags(g);
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i]) out.push_back(g.vertices()[i]);
  return out;
}

std::optional<Entrance> entrance_violation(const Graph& g) {
  auto flags = on_cycle_flags(g);
  for (std::size_t v = 0; v < flags.size(); ++v) {
    if (!flags[v] || g.receiver_indices(v).size() < 2) continue;
    auto trail = dfs_cycle_through(g, v);
    const std::size_t closing = trail.back();
    for (std::size_t e : g.receiver_indices(v)) {
      if (e != closing) return Entrance{g.vertices()[v], g.edges()[e].id};
    }
  }
  return std::nullopt;
}

std::vector<SimpleLoop> disjoint_simple_loops(const Graph& g) {
  if (auto bad = entrance_violation(g))
    throw PreconditionError("loop has an entrance at vertex '" + bad->vertex.str() +
                            "' via edge '" + bad->edge.str() + "'");
  auto flags = on_cycle_flags(g);
  std::vector<bool> covered(flags.size(), false);
  std::vector<SimpleLoop> loops;
  for (std::size_t u1 = 0; u1 < flags.size(); ++u1) {
    if (!flags[u1] || covered[u1]) continue;
    std::vector<EdgeId> edges;
    std::size_t cur = u1;
    do {
      covered[cur] = true;
      std::size_t e = g.receiver_indices(cur).front();
      edges.push_back(g.edges()[e].id);
      cur = g.source_index(e);
    } while (cur != u1);
    loops.push_back(SimpleLoop::make(g, std::move(edges)));
  }
  return loops;
}

std::optional<EntranceWitness> find_entrance_witness(const Graph& g) {
  auto ent = entrance_violation(g);
  if (!ent) return std::nullopt;
  SimpleLoop loop = loop_from_trail(g, dfs_cycle_through(g, g.vertex_index(ent->vertex)));
  Path alpha = Path::from_edges(g, loop.edges());
  Path beta = Path::from_edges(g, {ent->edge});
  return EntranceWitness{std::move(loop), ent->vertex, ent->edge, std::move(alpha),
                         std::move(beta)};
}

Classification classify(const Graph& g) {
  if (cycle_vertices(g).empty()) return {Verdict::AF, {}, std::nullopt};
  if (auto w = find_entrance_witness(g)) return {Verdict::NotFinite, {}, std::move(w)};
  return {Verdict::AFEmbeddableNotAF, disjoint_simple_loops(g), std::nullopt};
}

void validate_witness(const Graph& g, const EntranceWitness& w) {
  auto fail = [](const std::string& why) {
    throw PreconditionError("invalid witness: " + why);
  };
  SimpleLoop loop;
  Path alpha = w.alpha;
  Path beta = w.beta;
  try {
    loop = SimpleLoop::make(g, w.loop.edges());
    alpha = Path::from_edges(g, w.alpha.edges());
    if (w.beta.is_vertex()) fail("beta must have positive length");
    beta = Path::from_edges(g, w.beta.edges());
    if (!g.has_vertex(w.entry_vertex)) fail("unknown entry vertex");
    if (!g.has_edge(w.entry_edge)) fail("unknown entry edge");
  } catch (const GraphError& e) {
    fail(e.what());
  }
  if (!loop.contains(w.entry_vertex)) fail("entry vertex is not on the loop");
  if (g.receivers(w.entry_vertex).size() < 2)
    fail("entry vertex receives fewer than two edges");
  if (g.range(w.entry_edge) != w.entry_vertex)
    fail("entry edge does not range at the entry vertex");
  if (loop.contains(w.entry_edge)) fail("entry edge lies on the loop");
  std::size_t k = 1;
  while (loop.vertex(k) != w.entry_vertex) ++k;
  if (alpha.edges() != loop.rotated(g, k).edges())
    fail("alpha is not the loop based at the entry vertex");
  if (alpha == beta) fail("alpha and beta must be distinct paths");
  if (beta.range() != alpha.range()) fail("r(beta) != r(alpha)");
  if (beta.edges().front() == alpha.edges().front())
    fail("alpha and beta share their last edge, so their ranges are not orthogonal");
}

std::string path_term(const Path& p) {
  if (p.is_vertex()) return "p(" + p.range().str() + ")";
  std::string out;
  for (const EdgeId& e : p.edges()) {
    if (!out.empty()) out += ' ';
    out += "s(" + e.str() + ")";
  }
  return out;
}

std::string path_adjoint_term(const Path& p) {
  if (p.is_vertex()) return "p(" + p.range().str() + ")";
  std::string out;
  for (auto it = p.edges().rbegin(); it != p.edges().rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += "s*(" + it->str() + ")";
  }
  return out;
}

InfinitenessStatement witness_infinite(const Graph& g, const EntranceWitness& w) {
  validate_witness(g, w);
  const std::string proj = "p(" + w.alpha.source().str() + ")";
  const std::string range_a = path_term(w.alpha) + " " + path_adjoint_term(w.alpha);
  const std::string range_b = path_term(w.beta) + " " + path_adjoint_term(w.beta);
  return {w.alpha, w.beta,
          path_adjoint_term(w.alpha) + " " + path_term(w.alpha) + " = " + proj,
          range_a + " < " + range_a + " + " + range_b + " <= " + proj};
}

}  // namespace afembed
