#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

namespace afembed::testing {

std::vector<std::vector<std::size_t>> enumerate_simple_cycles(const Graph& g) {
  const std::size_t nv = g.vertex_count();
  std::vector<std::size_t> src(g.edge_count()), dst(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    src[e] = g.vertex_index(g.edges()[e].source);
    dst[e] = g.vertex_index(g.edges()[e].range);
  }
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> stack;
  std::vector<bool> on_path(nv, false);
  for (std::size_t root = 0; root < nv; ++root) {
    std::function<void(std::size_t)> dfs = [&](std::size_t x) {
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (src[e] != x) continue;
        const std::size_t y = dst[e];
        if (y == root) {
          stack.push_back(e);
          cycles.push_back(stack);
          stack.pop_back();
        } else if (y > root && !on_path[y]) {
          on_path[y] = true;
          stack.push_back(e);
          dfs(y);
          stack.pop_back();
          on_path[y] = false;
        }
      }
    };
    on_path[root] = true;
    dfs(root);
    on_path[root] = false;
  }
  return cycles;
}

std::set<std::string> oracle_cycle_vertices(const Graph& g) {
  std::set<std::string> out;
  for (const auto& c : enumerate_simple_cycles(g))
    for (std::size_t e : c) out.insert(g.edges()[e].range.str());
  return out;
}

bool oracle_has_entrance(const Graph& g) {
  std::map<std::string, int> indegree;
  for (const Edge& e : g.edges()) ++indegree[e.range.str()];
  for (const auto& c : enumerate_simple_cycles(g))
    for (std::size_t e : c)
      if (indegree[g.edges()[e].range.str()] > 1) return true;
  return false;
}

Verdict oracle_verdict(const Graph& g) {
  if (enumerate_simple_cycles(g).empty()) return Verdict::AF;
  return oracle_has_entrance(g) ? Verdict::NotFinite : Verdict::AFEmbeddableNotAF;
}

std::vector<std::uint64_t> oracle_path_counts(const Graph& g, const VertexId& v,
                                              std::size_t max_len) {
  std::map<std::string, std::uint64_t> cur;
  for (const VertexId& x : g.vertices()) cur[x.str()] = 1;
  std::vector<std::uint64_t> out{cur[v.str()]};
  for (std::size_t k = 1; k <= max_len; ++k) {
    std::map<std::string, std::uint64_t> next;
    for (const VertexId& x : g.vertices()) next[x.str()] = 0;
    for (const Edge& e : g.edges()) next[e.range.str()] += cur[e.source.str()];
    cur = std::move(next);
    out.push_back(cur[v.str()]);
  }
  return out;
}

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

Graph random_multigraph(Rng& rng, std::size_t max_v, std::size_t max_e) {
  const std::size_t nv = uniform(rng, 1, max_v);
  const std::size_t ne = uniform(rng, 0, max_e);
  std::vector<VertexId> vs;
  for (std::size_t i = 0; i < nv; ++i) vs.emplace_back("v" + std::to_string(i));
  std::vector<Edge> es;
  for (std::size_t i = 0; i < ne; ++i)
    es.push_back({EdgeId("e" + std::to_string(i)), vs[uniform(rng, 0, nv - 1)],
                  vs[uniform(rng, 0, nv - 1)]});
  return Graph::build(std::move(vs), std::move(es));
}

Graph random_entrance_free_graph(Rng& rng, std::size_t max_loops) {
  std::vector<VertexId> vs;
  std::vector<Edge> es;
  const std::size_t loops = uniform(rng, 1, max_loops);
  std::vector<VertexId> loop_vertices;
  for (std::size_t l = 0; l < loops; ++l) {
    const std::size_t n = uniform(rng, 1, 4);
    std::vector<VertexId> cyc;
    for (std::size_t j = 0; j < n; ++j)
      cyc.emplace_back("c" + std::to_string(l) + "_" + std::to_string(j));
    for (std::size_t j = 0; j < n; ++j)
      es.push_back({EdgeId("l" + std::to_string(l) + "_" + std::to_string(j)), cyc[j],
                    cyc[(j + 1) % n]});
    loop_vertices.insert(loop_vertices.end(), cyc.begin(), cyc.end());
  }
  const std::size_t extra = uniform(rng, 0, 4);
  std::vector<VertexId> extras;
  for (std::size_t k = 0; k < extra; ++k) extras.emplace_back("x" + std::to_string(k));
  if (!extras.empty()) {
    const std::size_t ne = uniform(rng, 0, 6);
    for (std::size_t k = 0; k < ne; ++k) {
      const std::size_t d = uniform(rng, 0, extras.size() - 1);
      // sources: any loop vertex or an extra vertex earlier than the target
      const std::size_t choices = loop_vertices.size() + d;
      const std::size_t s = uniform(rng, 0, choices - 1);
      const VertexId& src = s < loop_vertices.size() ? loop_vertices[s]
                                                     : extras[s - loop_vertices.size()];
      es.push_back({EdgeId("d" + std::to_string(k)), src, extras[d]});
    }
  }
  vs = loop_vertices;
  vs.insert(vs.end(), extras.begin(), extras.end());
  return Graph::build(std::move(vs), std::move(es));
}

Graph random_entrance_graph(Rng& rng) {
  const Graph base = random_entrance_free_graph(rng, 3);
  std::vector<VertexId> loop_vertices;
  for (const VertexId& v : base.vertices())
    if (v.str()[0] == 'c') loop_vertices.push_back(v);
  std::vector<Edge> es = base.edges();
  const VertexId& src = base.vertices()[uniform(rng, 0, base.vertex_count() - 1)];
  es.push_back({EdgeId("z"), src, loop_vertices[uniform(rng, 0, loop_vertices.size() - 1)]});
  return Graph::build(base.vertices(), std::move(es));
}

namespace {

struct Typing {
  const Graph& g;
  std::map<std::string, std::string> sinks;

  std::string codomain(const Letter& l) const {
    switch (l.kind) {
      case LetterKind::Projection:
        return l.id;
      case LetterKind::Edge:
        return g.range(EdgeId(l.id)).str();
      case LetterKind::EdgeAdjoint:
        return g.source(EdgeId(l.id)).str();
      case LetterKind::Unitary:
        return sinks.at(l.id);
    }
    return {};
  }
  std::string domain(const Letter& l) const {
    switch (l.kind) {
      case LetterKind::Projection:
        return l.id;
      case LetterKind::Edge:
        return g.source(EdgeId(l.id)).str();
      case LetterKind::EdgeAdjoint:
        return g.range(EdgeId(l.id)).str();
      case LetterKind::Unitary:
        return sinks.at(l.id);
    }
    return {};
  }
};

// nullopt: no rule; a Projection with empty id: zero.
std::optional<Letter> rule(const Typing& ty, const Letter& x, const Letter& y) {
  if (x.kind == LetterKind::Projection) return y;
  if (y.kind == LetterKind::Projection) return x;
  if (x.kind == LetterKind::EdgeAdjoint && y.kind == LetterKind::Edge) {
    if (x.id != y.id) return Letter::p("");
    return Letter::p(ty.g.source(EdgeId(x.id)).str());
  }
  if (x.kind == LetterKind::Unitary && y.kind == LetterKind::Unitary) {
    const int k = x.power + y.power;
    return k == 0 ? Letter::p(ty.sinks.at(x.id)) : Letter::t(x.id, k);
  }
  if (x.kind == LetterKind::Edge && y.kind == LetterKind::EdgeAdjoint && x.id == y.id) {
    const VertexId r = ty.g.range(EdgeId(x.id));
    std::size_t indegree = 0;
    for (const Edge& e : ty.g.edges()) indegree += e.range == r;
    if (indegree == 1) return Letter::p(r.str());
  }
  return std::nullopt;
}

Typing make_typing(const Graph& g, const std::vector<Tail>& tails) {
  Typing ty{g, {}};
  for (const Tail& t : tails) ty.sinks[t.ns] = t.sink.str();
  return ty;
}

std::vector<Letter> alphabet(const Graph& g, const std::vector<Tail>& tails, int max_power) {
  std::vector<Letter> out;
  for (const VertexId& v : g.vertices()) out.push_back(Letter::p(v.str()));
  for (const Edge& e : g.edges()) {
    out.push_back(Letter::s(e.id.str()));
    out.push_back(Letter::s_star(e.id.str()));
  }
  for (const Tail& t : tails)
    for (int k = -max_power; k <= max_power; ++k)
      if (k != 0) out.push_back(Letter::t(t.ns, k));
  return out;
}

}  // namespace

Word oracle_reduce(const Graph& g, const std::vector<Tail>& tails, Word w, Rng& rng) {
  const Typing ty = make_typing(g, tails);
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (ty.domain(w[i]) != ty.codomain(w[i + 1])) return {};
  for (;;) {
    std::vector<std::pair<std::size_t, Letter>> moves;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (auto r = rule(ty, w[i], w[i + 1])) moves.emplace_back(i, *r);
    if (moves.empty()) return w;
    const auto& [i, out] = moves[uniform(rng, 0, moves.size() - 1)];
    if (out.kind == LetterKind::Projection && out.id.empty()) return {};
    w[i] = out;
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  }
}

namespace {

std::string render(const Word& w) {
  if (w.empty()) return "0";
  std::string out;
  for (const Letter& l : w) {
    out += std::to_string(static_cast<int>(l.kind)) + ":" + l.id + ":" + std::to_string(l.power) + " ";
  }
  return out;
}

void explore(const Typing& ty, const Word& w, std::set<std::string>& seen,
             std::set<std::string>& finals) {
  if (!seen.insert(render(w)).second) return;
  bool moved = false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    auto r = rule(ty, w[i], w[i + 1]);
    if (!r) continue;
    moved = true;
    if (r->kind == LetterKind::Projection && r->id.empty()) {
      finals.insert("0");
      continue;
    }
    Word next = w;
    next[i] = *r;
    next.erase(next.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    explore(ty, next, seen, finals);
  }
  if (!moved) finals.insert(render(w));
}

}  // namespace

std::set<std::string> oracle_all_normal_forms(const Graph& g, const std::vector<Tail>& tails,
                                              const Word& w) {
  const Typing ty = make_typing(g, tails);
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (ty.domain(w[i]) != ty.codomain(w[i + 1])) return {"0"};
  std::set<std::string> seen, finals;
  explore(ty, w, seen, finals);
  return finals;
}

std::string oracle_render(const Word& w) { return render(w); }

Word random_word(const Graph& g, const std::vector<Tail>& tails, std::size_t length, Rng& rng,
                 int max_power) {
  const auto letters = alphabet(g, tails, max_power);
  Word w;
  for (std::size_t i = 0; i < length; ++i) w.push_back(letters[uniform(rng, 0, letters.size() - 1)]);
  return w;
}

Word random_typed_word(const Graph& g, const std::vector<Tail>& tails, std::size_t length,
                       Rng& rng, int max_power) {
  const Typing ty = make_typing(g, tails);
  const auto letters = alphabet(g, tails, max_power);
  Word w{letters[uniform(rng, 0, letters.size() - 1)]};
  while (w.size() < length) {
    std::vector<const Letter*> next;
    for (const Letter& l : letters)
      if (ty.codomain(l) == ty.domain(w.back())) next.push_back(&l);
    if (next.empty()) break;
    w.push_back(*next[uniform(rng, 0, next.size() - 1)]);
  }
  return w;
}

}  // namespace afembed::testing
