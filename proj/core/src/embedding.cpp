#include "afembed/embedding.hpp"

#include <cctype>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "afembed/graph_io.hpp"

namespace afembed {
namespace {

int parse_int(std::string_view s) {
  std::string buf(s);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(buf, &used);
  } catch (const std::exception&) {
    throw ParseError("multiplicity '" + buf + "' is not an integer", 0, 0);
  }
  if (used != buf.size()) throw ParseError("multiplicity '" + buf + "' is not an integer", 0, 0);
  return v;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

bool id_in_namespace(const std::string& id, const std::string& ns) {
  return id.size() > ns.size() && id.compare(0, ns.size(), ns) == 0 && id[ns.size()] == '.';
}

bool namespace_taken(const Graph& g, const std::string& ns) {
  for (const VertexId& v : g.vertices())
    if (id_in_namespace(v.str(), ns)) return true;
  for (const Edge& e : g.edges())
    if (id_in_namespace(e.id.str(), ns)) return true;
  return false;
}

void check_namespaces(const AugmentedGraphSpec& spec) {
  std::set<std::string> seen;
  for (const LoopReplacement& r : spec.replacements) {
    const std::string& ns = r.tail.ns;
    if (!is_valid_id(ns)) throw GraphError("invalid tail namespace '" + ns + "'");
    for (const std::string& other : seen) {
      if (ns == other || id_in_namespace(ns, other) || id_in_namespace(other, ns))
        throw GraphError("namespace collision between tails '" + ns + "' and '" + other + "'");
    }
    seen.insert(ns);
    if (namespace_taken(spec.base, ns))
      throw GraphError("namespace collision: base graph already uses ids in '" + ns + ".'");
    for (const Edge& e : r.loop_edges)
      if (id_in_namespace(e.id.str(), ns))
        throw GraphError("namespace collision: loop edge '" + e.id.str() + "' is in '" + ns +
                         ".'");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

MultiplicitySeq::MultiplicitySeq(std::vector<int> prefix, int tail)
    : prefix_(std::move(prefix)), tail_(tail) {
  for (int m : prefix_)
    if (m < 1) throw PreconditionError("multiplicities must be >= 1");
  if (tail_ < 2)
    throw PreconditionError(
        "the repeated multiplicity must be >= 2 so that path counts are unbounded");
}

MultiplicitySeq MultiplicitySeq::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw ParseError("empty multiplicity spec", 0, 0);
  const auto semi = s.find(';');
  if (semi == std::string::npos) return MultiplicitySeq({}, parse_int(s));
  std::vector<int> prefix;
  std::string head = s.substr(0, semi);
  std::stringstream ss(head);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) {
      if (head.find_first_not_of(" \t") == std::string::npos) break;
      throw ParseError("empty entry in multiplicity prefix", 0, 0);
    }
    prefix.push_back(parse_int(item));
  }
  return MultiplicitySeq(std::move(prefix), parse_int(trim(s.substr(semi + 1))));
}

int MultiplicitySeq::at(std::size_t level) const {
  if (level == 0) throw PreconditionError("tail levels start at 1");
  return level <= prefix_.size() ? prefix_[level - 1] : tail_;
}

std::vector<std::uint64_t> MultiplicitySeq::path_counts(std::size_t depth) const {
  std::vector<std::uint64_t> out{1};
  for (std::size_t k = 1; k <= depth; ++k) {
    const auto m = static_cast<std::uint64_t>(at(k));
    if (out.back() > std::numeric_limits<std::uint64_t>::max() / m)
      throw PreconditionError("path count overflows at level " + std::to_string(k));
    out.push_back(out.back() * m);
  }
  return out;
}

std::string MultiplicitySeq::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(prefix_[i]);
  }
  if (!prefix_.empty()) out += ';';
  return out + std::to_string(tail_);
}

VertexId BratteliTailSpec::level_vertex(std::size_t k) const {
  if (k == 0) return sink();
  return VertexId(ns + ".L" + std::to_string(k) + ".1");
}

EdgeId BratteliTailSpec::tail_edge(std::size_t k, std::size_t m) const {
  return EdgeId(ns + ".b" + std::to_string(k) + "." + std::to_string(m));
}

EdgeId BratteliTailSpec::f_edge(std::size_t i) const {
  return EdgeId(ns + ".f" + std::to_string(i));
}

// ---------------------------------------------------------------------------

Embedding embed(const Graph& g, const MultiplicitySeq& mult) {
  if (auto w = find_entrance_witness(g)) throw EntranceError(std::move(*w));
  const std::vector<SimpleLoop> loops = disjoint_simple_loops(g);

  std::set<EdgeId> removed;
  for (const SimpleLoop& loop : loops)
    for (const EdgeId& e : loop.edges()) removed.insert(e);

  std::vector<Edge> kept;
  for (const Edge& e : g.edges())
    if (!removed.contains(e.id)) kept.push_back(e);

  Embedding out;
  out.spec.base = Graph::build(g.vertices(), std::move(kept));

  std::set<std::string> used;
  for (std::size_t j = 0; j < loops.size(); ++j) {
    const SimpleLoop& loop = loops[j];
    std::string ns = "T" + std::to_string(j + 1);
    auto clashes = [&](const std::string& cand) {
      if (namespace_taken(g, cand)) return true;
      for (const std::string& u : used)
        if (cand == u || id_in_namespace(cand, u) || id_in_namespace(u, cand)) return true;
      return false;
    };
    while (clashes(ns)) ns += "_";
    used.insert(ns);

    LoopReplacement r;
    r.loop = loop;
    for (const EdgeId& e : loop.edges()) r.loop_edges.push_back(g.edge(e));
    r.tail = BratteliTailSpec{ns, mult};
    for (std::size_t i = 1; i <= loop.length(); ++i)
      r.f_edges.push_back({r.tail.f_edge(i), r.tail.sink(), loop.vertex(i)});
    out.spec.replacements.push_back(std::move(r));
  }

  const CKContext ctx = make_context(out.spec, 0);
  out.map.domain = g;
  for (const VertexId& v : g.vertices()) out.map.vertices.emplace(v, CKTerm::p(ctx, v));
  for (const Edge& e : g.edges()) {
    if (!removed.contains(e.id)) out.map.edges.emplace(e.id, CKTerm::s(ctx, e.id));
  }
  for (const LoopReplacement& r : out.spec.replacements) {
    const std::size_t n = r.loop.length();
    for (std::size_t i = 1; i <= n; ++i) {
      const EdgeId& next = r.f_edges[i % n].id;  // f_{i+1}, cyclic
      const EdgeId& here = r.f_edges[i - 1].id;  // f_i
      Word w{Letter::s(next.str()), Letter::t(r.tail.ns), Letter::s_star(here.str())};
      out.map.edges.emplace(r.loop.edge(i), CKTerm::from_word(ctx, w));
    }
  }
  return out;
}

Graph materialize(const AugmentedGraphSpec& spec, std::size_t depth) {
  check_namespaces(spec);
  std::vector<VertexId> vertices = spec.base.vertices();
  std::vector<Edge> edges = spec.base.edges();
  for (const LoopReplacement& r : spec.replacements) {
    const BratteliTailSpec& t = r.tail;
    for (std::size_t k = 0; k <= depth; ++k) vertices.push_back(t.level_vertex(k));
    for (const Edge& f : r.f_edges) edges.push_back(f);
    for (std::size_t k = 1; k <= depth; ++k) {
      const auto m = static_cast<std::size_t>(t.mult.at(k));
      for (std::size_t j = 1; j <= m; ++j)
        edges.push_back({t.tail_edge(k, j), t.level_vertex(k), t.level_vertex(k - 1)});
    }
  }
  return Graph::build(std::move(vertices), std::move(edges));
}

Graph original_graph(const AugmentedGraphSpec& spec) {
  std::vector<Edge> edges = spec.base.edges();
  for (const LoopReplacement& r : spec.replacements)
    edges.insert(edges.end(), r.loop_edges.begin(), r.loop_edges.end());
  return Graph::build(spec.base.vertices(), std::move(edges));
}

CKContext make_context(const AugmentedGraphSpec& spec, std::size_t depth) {
  std::vector<Tail> tails;
  for (const LoopReplacement& r : spec.replacements)
    tails.push_back({r.tail.ns, r.tail.sink()});
  return CKContext(materialize(spec, depth), std::move(tails));
}

std::vector<std::uint64_t> corner_dimension(const AugmentedGraphSpec& spec,
                                            std::size_t tail_index, std::size_t depth) {
  if (tail_index >= spec.replacements.size())
    throw PreconditionError("tail index " + std::to_string(tail_index) + " out of range");
  return spec.replacements[tail_index].tail.mult.path_counts(depth);
}

// ---------------------------------------------------------------------------
// Documents

namespace {

using ojson = nlohmann::ordered_json;

ojson edge_json(const Edge& e) {
  ojson row;
  row["id"] = e.id.str();
  row["src"] = e.source.str();
  row["dst"] = e.range.str();
  return row;
}

Edge edge_from_json(const nlohmann::json& j) {
  return {EdgeId(j.at("id").get<std::string>()), VertexId(j.at("src").get<std::string>()),
          VertexId(j.at("dst").get<std::string>())};
}

}  // namespace

std::string spec_to_json(const AugmentedGraphSpec& spec) {
  ojson doc;
  doc["base"] = ojson::parse(serialize_graph_json(spec.base));
  doc["replacements"] = ojson::array();
  for (const LoopReplacement& r : spec.replacements) {
    ojson row;
    row["namespace"] = r.tail.ns;
    row["sink"] = r.tail.sink().str();
    row["mult"] = {{"prefix", r.tail.mult.prefix()}, {"tail", r.tail.mult.tail()}};
    row["loop"] = ojson::array();  // composition order e_n ... e_1
    for (const Edge& e : r.loop_edges) row["loop"].push_back(edge_json(e));
    row["f_edges"] = ojson::array();
    for (const Edge& f : r.f_edges) row["f_edges"].push_back(edge_json(f));
    doc["replacements"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

AugmentedGraphSpec spec_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed spec document: ") + e.what(), 0, 0);
  }
  AugmentedGraphSpec spec;
  try {
    spec.base = parse_graph_json(doc.at("base").dump());
    for (const auto& row : doc.at("replacements")) {
      LoopReplacement r;
      r.tail.ns = row.at("namespace").get<std::string>();
      r.tail.mult = MultiplicitySeq(row.at("mult").at("prefix").get<std::vector<int>>(),
                                    row.at("mult").at("tail").get<int>());
      std::vector<VertexId> loop_vertices;
      std::vector<EdgeId> loop_ids;
      for (const auto& e : row.at("loop")) {
        r.loop_edges.push_back(edge_from_json(e));
        loop_ids.push_back(r.loop_edges.back().id);
        loop_vertices.push_back(r.loop_edges.back().source);
      }
      const Graph loop_graph = Graph::build(loop_vertices, r.loop_edges);
      r.loop = SimpleLoop::make(loop_graph, loop_ids);
      for (const auto& f : row.at("f_edges")) r.f_edges.push_back(edge_from_json(f));
      if (r.f_edges.size() != r.loop.length())
        throw GraphError("replacement '" + r.tail.ns + "' needs one f edge per loop edge");
      for (std::size_t i = 1; i <= r.loop.length(); ++i) {
        const Edge& f = r.f_edges[i - 1];
        if (f.source != r.tail.sink() || f.range != r.loop.vertex(i))
          throw GraphError("f edge '" + f.id.str() + "' must run from the sink to u_" +
                           std::to_string(i));
      }
      spec.replacements.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad spec document: ") + e.what(), 0, 0);
  }
  check_namespaces(spec);
  return spec;
}

std::string map_to_table(const GeneratorMap& map) {
  std::ostringstream out;
  for (const auto& [v, term] : map.vertices)
    out << "vertex " << v.str() << " = " << term.to_string() << '\n';
  for (const auto& [e, term] : map.edges)
    out << "edge " << e.str() << " = " << term.to_string() << '\n';
  return out.str();
}

GeneratorMap map_from_table(std::string_view text, const Graph& domain,
                            const CKContext& ctx) {
  GeneratorMap map;
  map.domain = domain;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected '<kind> <id> = <term>'", line_no, 1);
    std::istringstream head(body.substr(0, eq));
    std::string kind, id, extra;
    head >> kind >> id;
    if (head >> extra || id.empty())
      throw ParseError("expected '<kind> <id> = <term>'", line_no, 1);
    CKTerm term;
    try {
      term = parse_term(body.substr(eq + 1), ctx);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, eq + 2);
    }
    if (kind == "vertex") {
      if (!domain.has_vertex(VertexId(id)))
        throw ParseError("unknown vertex '" + id + "'", line_no, 1);
      if (!map.vertices.emplace(VertexId(id), std::move(term)).second)
        throw ParseError("vertex '" + id + "' mapped twice", line_no, 1);
    } else if (kind == "edge") {
      if (!domain.has_edge(EdgeId(id)))
        throw ParseError("unknown edge '" + id + "'", line_no, 1);
      if (!map.edges.emplace(EdgeId(id), std::move(term)).second)
        throw ParseError("edge '" + id + "' mapped twice", line_no, 1);
    } else {
      throw ParseError("unknown generator kind '" + kind + "'", line_no, 1);
    }
  }
  for (const VertexId& v : domain.vertices())
    if (!map.vertices.contains(v)) throw ParseError("vertex '" + v.str() + "' is not mapped", 0, 0);
  for (const Edge& e : domain.edges())
    if (!map.edges.contains(e.id)) throw ParseError("edge '" + e.id.str() + "' is not mapped", 0, 0);
  return map;
}

}  // namespace afembed
