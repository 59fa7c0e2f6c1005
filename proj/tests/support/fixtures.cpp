#include "fixtures.hpp"

namespace afembed::testing {

Graph make_graph(const std::vector<std::string>& vertices, const std::vector<EdgeSpec>& edges) {
  std::vector<VertexId> vs;
  for (const auto& v : vertices) vs.emplace_back(v);
  std::vector<Edge> es;
  for (const auto& e : edges) es.push_back({EdgeId(e.id), VertexId(e.src), VertexId(e.dst)});
  return Graph::build(std::move(vs), std::move(es));
}

Graph square_graph() {
  return make_graph({"u1", "u2", "u3", "u4"}, {{"e1", "u1", "u2"},
                                               {"e2", "u2", "u3"},
                                               {"e3", "u3", "u4"},
                                               {"e4", "u4", "u1"}});
}

Graph square_entrance_graph() {
  return make_graph({"u1", "u2", "u3", "u4", "w"}, {{"e1", "u1", "u2"},
                                                    {"e2", "u2", "u3"},
                                                    {"e3", "u3", "u4"},
                                                    {"e4", "u4", "u1"},
                                                    {"x", "w", "u2"}});
}

Graph two_self_loops_graph() { return make_graph({"v"}, {{"a", "v", "v"}, {"b", "v", "v"}}); }

Graph acyclic_graph() {
  return make_graph({"a", "b", "c"}, {{"ab", "a", "b"}, {"bc", "b", "c"}, {"ac", "a", "c"}});
}

Graph self_loop_graph() { return make_graph({"u"}, {{"e", "u", "u"}}); }

std::vector<EdgeId> edge_ids(std::initializer_list<const char*> ids) {
  std::vector<EdgeId> out;
  for (const char* id : ids) out.emplace_back(id);
  return out;
}

}  // namespace afembed::testing
