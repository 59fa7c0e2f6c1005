#pragma once

#include <string>
#include <utility>
#include <vector>

#include "afembed/graph.hpp"

namespace afembed::testing {

struct EdgeSpec {
  std::string id, src, dst;
};

Graph make_graph(const std::vector<std::string>& vertices, const std::vector<EdgeSpec>& edges);

// u1..u4 with e_i: u_i -> u_{i+1 mod 4}.
Graph square_graph();
// The square plus x: w -> u2.
Graph square_entrance_graph();
// One vertex with two self-loops a, b.
Graph two_self_loops_graph();
// a -> b -> c, a -> c.
Graph acyclic_graph();
// u with a single self-loop e.
Graph self_loop_graph();

std::vector<EdgeId> edge_ids(std::initializer_list<const char*> ids);

}  // namespace afembed::testing
