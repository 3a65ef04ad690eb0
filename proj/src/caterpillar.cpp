#include "nni/caterpillar.hpp"

#include <algorithm>

namespace nni {

std::vector<EdgeId> leaf_edges_at(const Phylogeny& t, NodeId v) {
  std::vector<EdgeId> out;
  for (EdgeId e : t.incident(v))
    if (t.is_leaf(t.edge(e).other(v))) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

Caterpillar read_caterpillar(const Phylogeny& t) {
  if (!is_linear(t)) throw TreeError("tree is not linear");
  Caterpillar c;
  NodeId start = kNone;
  for (NodeId v = 0; v < t.node_count() && start == kNone; ++v)
    if (!t.is_leaf(v) && leaf_edges_at(t, v).size() >= 2) start = v;
  if (start == kNone) throw TreeError("linear tree without an end");
  NodeId prev = kNone, cur = start;
  c.spine.push_back(cur);
  while (true) {
    EdgeId step = kNone;
    for (EdgeId e : t.incident(cur)) {
      NodeId w = t.edge(e).other(cur);
      if (w != prev && !t.is_leaf(w)) step = e;
    }
    if (step == kNone) break;
    prev = cur;
    cur = t.edge(step).other(cur);
    c.order.push_back(step);
    c.spine.push_back(cur);
  }
  return c;
}

std::vector<NodeId> spine_for(const Phylogeny& t, const std::vector<EdgeId>& order) {
  std::size_t m = order.size();
  auto fail = [](const char* why) -> std::vector<NodeId> { throw InternalError(std::string("caterpillar: ") + why); };
  if (m == 0) fail("empty reading");
  std::vector<NodeId> spine;
  const Edge& first = t.edge(order[0]);
  NodeId c0 = first.a;
  if (m >= 2) {
    const Edge& second = t.edge(order[1]);
    c0 = second.touches(first.a) ? first.b : first.a;
  } else if (leaf_edges_at(t, first.a).size() < 2) {
    c0 = first.b;
  }
  spine.push_back(c0);
  for (EdgeId e : order) {
    if (!t.edge(e).touches(spine.back())) fail("reading is not a path");
    spine.push_back(t.edge(e).other(spine.back()));
  }
  for (std::size_t i = 0; i <= m; ++i) {
    std::size_t want = (i == 0 || i == m) ? 2 : 1;
    if (leaf_edges_at(t, spine[i]).size() != want) fail("spine node has wrong leaf count");
  }
  return spine;
}

}  // namespace nni
