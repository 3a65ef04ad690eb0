#include "nni/aux_tree.hpp"

#include <algorithm>
#include <deque>

namespace nni {

AuxiliaryTree build_auxiliary(std::vector<Weight> internal, std::vector<std::pair<std::string, Weight>> taxa) {
  const int n = static_cast<int>(taxa.size());
  if (n < 3) throw TreeError("auxiliary tree needs at least 3 taxa");
  if (static_cast<int>(internal.size()) != n - 3) throw TreeError("auxiliary tree: wrong multiset size");
  std::sort(internal.begin(), internal.end());
  std::sort(taxa.begin(), taxa.end());

  AuxiliaryTree a;
  Phylogeny& t = a.tree;
  a.root = t.add_node();
  NodeId anchor = t.add_node(taxa[0].first);
  t.add_edge(a.root, anchor, taxa[0].second);

  const int k[2] = {n / 2, (n - 1) / 2};  // ceil((n-1)/2), floor((n-1)/2)
  struct Item {
    int side, heap;
    NodeId parent;
  };
  std::vector<NodeId> node_of[2] = {std::vector<NodeId>(2 * k[0]), std::vector<NodeId>(2 * k[1])};
  std::deque<Item> q{{0, 1, a.root}, {1, 1, a.root}};
  while (!q.empty()) {
    Item it = q.front();
    q.pop_front();
    NodeId v = t.add_node();
    node_of[it.side][it.heap] = v;
    EdgeId e = t.add_edge(it.parent, v, Weight{});
    if (it.heap < k[it.side]) {
      a.internal_bfs.push_back(e);
      q.push_back({it.side, 2 * it.heap, v});
      q.push_back({it.side, 2 * it.heap + 1, v});
    }
  }
  for (std::size_t i = 0; i < internal.size(); ++i) t.set_weight(a.internal_bfs[i], internal[i]);

  a.slots.push_back(anchor);
  for (int s = 0; s < 2; ++s) {
    auto inorder = [&](auto&& self, int h) -> void {
      if (h >= k[s]) {
        a.slots.push_back(node_of[s][h]);
        return;
      }
      self(self, 2 * h);
      self(self, 2 * h + 1);
    };
    inorder(inorder, 1);
  }
  for (int i = 1; i < n; ++i) {
    NodeId v = a.slots[i];
    t.set_label(v, taxa[i].first);
    t.set_weight(t.incident(v)[0], taxa[i].second);
  }
  return a;
}

AuxiliaryTree build_auxiliary(const Phylogeny& t) {
  require_valid(t);
  std::vector<std::pair<std::string, Weight>> taxa;
  for (NodeId v : t.leaves()) taxa.emplace_back(t.label(v), t.weight(t.incident(v)[0]));
  return build_auxiliary(weight_multiset(t).values, std::move(taxa));
}

bool non_descending(const AuxiliaryTree& a) {
  RootedView r = orient(a.tree, a.root);
  for (NodeId v : r.bfs) {
    EdgeId e = r.parent_edge[v];
    if (e == kNone || a.tree.is_leaf(v)) continue;
    NodeId p = r.parent[v];
    EdgeId pe = r.parent_edge[p];
    if (pe != kNone && a.tree.weight(pe) > a.tree.weight(e)) return false;
  }
  return true;
}

int depth_spread(const AuxiliaryTree& a) {
  RootedView r = orient(a.tree, a.root);
  int lo = 1 << 30, hi = -1;
  for (std::size_t i = 1; i < a.slots.size(); ++i) {
    lo = std::min(lo, r.depth[a.slots[i]]);
    hi = std::max(hi, r.depth[a.slots[i]]);
  }
  return hi - lo;
}

void check_auxiliary(const AuxiliaryTree& a) {
  if (!non_descending(a)) throw InternalError("auxiliary tree: weights descend along a root path");
  if (depth_spread(a) > 1) throw InternalError("auxiliary tree: leaf depths differ by more than one");
}

}  // namespace nni
