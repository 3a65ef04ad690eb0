#include "nni/linearizer.hpp"

#include <algorithm>
#include <numeric>

namespace nni {

EndnodePaths endnode_paths(const Phylogeny& t, const RootedView& r, const std::vector<NodeClass>& cls,
                           par::Runtime& rt, const std::string& phase) {
  int nn = t.node_count();
  std::vector<NodeId> internal;
  for (NodeId v = 0; v < nn; ++v)
    if (!t.is_leaf(v)) internal.push_back(v);

  auto stop = [&](NodeId v) { return v == r.root || cls[v] == NodeClass::Junction || cls[v] == NodeClass::Endnode; };

  std::vector<Weight> dist(nn);
  std::vector<int> length(nn, 0);
  std::vector<NodeId> head(nn, kNone), next(nn, kNone);
  rt.map(phase, internal.size(), [&](std::size_t i) {
    NodeId v = internal[i];
    head[v] = v;
    if (v == r.root) return;
    dist[v] = t.weight(r.parent_edge[v]);
    length[v] = 1;
    next[v] = r.parent[v];
  });
  EndnodePaths out;
  out.rounds = 1;

  std::vector<NodeId> active;
  for (NodeId v : internal)
    if (next[v] != kNone && !stop(next[v])) active.push_back(v);
  while (!active.empty()) {
    auto dist2 = dist;
    auto length2 = length;
    auto head2 = head;
    auto next2 = next;
    rt.map(phase, active.size(), [&](std::size_t i) {
      NodeId v = active[i], w = next[v];
      dist2[v] = dist[v] + dist[w];
      length2[v] = length[v] + length[w];
      head2[v] = head[w];
      next2[v] = next[w];
    });
    dist.swap(dist2);
    length.swap(length2);
    head.swap(head2);
    next.swap(next2);
    ++out.rounds;
    std::vector<NodeId> still;
    for (NodeId v : active)
      if (next[v] != kNone && !stop(next[v])) still.push_back(v);
    active.swap(still);
  }

  out.info.resize(nn);
  rt.map(phase, internal.size(), [&](std::size_t i) {
    NodeId v = internal[i];
    PathInfo& p = out.info[v];
    p.dist = dist[v];
    p.length = length[v];
    p.head = head[v];
    p.next = next[v];
    p.path.reserve(length[v]);
    for (NodeId x = v; x != next[v]; x = r.parent[x]) p.path.push_back(r.parent_edge[x]);
  });
  ++out.rounds;
  return out;
}

namespace {

// Leaf edge at a pathnode, or the one to the smaller leaf id at an endnode.
EdgeId leaf_edge_of(const Phylogeny& t, NodeId v) {
  EdgeId best = kNone;
  NodeId best_leaf = kNone;
  for (EdgeId e : t.incident(v)) {
    NodeId w = t.edge(e).other(v);
    if (t.is_leaf(w) && (best_leaf == kNone || w < best_leaf)) {
      best = e;
      best_leaf = w;
    }
  }
  return best;
}

}  // namespace

LinearizeResult linearize(const Phylogeny& input, par::Runtime& rt, const std::string& phase) {
  require_valid(input);
  LinearizeResult res{{}, input, {}, 0, 0};
  Phylogeny& t = res.tree;
  const NodeId root = input.root_handle();
  const int nn = t.node_count();

  while (true) {
    std::vector<NodeClass> cls(nn);
    rt.map(phase, nn, [&](std::size_t v) {
      int leaves = 0;
      for (EdgeId e : t.incident(v)) leaves += t.is_leaf(t.edge(e).other(v));
      cls[v] = t.is_leaf(v) ? NodeClass::Leaf
               : leaves >= 2 ? NodeClass::Endnode
               : leaves == 1 ? NodeClass::Pathnode
                             : NodeClass::Junction;
    });
    if (std::find(cls.begin(), cls.end(), NodeClass::Junction) == cls.end()) break;
    ++res.iterations;

    RootedView r = orient(t, root);
    EndnodePaths ep = endnode_paths(t, r, cls, rt, phase + ".endnode_paths");
    res.max_path_rounds = std::max(res.max_path_rounds, ep.rounds);

    // Activation: each endnode bids for its junction; the lighter path wins.
    std::vector<NodeId> ends;
    for (NodeId v = 0; v < nn; ++v)
      if (cls[v] == NodeClass::Endnode && v != root) ends.push_back(v);
    std::vector<NodeId> by_rank = ends;
    std::sort(by_rank.begin(), by_rank.end(), [&](NodeId a, NodeId b) {
      return ep.info[a].dist != ep.info[b].dist ? ep.info[a].dist < ep.info[b].dist : a < b;
    });
    std::vector<std::uint64_t> rank(nn, 0);
    for (std::size_t i = 0; i < by_rank.size(); ++i) rank[by_rank[i]] = i;
    std::vector<NodeId> act(nn, kNone);
    par::WriteSet own = [&](std::size_t task, std::size_t cell) {
      return static_cast<std::size_t>(ep.info[ends[task]].next) == cell;
    };
    rt.round(
        phase, act, ends.size(),
        [&](std::size_t i, const std::vector<NodeId>&, auto& emit) {
          NodeId v = ends[i];
          NodeId u = ep.info[v].next;
          if (u != kNone && cls[u] == NodeClass::Junction) emit(u, v, rank[v]);
        },
        par::Conflict::Priority, own);

    std::vector<NodeId> junctions;
    for (NodeId u = 0; u < nn; ++u)
      if (act[u] != kNone) junctions.push_back(u);
    if (junctions.empty()) throw InternalError("linearize: no junction activated");

    std::vector<NniSequence> local(junctions.size());
    rt.map(phase, junctions.size(), [&](std::size_t j) {
      NodeId u = junctions[j];
      NodeId vk = act[u];
      const PathInfo& p = ep.info[vk];
      NodeId v1 = p.head;
      EdgeId ex = kNone;
      for (EdgeId e : t.incident(u))
        if (e != r.parent_edge[u] && t.edge(e).other(u) != v1) ex = e;
      // path lists e_k ... e_1 from vk upward; emit for e_1 first.
      std::vector<NodeId> nodes;
      for (NodeId x = vk; x != u; x = r.parent[x]) nodes.push_back(x);
      for (std::size_t i = nodes.size(); i-- > 0;)
        local[j].push_back({leaf_edge_of(t, nodes[i]), r.parent_edge[nodes[i]], ex});
    });

    for (const NniSequence& s : local) {
      for (const NniOp& op : s.ops) {
        try {
          res.cost += apply_nni_inplace(t, op);
        } catch (const InvalidNni& e) {
          throw InternalError(std::string("linearize: predicted op invalid on replay: ") + e.what());
        }
        res.seq.push_back(op);
      }
    }
    for (NodeId u : junctions) {
      int leaves = 0;
      for (EdgeId e : t.incident(u)) leaves += t.is_leaf(t.edge(e).other(u));
      if (leaves == 0) throw InternalError("linearize: junction survived its insertion");
    }
  }
  if (!is_linear(t)) throw InternalError("linearize: output is not linear");
  return res;
}

}  // namespace nni
