#include "nni/leaf_sorter.hpp"

#include <algorithm>
#include <unordered_map>

namespace nni {

std::vector<Position> position_map(const Phylogeny& t, NodeId root, par::Runtime& rt, const std::string& phase) {
  RootedView r = orient(t, root);
  int nn = t.node_count();
  std::vector<int> level(nn, 0);
  std::vector<NodeId> jump(nn, kNone);
  rt.map(phase, nn, [&](std::size_t v) {
    jump[v] = r.parent[v];
    level[v] = jump[v] == kNone ? 0 : 1;
  });
  bool more = true;
  while (more) {
    auto level2 = level;
    auto jump2 = jump;
    rt.map(phase, nn, [&](std::size_t v) {
      NodeId w = jump[v];
      if (w == kNone) return;
      level2[v] = level[v] + level[w];
      jump2[v] = jump[w];
    });
    level.swap(level2);
    jump.swap(jump2);
    more = std::any_of(jump.begin(), jump.end(), [](NodeId x) { return x != kNone; });
  }
  std::vector<Position> out(t.edge_count());
  std::vector<int> seen;
  for (NodeId v : r.bfs) {
    EdgeId e = r.parent_edge[v];
    if (e == kNone) continue;
    if (static_cast<int>(seen.size()) <= level[v]) seen.resize(level[v] + 1, 0);
    out[e] = {level[v], seen[level[v]]++};
  }
  return out;
}

namespace {

void require_same_shape(const AuxiliaryTree& x, const AuxiliaryTree& y) {
  const Phylogeny& a = x.tree;
  const Phylogeny& b = y.tree;
  bool same = a.node_count() == b.node_count() && a.edge_count() == b.edge_count() && x.slots == y.slots;
  for (EdgeId e = 0; same && e < a.edge_count(); ++e) {
    const Edge& p = a.edge(e);
    const Edge& q = b.edge(e);
    same = p.a == q.a && p.b == q.b && (a.is_leaf_edge(e) || p.weight == q.weight);
  }
  if (!same) throw TreeError("leaf sort: trees differ beyond leaf order");
}

}  // namespace

LeafPermutation leaf_permutation(const AuxiliaryTree& x, const AuxiliaryTree& y) {
  require_same_shape(x, y);
  const int n = static_cast<int>(x.slots.size());
  std::vector<std::string> want(n);
  for (int s = 0; s < n; ++s) want[s] = y.tree.label(y.slots[s]);

  // Leaves under one node can be listed in any order; align them with x first.
  std::unordered_map<NodeId, std::vector<int>> groups;
  for (int s = 0; s < n; ++s) groups[x.tree.edge(x.tree.incident(x.slots[s])[0]).other(x.slots[s])].push_back(s);
  for (auto& [parent, slots] : groups) {
    if (slots.size() < 2) continue;
    std::vector<std::string> pool;
    for (int s : slots) pool.push_back(want[s]);
    std::vector<char> placed(slots.size(), 0);
    std::vector<std::string> fresh(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
      auto it = std::find(pool.begin(), pool.end(), x.tree.label(x.slots[slots[i]]));
      if (it != pool.end()) {
        fresh[i] = *it;
        placed[i] = 1;
        pool.erase(it);
      }
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (!placed[i]) fresh[i] = pool[k++];
    for (std::size_t i = 0; i < slots.size(); ++i) want[slots[i]] = fresh[i];
  }

  std::unordered_map<std::string, int> where;
  for (int s = 0; s < n; ++s) where.emplace(want[s], s);
  if (static_cast<int>(where.size()) != n) throw TreeError("leaf sort: duplicate taxa");
  LeafPermutation p;
  p.pi.resize(n);
  for (int s = 0; s < n; ++s) {
    auto it = where.find(x.tree.label(x.slots[s]));
    if (it == where.end()) throw TaxaMismatch("leaf sort: taxa sets differ");
    p.pi[s] = it->second;
  }
  std::vector<char> seen(n, 0);
  for (int c = 0; c < n; ++c) {
    if (seen[c] || p.pi[c] == c) continue;
    std::vector<int> cyc;
    for (int s = c; !seen[s]; s = p.pi[s]) {
      seen[s] = 1;
      cyc.push_back(s);
    }
    p.cycles.push_back(std::move(cyc));
  }
  return p;
}

NniSequence transport_sequence(Phylogeny& t, NodeId leaf, EdgeId target) {
  EdgeId le = t.incident(leaf).at(0);
  NodeId start = t.edge(le).other(leaf);
  const Edge& tg = t.edge(target);
  if (tg.touches(start)) throw InvalidNni("transport: leaf already next to its target");
  // BFS from the leaf's parent to the nearest endpoint of the target edge.
  std::vector<NodeId> from(t.node_count(), kNone);
  std::vector<EdgeId> via(t.node_count(), kNone);
  std::vector<NodeId> queue{start};
  from[start] = start;
  NodeId end = kNone;
  for (std::size_t i = 0; i < queue.size() && end == kNone; ++i) {
    NodeId v = queue[i];
    for (EdgeId e : t.incident(v)) {
      if (e == le || e == target) continue;
      NodeId w = t.edge(e).other(v);
      if (from[w] != kNone || t.is_leaf(w)) continue;
      from[w] = v;
      via[w] = e;
      if (tg.touches(w)) {
        end = w;
        break;
      }
      queue.push_back(w);
    }
  }
  if (end == kNone) throw InternalError("transport: target unreachable");
  std::vector<NodeId> path;
  for (NodeId v = end; v != start; v = from[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  NniSequence seq;
  for (std::size_t i = 0; i < path.size(); ++i) {
    NodeId y = path[i];
    EdgeId p = via[y];
    EdgeId ahead = i + 1 < path.size() ? via[path[i + 1]] : target;
    EdgeId g = kNone;
    for (EdgeId e : t.incident(y))
      if (e != p && e != ahead) g = e;
    seq.push_back({le, p, g});
  }
  apply_sequence_inplace(t, seq);
  return seq;
}

LeafSortResult sort_leaves(const AuxiliaryTree& x, const AuxiliaryTree& y, par::Runtime& rt,
                           const std::string& phase) {
  LeafPermutation perm = leaf_permutation(x, y);
  LeafSortResult res;
  Phylogeny t = x.tree;
  Phylogeny expect = x.tree;
  auto leaf_edge = [&](NodeId v) { return t.incident(v).at(0); };
  auto others = [&](NodeId leaf) {
    EdgeId le = leaf_edge(leaf);
    NodeId p = t.edge(le).other(leaf);
    std::vector<EdgeId> out;
    for (EdgeId e : t.incident(p))
      if (e != le) out.push_back(e);
    return out;
  };
  for (const auto& cyc : perm.cycles) {
    const std::size_t q = cyc.size();
    EdgeId hole = kNone;
    for (std::size_t j = 0; j < q; ++j) {
      NodeId leaf = x.slots[cyc[j]];
      EdgeId le = leaf_edge(leaf);
      std::vector<EdgeId> pieces = others(leaf);
      bool restart = j == 0 || hole == le;
      EdgeId target = j + 1 < q ? leaf_edge(x.slots[cyc[j + 1]]) : hole;
      NniSequence ops = transport_sequence(t, leaf, target);
      if (restart) {
        hole = le;
        if (!ops.empty()) hole = pieces[0] == ops.ops[0].e2 ? pieces[1] : pieces[0];
        for (std::size_t k = 1; k < ops.size(); ++k)
          if (ops.ops[k].e2 == hole) hole = ops.ops[k - 1].e2;
      } else {
        for (std::size_t k = 0; k < ops.size(); ++k) {
          if (ops.ops[k].e2 != hole) continue;
          if (k == 0) throw InternalError("leaf sort: hole edge operated first");
          hole = ops.ops[k - 1].e2;
        }
      }
      for (const NniOp& op : ops.ops) res.cost += t.weight(op.e2);
      res.seq.append(ops);
    }
    // The cycle's taxa now sit one slot further along.
    Phylogeny before = expect;
    for (std::size_t j = 0; j < q; ++j) {
      NodeId from = x.slots[cyc[j]], to = x.slots[cyc[(j + 1) % q]];
      expect.set_label(to, before.label(from));
      expect.set_weight(expect.incident(to)[0], before.weight(before.incident(from)[0]));
    }
    if (!canonical_equal(t, expect)) throw InternalError("leaf sort: cycle did not restore the shape");
    auto pm = position_map(t, t.root_handle(), rt, phase);
    for (const Position& p : pm) res.max_depth = std::max(res.max_depth, p.level);
    ++res.cycles;
  }
  if (!canonical_equal(t, y.tree)) throw InternalError("leaf sort: result differs from target");
  return res;
}

}  // namespace nni
