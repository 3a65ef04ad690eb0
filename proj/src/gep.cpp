#include "nni/gep.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace nni {

int LabelSpace::taxon_label(const std::string& name) const {
  auto it = std::lower_bound(taxa.begin(), taxa.end(), name);
  if (it == taxa.end() || *it != name) throw TaxaMismatch("unknown taxon '" + name + "'");
  return static_cast<int>(it - taxa.begin()) + 1;
}

int LabelSpace::weight_label(Weight w) const {
  auto it = std::lower_bound(weights.begin(), weights.end(), w);
  if (it == weights.end() || *it != w) throw TreeError("unknown weight class " + w.to_string());
  return static_cast<int>(taxa.size() + (it - weights.begin())) + 1;
}

LabelSpace label_space(const Phylogeny& t1, const Phylogeny& t2) {
  LabelSpace s;
  s.taxa = t1.taxa();
  auto other = t2.taxa();
  s.taxa.insert(s.taxa.end(), other.begin(), other.end());
  std::sort(s.taxa.begin(), s.taxa.end());
  s.taxa.erase(std::unique(s.taxa.begin(), s.taxa.end()), s.taxa.end());
  for (const Phylogeny* t : {&t1, &t2})
    for (EdgeId e : t->internal_edges()) s.weights.push_back(t->weight(e));
  std::sort(s.weights.begin(), s.weights.end());
  s.weights.erase(std::unique(s.weights.begin(), s.weights.end()), s.weights.end());
  return s;
}

int AugmentedTree::lca(int a, int b) const {
  int l = first[a], r = first[b];
  if (l > r) std::swap(l, r);
  int k = std::bit_width(static_cast<unsigned>(r - l + 1)) - 1;
  int x = sparse[k][l], y = sparse[k][r - (1 << k) + 1];
  return depth[tour[x]] <= depth[tour[y]] ? tour[x] : tour[y];
}

AugmentedTree augment_and_root(const Phylogeny& t, const LabelSpace& labels, par::Runtime& rt,
                               const std::string& phase) {
  using Kind = AugmentedTree::Kind;
  AugmentedTree R;
  RootedView rv = orient(t, t.root_handle());
  std::vector<int> aug_of(t.node_count(), -1);
  auto add = [&](int parent, Kind kind) {
    int id = R.node_count();
    R.parent.push_back(parent);
    R.children.emplace_back();
    R.kind.push_back(kind);
    R.label.push_back(0);
    R.source.push_back(kNone);
    R.original.push_back(kNone);
    R.weight.emplace_back();
    if (parent >= 0) R.children[parent].push_back(id);
    return id;
  };
  for (NodeId v : rv.bfs) {
    int parent = -1;
    if (v != rv.root) {
      parent = aug_of[rv.parent[v]];
      EdgeId e = rv.parent_edge[v];
      if (!t.is_leaf_edge(e)) {
        int s = add(parent, Kind::Subdivision);
        R.source[s] = e;
        R.weight[s] = t.weight(e);
        int w = add(s, Kind::WeightLeaf);
        R.label[w] = labels.weight_label(t.weight(e));
        parent = s;
      }
    }
    int a = add(parent, Kind::Original);
    R.original[a] = v;
    if (t.is_leaf(v)) R.label[a] = labels.taxon_label(t.label(v));
    aug_of[v] = a;
  }
  R.root = aug_of[rv.root];

  int N = R.node_count();
  R.pre.assign(N, 0);
  R.size.assign(N, 1);
  R.depth.assign(N, 0);
  R.first.assign(N, 0);
  R.tour.clear();
  R.tour.reserve(2 * N);
  // Iterative DFS producing preorder numbers and the Euler tour.
  std::vector<std::pair<int, std::size_t>> stack{{R.root, 0}};
  int counter = 0;
  R.pre[R.root] = counter++;
  R.first[R.root] = 0;
  R.tour.push_back(R.root);
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    if (i < R.children[v].size()) {
      int c = R.children[v][i++];
      R.depth[c] = R.depth[v] + 1;
      R.pre[c] = counter++;
      R.first[c] = static_cast<int>(R.tour.size());
      R.tour.push_back(c);
      stack.push_back({c, 0});
    } else {
      int done = v;
      stack.pop_back();
      if (!stack.empty()) {
        int p = stack.back().first;
        R.size[p] += R.size[done];
        R.tour.push_back(p);
      }
    }
  }
  int len = static_cast<int>(R.tour.size());
  R.sparse.assign(1, std::vector<int>(len));
  std::iota(R.sparse[0].begin(), R.sparse[0].end(), 0);
  for (int k = 1; (1 << k) <= len; ++k) {
    const auto& prev = R.sparse[k - 1];
    std::vector<int> cur(len - (1 << k) + 1);
    rt.map(phase, cur.size(), [&](std::size_t i) {
      int x = prev[i], y = prev[i + (1 << (k - 1))];
      cur[i] = R.depth[R.tour[x]] <= R.depth[R.tour[y]] ? x : y;
    });
    R.sparse.push_back(std::move(cur));
  }
  return R;
}

AugmentedTree augment_and_root(const Phylogeny& t) {
  par::Runtime rt;
  return augment_and_root(t, label_space(t, t), rt);
}

namespace {

int index_in(const AugmentedTree& R, const std::vector<int>& nodes, int x) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), x, [&](int a, int b) { return R.pre[a] < R.pre[b]; });
  return it != nodes.end() && *it == x ? static_cast<int>(it - nodes.begin()) : -1;
}

}  // namespace

ContractedSubtree induced_subtree(const AugmentedTree& R, std::vector<int> leaves) {
  if (leaves.empty()) throw TreeError("induced subtree of an empty label set");
  auto by_pre = [&](int a, int b) { return R.pre[a] < R.pre[b]; };
  std::sort(leaves.begin(), leaves.end(), by_pre);
  ContractedSubtree c;
  c.nodes = leaves;
  for (std::size_t i = 1; i < leaves.size(); ++i) c.nodes.push_back(R.lca(leaves[i - 1], leaves[i]));
  std::sort(c.nodes.begin(), c.nodes.end(), by_pre);
  c.nodes.erase(std::unique(c.nodes.begin(), c.nodes.end()), c.nodes.end());
  c.parent.assign(c.nodes.size(), -1);
  for (std::size_t i = 1; i < c.nodes.size(); ++i)
    c.parent[i] = index_in(R, c.nodes, R.lca(c.nodes[i - 1], c.nodes[i]));
  c.leaves = std::move(leaves);
  return c;
}

ContractedSubtree induced_subtree_by_labels(const AugmentedTree& R, const std::vector<int>& labels) {
  std::vector<int> leaves;
  for (int v = 0; v < R.node_count(); ++v)
    if (R.is_leaf(v) && std::find(labels.begin(), labels.end(), R.label[v]) != labels.end()) leaves.push_back(v);
  return induced_subtree(R, std::move(leaves));
}

namespace {

std::vector<int> leaf_counts(const AugmentedTree& R, const ContractedSubtree& c) {
  std::vector<int> pres;
  for (int l : c.leaves) pres.push_back(R.pre[l]);
  std::vector<int> out(c.nodes.size());
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    int x = c.nodes[i];
    auto lo = std::lower_bound(pres.begin(), pres.end(), R.pre[x]);
    auto hi = std::lower_bound(pres.begin(), pres.end(), R.pre[x] + R.size[x]);
    out[i] = static_cast<int>(hi - lo);
  }
  return out;
}

}  // namespace

LabelPair single_label_partition(const AugmentedTree& R, const ContractedSubtree& ra, const AugmentedTree& Rp,
                                 const ContractedSubtree& rpa) {
  return {leaf_counts(R, ra), leaf_counts(Rp, rpa)};
}

namespace {

struct Group {
  ContractedSubtree r[2];
  std::vector<int> rho[2];
};

struct Job {
  const ContractedSubtree* ab[2];
  const ContractedSubtree* a[2];
  const std::vector<int>* rho_a[2];
  const ContractedSubtree* b[2];
  const std::vector<int>* rho_b[2];
};

// Stable counting sort of indices by key in [0, range).
void counting_sort(std::vector<int>& idx, const std::vector<int>& key, int range) {
  std::vector<int> count(range + 1, 0);
  for (int i : idx) ++count[key[i] + 1];
  std::partial_sum(count.begin(), count.end(), count.begin());
  std::vector<int> out(idx.size());
  for (int i : idx) out[count[key[i]]++] = i;
  idx.swap(out);
}

// Tuple (max A label below, max B label below) for every node of each merged
// restriction, then dense labels per job across both trees.
std::vector<LabelPair> relabel_jobs(const AugmentedTree* T[2], const std::vector<Job>& jobs, par::Runtime& rt,
                                    const std::string& phase) {
  struct Slot {
    int job, side, idx;
  };
  std::vector<Slot> slots;
  std::vector<int> base(jobs.size() * 2);
  for (int j = 0; j < static_cast<int>(jobs.size()); ++j)
    for (int s = 0; s < 2; ++s) {
      base[2 * j + s] = static_cast<int>(slots.size());
      for (int i = 0; i < static_cast<int>(jobs[j].ab[s]->nodes.size()); ++i) slots.push_back({j, s, i});
    }
  const std::size_t n = slots.size();
  std::vector<int> val(2 * n, 0);
  std::vector<int> jump(n, -1);
  rt.map(phase, n, [&](std::size_t k) {
    const Slot& sl = slots[k];
    const Job& jb = jobs[sl.job];
    int x = jb.ab[sl.side]->nodes[sl.idx];
    int ia = index_in(*T[sl.side], jb.a[sl.side]->nodes, x);
    int ib = index_in(*T[sl.side], jb.b[sl.side]->nodes, x);
    val[2 * k] = ia >= 0 ? (*jb.rho_a[sl.side])[ia] : 0;
    val[2 * k + 1] = ib >= 0 ? (*jb.rho_b[sl.side])[ib] : 0;
    int p = jb.ab[sl.side]->parent[sl.idx];
    jump[k] = p < 0 ? -1 : base[2 * sl.job + sl.side] + p;
  });
  // Max-propagation toward the top by pointer jumping.
  while (std::any_of(jump.begin(), jump.end(), [](int x) { return x >= 0; })) {
    rt.round(
        phase, val, n,
        [&](std::size_t k, const std::vector<int>& snap, auto& emit) {
          emit(2 * k, snap[2 * k]);
          emit(2 * k + 1, snap[2 * k + 1]);
          if (jump[k] >= 0) {
            emit(2 * static_cast<std::size_t>(jump[k]), snap[2 * k]);
            emit(2 * static_cast<std::size_t>(jump[k]) + 1, snap[2 * k + 1]);
          }
        },
        par::Conflict::Max);
    auto jump2 = jump;
    rt.map(phase, n, [&](std::size_t k) { jump2[k] = jump[k] < 0 ? -1 : jump[jump[k]]; });
    jump.swap(jump2);
  }

  std::vector<LabelPair> out(jobs.size());
  rt.map(phase, jobs.size(), [&](std::size_t j) {
    int lo = base[2 * j];
    int cnt = static_cast<int>(jobs[j].ab[0]->nodes.size() + jobs[j].ab[1]->nodes.size());
    std::vector<int> idx(cnt), ka(cnt), kb(cnt);
    int range = 1;
    for (int i = 0; i < cnt; ++i) {
      idx[i] = i;
      ka[i] = val[2 * (lo + i)];
      kb[i] = val[2 * (lo + i) + 1];
      range = std::max({range, ka[i] + 1, kb[i] + 1});
    }
    counting_sort(idx, kb, range);
    counting_sort(idx, ka, range);
    std::vector<int> label(cnt);
    int next = 0;
    for (int r = 0; r < cnt; ++r) {
      int i = idx[r];
      if (r == 0 || ka[i] != ka[idx[r - 1]] || kb[i] != kb[idx[r - 1]]) ++next;
      label[i] = next;
    }
    int n0 = static_cast<int>(jobs[j].ab[0]->nodes.size());
    out[j].a.assign(label.begin(), label.begin() + n0);
    out[j].b.assign(label.begin() + n0, label.end());
  });
  return out;
}

std::vector<int> merge_by_pre(const AugmentedTree& R, const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> out(x.size() + y.size());
  std::merge(x.begin(), x.end(), y.begin(), y.end(), out.begin(), [&](int a, int b) { return R.pre[a] < R.pre[b]; });
  return out;
}

}  // namespace

LabelPair relabel_merge(const AugmentedTree& R, const AugmentedTree& Rp, const ContractedSubtree& rab,
                        const ContractedSubtree& rpab, const ContractedSubtree& ra, const ContractedSubtree& rpa,
                        const LabelPair& rho_a, const ContractedSubtree& rb, const ContractedSubtree& rpb,
                        const LabelPair& rho_b, par::Runtime& rt, const std::string& phase) {
  const AugmentedTree* T[2] = {&R, &Rp};
  Job j{{&rab, &rpab}, {&ra, &rpa}, {&rho_a.a, &rho_a.b}, {&rb, &rpb}, {&rho_b.a, &rho_b.b}};
  return relabel_jobs(T, {j}, rt, phase).front();
}

PartitionLabeling partition_labeling(const AugmentedTree& R, const AugmentedTree& Rp, par::Runtime& rt,
                                     const std::string& phase) {
  const AugmentedTree* T[2] = {&R, &Rp};
  std::map<int, std::vector<int>> by_label[2];
  for (int s = 0; s < 2; ++s) {
    std::vector<int> order(T[s]->node_count());
    for (int v = 0; v < T[s]->node_count(); ++v) order[T[s]->pre[v]] = v;
    for (int v : order)
      if (T[s]->is_leaf(v)) by_label[s][T[s]->label[v]].push_back(v);
  }
  if (by_label[0].size() != by_label[1].size())
    throw TreeError("partition labeling: leaf label multisets differ");
  for (auto it0 = by_label[0].begin(), it1 = by_label[1].begin(); it0 != by_label[0].end(); ++it0, ++it1)
    if (it0->first != it1->first || it0->second.size() != it1->second.size())
      throw TreeError("partition labeling: leaf label multisets differ");

  std::vector<int> labels;
  for (const auto& [l, v] : by_label[0]) labels.push_back(l);
  std::vector<Group> groups(labels.size());
  rt.map(phase, labels.size(), [&](std::size_t i) {
    for (int s = 0; s < 2; ++s) groups[i].r[s] = induced_subtree(*T[s], by_label[s].at(labels[i]));
    LabelPair lp = single_label_partition(R, groups[i].r[0], Rp, groups[i].r[1]);
    groups[i].rho[0] = std::move(lp.a);
    groups[i].rho[1] = std::move(lp.b);
  });

  PartitionLabeling pl;
  pl.distinct_labels = static_cast<int>(labels.size());
  while (groups.size() > 1) {
    std::size_t npairs = groups.size() / 2;
    std::vector<Group> next(npairs + groups.size() % 2);
    rt.map(phase, npairs, [&](std::size_t p) {
      for (int s = 0; s < 2; ++s)
        next[p].r[s] = induced_subtree(*T[s], merge_by_pre(*T[s], groups[2 * p].r[s].leaves, groups[2 * p + 1].r[s].leaves));
    });
    std::vector<Job> jobs;
    for (std::size_t p = 0; p < npairs; ++p) {
      const Group& A = groups[2 * p];
      const Group& B = groups[2 * p + 1];
      jobs.push_back({{&next[p].r[0], &next[p].r[1]},
                      {&A.r[0], &A.r[1]},
                      {&A.rho[0], &A.rho[1]},
                      {&B.r[0], &B.r[1]},
                      {&B.rho[0], &B.rho[1]}});
    }
    auto relabeled = relabel_jobs(T, jobs, rt, phase);
    for (std::size_t p = 0; p < npairs; ++p) {
      next[p].rho[0] = std::move(relabeled[p].a);
      next[p].rho[1] = std::move(relabeled[p].b);
    }
    if (groups.size() % 2) next.back() = std::move(groups.back());
    groups.swap(next);
    ++pl.pairing_rounds;
  }

  pl.rho.assign(R.node_count(), 0);
  pl.rhop.assign(Rp.node_count(), 0);
  const Group& g = groups.front();
  for (std::size_t i = 0; i < g.r[0].nodes.size(); ++i) pl.rho[g.r[0].nodes[i]] = g.rho[0][i];
  for (std::size_t i = 0; i < g.r[1].nodes.size(); ++i) pl.rhop[g.r[1].nodes[i]] = g.rho[1][i];
  return pl;
}

GoodEdgePairSet find_good_edge_pairs(const Phylogeny& t1, const Phylogeny& t2, par::Runtime& rt,
                                     const std::string& phase) {
  Finiteness f = finiteness_check(t1, t2);
  if (!f.finite()) throw InfiniteDistance("infinite NNI distance: " + f.detail);
  LabelSpace ls = label_space(t1, t2);
  AugmentedTree R = augment_and_root(t1, ls, rt, phase);
  AugmentedTree Rp = augment_and_root(t2, ls, rt, phase);
  PartitionLabeling pl = partition_labeling(R, Rp, rt, phase);

  struct Key {
    int label;
    Weight w;
    EdgeId e;
    bool operator<(const Key& o) const {
      return label != o.label ? label < o.label : w != o.w ? w < o.w : e < o.e;
    }
  };
  std::vector<Key> k1, k2;
  for (int v = 0; v < R.node_count(); ++v)
    if (R.kind[v] == AugmentedTree::Kind::Subdivision) k1.push_back({pl.rho[v], R.weight[v], R.source[v]});
  for (int v = 0; v < Rp.node_count(); ++v)
    if (Rp.kind[v] == AugmentedTree::Kind::Subdivision) k2.push_back({pl.rhop[v], Rp.weight[v], Rp.source[v]});
  std::sort(k1.begin(), k1.end());
  std::sort(k2.begin(), k2.end());

  GoodEdgePairSet out;
  out.pairing_rounds = pl.pairing_rounds;
  out.distinct_labels = pl.distinct_labels;
  std::vector<GoodPair> found(k1.size());
  std::vector<char> hit(k1.size(), 0);
  rt.map(phase, k1.size(), [&](std::size_t i) {
    auto same = [](const Key& a, const Key& b) { return a.label == b.label && a.w == b.w; };
    auto lo1 = std::lower_bound(k1.begin(), k1.end(), Key{k1[i].label, k1[i].w, kNone});
    std::size_t rank = i - (lo1 - k1.begin());
    auto lo2 = std::lower_bound(k2.begin(), k2.end(), Key{k1[i].label, k1[i].w, kNone});
    auto at = lo2 + static_cast<std::ptrdiff_t>(rank);
    if (at < k2.end() && same(*at, k1[i])) {
      found[i] = {k1[i].e, at->e, k1[i].w};
      hit[i] = 1;
    }
  });
  for (std::size_t i = 0; i < k1.size(); ++i)
    if (hit[i]) out.pairs.push_back(found[i]);
  std::sort(out.pairs.begin(), out.pairs.end());

  auto b1 = split_bits(t1);
  auto b2 = split_bits(t2);
  for (const GoodPair& p : out.pairs)
    if (b1[p.e1] != b2[p.e2] || t1.weight(p.e1) != t2.weight(p.e2))
      throw InternalError("good pair fails the split check");
  return out;
}

std::vector<GoodPair> brute_force_good_pairs(const Phylogeny& t1, const Phylogeny& t2) {
  auto s1 = edge_splits(t1);
  auto s2 = edge_splits(t2);
  std::vector<GoodPair> out;
  for (const auto& a : s1)
    for (const auto& b : s2)
      if (t1.weight(a.edge) == t2.weight(b.edge) && a.far_taxa == b.far_taxa && a.far_weights == b.far_weights)
        out.push_back({a.edge, b.edge, t1.weight(a.edge)});
  std::sort(out.begin(), out.end());
  return out;
}

std::string pseudo_leaf_label(std::size_t i) { return "\x1f" "pair" + std::to_string(i); }

namespace {

struct Piece {
  Phylogeny tree;
  std::vector<EdgeId> map;
  std::vector<std::string> taxa;
};

std::vector<Piece> cut(const Phylogeny& t, const std::vector<EdgeId>& cut_edges) {
  std::vector<int> pair_of(t.edge_count(), -1);
  for (std::size_t i = 0; i < cut_edges.size(); ++i) pair_of[cut_edges[i]] = static_cast<int>(i);
  std::vector<int> comp(t.node_count(), -1);
  int ncomp = 0;
  for (NodeId s = 0; s < t.node_count(); ++s) {
    if (comp[s] >= 0 || t.is_leaf(s)) continue;
    std::vector<NodeId> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (EdgeId e : t.incident(v)) {
        if (pair_of[e] >= 0) continue;
        NodeId w = t.edge(e).other(v);
        if (comp[w] < 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
      }
    }
    ++ncomp;
  }
  std::vector<Piece> out(ncomp);
  std::vector<NodeId> local(t.node_count(), kNone);
  auto node_in = [&](Piece& p, NodeId v) {
    if (local[v] == kNone) local[v] = p.tree.add_node(t.is_leaf(v) ? t.label(v) : std::string{});
    return local[v];
  };
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    const Edge& ed = t.edge(e);
    if (pair_of[e] < 0) {
      Piece& p = out[comp[ed.a]];
      NodeId a = node_in(p, ed.a), b = node_in(p, ed.b);
      p.tree.add_edge(a, b, ed.weight);
      p.map.push_back(e);
    } else {
      for (NodeId end : {ed.a, ed.b}) {
        Piece& p = out[comp[end]];
        NodeId a = node_in(p, end);
        NodeId leaf = p.tree.add_node(pseudo_leaf_label(pair_of[e]));
        p.tree.add_edge(a, leaf, ed.weight);
        p.map.push_back(e);
      }
    }
  }
  for (Piece& p : out) {
    require_valid(p.tree);
    p.taxa = p.tree.taxa();
  }
  return out;
}

}  // namespace

std::vector<Component> decompose(const Phylogeny& t1, const Phylogeny& t2, const GoodEdgePairSet& pairs) {
  for (const auto& name : t1.taxa())
    if (!name.empty() && name[0] == '\x1f') throw TreeError("taxon name collides with pseudo-leaf labels");
  std::vector<EdgeId> c1, c2;
  for (const GoodPair& p : pairs.pairs) {
    c1.push_back(p.e1);
    c2.push_back(p.e2);
  }
  auto p1 = cut(t1, c1);
  auto p2 = cut(t2, c2);
  if (p1.size() != p2.size()) throw InternalError("decompose: component counts differ");
  std::map<std::vector<std::string>, std::size_t> where;
  for (std::size_t i = 0; i < p2.size(); ++i) where.emplace(p2[i].taxa, i);
  std::vector<Component> out;
  for (Piece& a : p1) {
    auto it = where.find(a.taxa);
    if (it == where.end()) throw InternalError("decompose: unmatched component");
    Piece& b = p2[it->second];
    out.push_back({std::move(a.tree), std::move(b.tree), std::move(a.map), std::move(b.map), a.taxa});
  }
  std::sort(out.begin(), out.end(), [](const Component& x, const Component& y) { return x.taxa < y.taxa; });
  return out;
}

}  // namespace nni
