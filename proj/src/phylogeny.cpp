#include "nni/phylogeny.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace nni {

NodeId Phylogeny::add_node(std::string label) {
  adj_.emplace_back();
  labels_.push_back(std::move(label));
  return static_cast<NodeId>(adj_.size() - 1);
}

EdgeId Phylogeny::add_edge(NodeId a, NodeId b, Weight w) {
  if (a < 0 || b < 0 || a >= node_count() || b >= node_count() || a == b)
    throw TreeError("add_edge: bad endpoints");
  auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({a, b, w});
  adj_[a].push_back(id);
  adj_[b].push_back(id);
  return id;
}

int Phylogeny::leaf_count() const {
  int c = 0;
  for (const auto& a : adj_) c += a.size() == 1;
  return c;
}

NodeId Phylogeny::leaf_end(EdgeId e) const {
  const Edge& ed = edges_.at(e);
  if (is_leaf(ed.a)) return ed.a;
  if (is_leaf(ed.b)) return ed.b;
  return kNone;
}

EdgeId Phylogeny::edge_between(NodeId u, NodeId v) const {
  for (EdgeId e : adj_.at(u))
    if (edges_[e].other(u) == v) return e;
  return kNone;
}

std::vector<NodeId> Phylogeny::leaves() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < node_count(); ++v)
    if (is_leaf(v)) out.push_back(v);
  return out;
}

std::vector<EdgeId> Phylogeny::internal_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (!is_leaf_edge(e)) out.push_back(e);
  return out;
}

std::vector<std::string> Phylogeny::taxa() const {
  std::vector<std::string> out;
  for (NodeId v = 0; v < node_count(); ++v)
    if (is_leaf(v)) out.push_back(labels_[v]);
  std::sort(out.begin(), out.end());
  return out;
}

std::unordered_map<std::string, NodeId> Phylogeny::leaf_index() const {
  std::unordered_map<std::string, NodeId> out;
  for (NodeId v = 0; v < node_count(); ++v)
    if (is_leaf(v)) out.emplace(labels_[v], v);
  return out;
}

NodeId Phylogeny::smallest_taxon_leaf() const {
  NodeId best = kNone;
  for (NodeId v = 0; v < node_count(); ++v)
    if (is_leaf(v) && (best == kNone || labels_[v] < labels_[best])) best = v;
  return best;
}

NodeId Phylogeny::root_handle() const {
  NodeId a = smallest_taxon_leaf();
  if (a == kNone) return kNone;
  return edges_[adj_[a][0]].other(a);
}

void Phylogeny::reattach(EdgeId e, NodeId from, NodeId to) {
  Edge& ed = edges_.at(e);
  if (!ed.touches(from)) throw InvalidNni("reattach: edge not incident to node");
  auto& fa = adj_.at(from);
  fa.erase(std::find(fa.begin(), fa.end(), e));
  adj_.at(to).push_back(e);
  if (ed.a == from)
    ed.a = to;
  else
    ed.b = to;
}

const char* to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Size: return "size";
    case Violation::Kind::Degree: return "degree";
    case Violation::Kind::Bijection: return "bijection";
    case Violation::Kind::Weight: return "weight";
    case Violation::Kind::Connectivity: return "connectivity";
  }
  return "?";
}

std::vector<Violation> validate(const Phylogeny& t) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  int n = t.leaf_count();
  if (n < 3) out.push_back({K::Size, "fewer than 3 taxa"});
  std::unordered_set<std::string> seen;
  for (NodeId v = 0; v < t.node_count(); ++v) {
    int d = t.degree(v);
    if (d != 1 && d != 3)
      out.push_back({K::Degree, "node " + std::to_string(v) + " has degree " + std::to_string(d)});
    if (d == 1) {
      if (t.label(v).empty())
        out.push_back({K::Bijection, "leaf " + std::to_string(v) + " has no taxon"});
      else if (!seen.insert(t.label(v)).second)
        out.push_back({K::Bijection, "duplicate taxon '" + t.label(v) + "'"});
    }
  }
  for (EdgeId e = 0; e < t.edge_count(); ++e)
    if (!t.weight(e).positive())
      out.push_back({K::Weight, "edge " + std::to_string(e) + " weight not positive"});
  if (t.node_count() > 0) {
    bool connected = t.edge_count() == t.node_count() - 1;
    if (connected) {
      std::vector<char> mark(t.node_count(), 0);
      std::vector<NodeId> stack{0};
      mark[0] = 1;
      int reached = 1;
      while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (EdgeId e : t.incident(v)) {
          NodeId w = t.edge(e).other(v);
          if (!mark[w]) {
            mark[w] = 1;
            ++reached;
            stack.push_back(w);
          }
        }
      }
      connected = reached == t.node_count();
    }
    if (!connected) out.push_back({K::Connectivity, "graph is not a tree"});
  }
  return out;
}

void require_valid(const Phylogeny& t) {
  auto v = validate(t);
  if (v.empty()) return;
  std::string msg = "invalid phylogeny:";
  for (const auto& x : v) msg += std::string(" [") + to_string(x.kind) + "] " + x.message + ";";
  throw TreeError(msg);
}

const char* to_string(NodeClass c) {
  switch (c) {
    case NodeClass::Leaf: return "leaf";
    case NodeClass::Endnode: return "endnode";
    case NodeClass::Pathnode: return "pathnode";
    case NodeClass::Junction: return "junction";
  }
  return "?";
}

std::vector<NodeClass> classify_nodes(const Phylogeny& t) {
  std::vector<NodeClass> out(t.node_count(), NodeClass::Leaf);
  for (NodeId v = 0; v < t.node_count(); ++v) {
    if (t.is_leaf(v)) continue;
    int leaves = 0;
    for (EdgeId e : t.incident(v)) leaves += t.is_leaf(t.edge(e).other(v));
    out[v] = leaves >= 2 ? NodeClass::Endnode : leaves == 1 ? NodeClass::Pathnode : NodeClass::Junction;
  }
  return out;
}

bool is_linear(const Phylogeny& t) {
  for (NodeClass c : classify_nodes(t))
    if (c == NodeClass::Junction) return false;
  return true;
}

WeightMultiset weight_multiset(const Phylogeny& t) {
  WeightMultiset m;
  for (EdgeId e : t.internal_edges()) {
    m.values.push_back(t.weight(e));
    m.total += t.weight(e);
  }
  std::sort(m.values.begin(), m.values.end());
  return m;
}

Finiteness finiteness_check(const Phylogeny& t1, const Phylogeny& t2) {
  if (t1.taxa() != t2.taxa()) throw TaxaMismatch("trees have different taxa sets");
  auto idx2 = t2.leaf_index();
  Finiteness f;
  for (NodeId v : t1.leaves()) {
    NodeId u = idx2.at(t1.label(v));
    Weight a = t1.weight(t1.incident(v)[0]), b = t2.weight(t2.incident(u)[0]);
    if (a != b) {
      f.status = Finiteness::Status::LeafEdge;
      f.detail = "leaf edge of '" + t1.label(v) + "': " + a.to_string() + " vs " + b.to_string();
      return f;
    }
  }
  if (weight_multiset(t1).values != weight_multiset(t2).values) {
    f.status = Finiteness::Status::Multiset;
    f.detail = "internal edge weight multisets differ";
  }
  return f;
}

RootedView orient(const Phylogeny& t, NodeId root) {
  RootedView r;
  r.root = root;
  r.parent.assign(t.node_count(), kNone);
  r.parent_edge.assign(t.node_count(), kNone);
  r.depth.assign(t.node_count(), 0);
  r.bfs.reserve(t.node_count());
  r.bfs.push_back(root);
  for (std::size_t i = 0; i < r.bfs.size(); ++i) {
    NodeId v = r.bfs[i];
    for (EdgeId e : t.incident(v)) {
      if (e == r.parent_edge[v]) continue;
      NodeId w = t.edge(e).other(v);
      r.parent[w] = v;
      r.parent_edge[w] = e;
      r.depth[w] = r.depth[v] + 1;
      r.bfs.push_back(w);
    }
  }
  return r;
}

std::vector<SplitBits> split_bits(const Phylogeny& t) {
  auto taxa = t.taxa();
  std::size_t words = (taxa.size() + 63) / 64;
  std::unordered_map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < taxa.size(); ++i) rank.emplace(taxa[i], i);
  RootedView r = orient(t, t.smallest_taxon_leaf());
  std::vector<SplitBits> below(t.node_count(), SplitBits(words, 0));
  for (auto it = r.bfs.rbegin(); it != r.bfs.rend(); ++it) {
    NodeId v = *it;
    if (t.is_leaf(v) && v != r.root) {
      std::size_t k = rank.at(t.label(v));
      below[v][k / 64] |= std::uint64_t{1} << (k % 64);
    }
    NodeId p = r.parent[v];
    if (p != kNone)
      for (std::size_t w = 0; w < words; ++w) below[p][w] |= below[v][w];
  }
  std::vector<SplitBits> out(t.edge_count());
  for (NodeId v = 0; v < t.node_count(); ++v)
    if (r.parent_edge[v] != kNone) out[r.parent_edge[v]] = std::move(below[v]);
  return out;
}

std::vector<EdgeSplit> edge_splits(const Phylogeny& t) {
  NodeId a = t.smallest_taxon_leaf();
  RootedView r = orient(t, a);
  std::vector<EdgeSplit> out;
  for (EdgeId e : t.internal_edges()) {
    const Edge& ed = t.edge(e);
    NodeId child = r.parent[ed.a] == ed.b ? ed.a : ed.b;
    EdgeSplit s;
    s.edge = e;
    std::vector<char> far(t.node_count(), 0);
    std::vector<NodeId> stack{child};
    far[child] = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (EdgeId f : t.incident(v)) {
        if (f == e) continue;
        NodeId w = t.edge(f).other(v);
        if (!far[w]) {
          far[w] = 1;
          stack.push_back(w);
        }
      }
    }
    for (NodeId v = 0; v < t.node_count(); ++v)
      if (t.is_leaf(v)) (far[v] ? s.far_taxa : s.near_taxa).push_back(t.label(v));
    for (EdgeId f : t.internal_edges()) {
      if (f == e) continue;
      (far[t.edge(f).a] ? s.far_weights : s.near_weights).push_back(t.weight(f));
    }
    std::sort(s.near_taxa.begin(), s.near_taxa.end());
    std::sort(s.far_taxa.begin(), s.far_taxa.end());
    std::sort(s.near_weights.begin(), s.near_weights.end());
    std::sort(s.far_weights.begin(), s.far_weights.end());
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::vector<std::pair<SplitBits, Weight>> weighted_splits(const Phylogeny& t) {
  auto bits = split_bits(t);
  std::vector<std::pair<SplitBits, Weight>> out;
  out.reserve(bits.size());
  for (EdgeId e = 0; e < t.edge_count(); ++e) out.emplace_back(std::move(bits[e]), t.weight(e));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool canonical_equal(const Phylogeny& a, const Phylogeny& b) {
  if (a.edge_count() != b.edge_count() || a.taxa() != b.taxa()) return false;
  return weighted_splits(a) == weighted_splits(b);
}

std::vector<EdgeId> match_edges(const Phylogeny& from, const Phylogeny& to) {
  auto fb = split_bits(from);
  auto tb = split_bits(to);
  std::map<SplitBits, EdgeId> where;
  for (EdgeId e = 0; e < to.edge_count(); ++e) where.emplace(std::move(tb[e]), e);
  std::vector<EdgeId> out(from.edge_count(), kNone);
  for (EdgeId e = 0; e < from.edge_count(); ++e) {
    auto it = where.find(fb[e]);
    if (it == where.end()) throw InternalError("match_edges: trees are not equal");
    out[e] = it->second;
  }
  return out;
}

}  // namespace nni
