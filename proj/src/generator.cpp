#include "nni/generator.hpp"

#include <algorithm>

namespace nni {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return x % n;
}

namespace {

std::string taxon_name(int i, int n) {
  std::string num = std::to_string(i + 1);
  std::string width = std::to_string(n);
  return "t" + std::string(width.size() - num.size(), '0') + num;
}

Phylogeny random_shape(int n, Rng& rng) {
  Phylogeny t;
  NodeId c = t.add_node();
  for (int i = 0; i < 3; ++i) t.add_edge(c, t.add_node(taxon_name(i, n)), Weight::from_int(1));
  for (int i = 3; i < n; ++i) {
    EdgeId e = static_cast<EdgeId>(rng.below(t.edge_count()));
    NodeId b = t.edge(e).b;
    NodeId x = t.add_node();
    NodeId leaf = t.add_node(taxon_name(i, n));
    t.reattach(e, b, x);
    t.add_edge(x, b, Weight::from_int(1));
    t.add_edge(x, leaf, Weight::from_int(1));
  }
  return t;
}

std::vector<Weight> internal_weights(int n, Rng& rng, bool dup) {
  std::vector<Weight> w;
  int m = n - 3;
  int range = std::max(1, m / 2);
  for (int i = 0; i < m; ++i)
    w.push_back(Weight::from_int(dup ? 1 + static_cast<std::int64_t>(rng.below(range)) : i + 1));
  rng.shuffle(w.begin(), w.end());
  return w;
}

void assign(Phylogeny& t, const std::vector<Weight>& internal, const std::vector<Weight>& leaf_by_taxon) {
  std::size_t k = 0;
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    NodeId l = t.leaf_end(e);
    if (l == kNone) {
      t.set_weight(e, internal.at(k++));
    } else {
      int idx = std::stoi(t.label(l).substr(1)) - 1;
      t.set_weight(e, leaf_by_taxon.at(idx));
    }
  }
}

}  // namespace

Phylogeny random_tree(int n, Rng& rng, bool dup) {
  if (n < 3) throw TreeError("random tree needs at least 3 taxa");
  Phylogeny t = random_shape(n, rng);
  std::vector<Weight> leaf(n);
  for (auto& w : leaf) w = Weight::from_int(1 + static_cast<std::int64_t>(rng.below(3)));
  assign(t, internal_weights(n, rng, dup), leaf);
  return t;
}

GeneratedPair generate_pair(const GenOptions& opt) {
  Rng rng(opt.seed);
  GeneratedPair g;
  g.t1 = random_tree(opt.taxa, rng, opt.dup_weights);
  g.t2 = g.t1;
  auto internal = g.t1.internal_edges();
  for (int i = 0; i < opt.moves && !internal.empty(); ++i) {
    EdgeId e = internal[rng.below(internal.size())];
    const Edge& ed = g.t2.edge(e);
    std::vector<EdgeId> left, right;
    for (EdgeId f : g.t2.incident(ed.a))
      if (f != e) left.push_back(f);
    for (EdgeId f : g.t2.incident(ed.b))
      if (f != e) right.push_back(f);
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    NniOp op{left[0], e, right[rng.below(2)]};
    g.cost += apply_nni_inplace(g.t2, op);
    g.moves.push_back(op);
  }
  return g;
}

GeneratedPair generate_independent(int n, std::uint64_t seed, bool dup) {
  Rng rng(seed);
  GeneratedPair g;
  g.t1 = random_tree(n, rng, dup);
  Phylogeny t2 = random_shape(n, rng);
  std::vector<Weight> internal = weight_multiset(g.t1).values;
  rng.shuffle(internal.begin(), internal.end());
  std::vector<Weight> leaf(n);
  for (NodeId v : g.t1.leaves()) leaf[std::stoi(g.t1.label(v).substr(1)) - 1] = g.t1.weight(g.t1.incident(v)[0]);
  assign(t2, internal, leaf);
  g.t2 = std::move(t2);
  return g;
}

}  // namespace nni
