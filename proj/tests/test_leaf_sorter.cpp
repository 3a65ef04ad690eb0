#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "helpers.hpp"
#include "nni/aux_tree.hpp"
#include "nni/leaf_sorter.hpp"

using namespace nni;

namespace {

AuxiliaryTree aux(int n, std::uint64_t seed) {
  Rng rng(seed);
  return build_auxiliary(random_tree(n, rng, seed % 2 == 0));
}

// y = x with the taxon of slot s moved to slot sigma[s].
AuxiliaryTree permuted(const AuxiliaryTree& x, const std::vector<int>& sigma) {
  AuxiliaryTree y = x;
  for (std::size_t s = 0; s < sigma.size(); ++s) {
    NodeId to = y.slots[sigma[s]], from = x.slots[s];
    y.tree.set_label(to, x.tree.label(from));
    y.tree.set_weight(y.tree.incident(to)[0], x.tree.weight(x.tree.incident(from)[0]));
  }
  return y;
}

int tree_distance(const Phylogeny& t, NodeId a, NodeId b) {
  std::vector<int> d(t.node_count(), -1);
  std::vector<NodeId> q{a};
  d[a] = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (EdgeId e : t.incident(q[i])) {
      NodeId w = t.edge(e).other(q[i]);
      if (d[w] < 0) d[w] = d[q[i]] + 1, q.push_back(w);
    }
  return d[b];
}

// Nontrivial splits after deleting one taxon.
std::set<std::vector<std::string>> splits_without(const Phylogeny& t, const std::string& gone) {
  auto taxa = t.taxa();
  taxa.erase(std::find(taxa.begin(), taxa.end(), gone));
  std::set<std::vector<std::string>> out;
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    auto side = testing::far_side(t, e);
    side.erase(std::remove(side.begin(), side.end(), gone), side.end());
    if (!side.empty() && std::binary_search(side.begin(), side.end(), taxa.front())) {
      std::vector<std::string> o;
      std::set_difference(taxa.begin(), taxa.end(), side.begin(), side.end(), std::back_inserter(o));
      side = o;
    }
    if (side.size() >= 2 && side.size() + 2 <= taxa.size()) out.insert(side);
  }
  return out;
}

std::vector<std::vector<int>> orbits(const std::vector<int>& pi) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(pi.size(), 0);
  for (std::size_t s = 0; s < pi.size(); ++s) {
    if (seen[s] || pi[s] == static_cast<int>(s)) continue;
    std::vector<int> c;
    for (int x = static_cast<int>(s); !seen[x]; x = pi[x]) seen[x] = 1, c.push_back(x);
    out.push_back(c);
  }
  return out;
}

void check_sort(const AuxiliaryTree& x, const AuxiliaryTree& y) {
  par::Runtime rt;
  auto res = sort_leaves(x, y, rt);
  auto rep = apply_sequence(x.tree, res.seq);
  CHECK(canonical_equal(rep.tree, y.tree));
  CHECK(rep.cost == res.cost);
  auto lp = leaf_permutation(x, y);
  CHECK(res.cycles == static_cast<int>(lp.cycles.size()));
}

}  // namespace

TEST_CASE("leaf permutation") {
  auto x = aux(16, 4);
  auto id = leaf_permutation(x, x);
  CHECK(id.cycles.empty());
  for (int s = 0; s < 16; ++s) CHECK(id.pi[s] == s);

  // Two taxa in different cherries.
  std::vector<int> sigma(16);
  for (int s = 0; s < 16; ++s) sigma[s] = s;
  std::swap(sigma[2], sigma[9]);
  auto two = leaf_permutation(x, permuted(x, sigma));
  REQUIRE(two.cycles.size() == 1);
  CHECK(two.cycles[0] == std::vector<int>{2, 9});

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    int n = 4 + static_cast<int>(seed * 5 % 60);
    auto a = aux(n, seed);
    std::vector<int> sg(n);
    for (int s = 0; s < n; ++s) sg[s] = s;
    Rng rng(seed + 100);
    rng.shuffle(sg.begin(), sg.end());
    auto b = permuted(a, sg);
    auto lp = leaf_permutation(a, b);
    // Moving x's taxa along pi gives y.
    AuxiliaryTree moved = a;
    for (int s = 0; s < n; ++s) {
      NodeId to = moved.slots[lp.pi[s]], from = a.slots[s];
      moved.tree.set_label(to, a.tree.label(from));
      moved.tree.set_weight(moved.tree.incident(to)[0], a.tree.weight(a.tree.incident(from)[0]));
    }
    CHECK(canonical_equal(moved.tree, b.tree));
    CHECK(lp.cycles == orbits(lp.pi));
    // Composition: pi differs from sigma only by swaps inside leaf groups.
    for (int s = 0; s < n; ++s) {
      NodeId p1 = a.tree.edge(a.tree.incident(a.slots[lp.pi[s]])[0]).other(a.slots[lp.pi[s]]);
      NodeId p2 = a.tree.edge(a.tree.incident(a.slots[sg[s]])[0]).other(a.slots[sg[s]]);
      CHECK(p1 == p2);
    }
  }
}

TEST_CASE("sibling swap is the identity") {
  auto x = aux(8, 2);
  std::vector<int> sigma{0, 1, 2, 3, 4, 5, 6, 7};
  // Find two slots under one parent.
  int a = -1, b = -1;
  for (int s = 1; s < 8 && a < 0; ++s)
    for (int r = s + 1; r < 8; ++r)
      if (x.tree.edge(x.tree.incident(x.slots[s])[0]).touches(
              x.tree.edge(x.tree.incident(x.slots[r])[0]).other(x.slots[r]))) {
        a = s, b = r;
        break;
      }
  REQUIRE(a > 0);
  std::swap(sigma[a], sigma[b]);
  auto y = permuted(x, sigma);
  CHECK(canonical_equal(x.tree, y.tree));
  par::Runtime rt;
  auto res = sort_leaves(x, y, rt);
  CHECK(res.seq.empty());
  CHECK(res.cycles == 0);
}

TEST_CASE("three cycle on eight leaves") {
  auto x = aux(8, 6);
  std::vector<int> sigma{0, 1, 2, 3, 4, 5, 6, 7};
  sigma[1] = 4, sigma[4] = 7, sigma[7] = 1;
  auto y = permuted(x, sigma);
  auto lp = leaf_permutation(x, y);
  CHECK(lp.cycles.size() == 1);
  check_sort(x, y);
}

TEST_CASE("transport") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    int n = 6 + static_cast<int>(seed * 7 % 60);
    auto a = aux(n, seed);
    Phylogeny t = a.tree;
    Rng rng(seed);
    NodeId leaf = a.slots[1 + rng.below(n - 1)];
    NodeId start = t.edge(t.incident(leaf)[0]).other(leaf);
    EdgeId target;
    do target = static_cast<EdgeId>(rng.below(t.edge_count()));
    while (t.edge(target).touches(start) || t.edge(target).touches(leaf));
    int d = std::min(tree_distance(t, start, t.edge(target).a), tree_distance(t, start, t.edge(target).b));
    Phylogeny before = t;
    auto seq = transport_sequence(t, leaf, target);
    CHECK(static_cast<int>(seq.size()) == d);
    CHECK(canonical_equal(apply_sequence(before, seq).tree, t));
    NodeId now = t.edge(t.incident(leaf)[0]).other(leaf);
    CHECK(t.edge(target).touches(now));
    for (const NniOp& op : seq.ops) CHECK(op.e1 == before.incident(leaf)[0]);
    CHECK(splits_without(before, before.label(leaf)) == splits_without(t, t.label(leaf)));
  }
  auto a = aux(8, 1);
  Phylogeny t = a.tree;
  NodeId leaf = a.slots[3];
  CHECK_THROWS_AS(transport_sequence(t, leaf, t.incident(leaf)[0]), InvalidNni);
}

TEST_CASE("sort leaves") {
  auto x = aux(12, 3);
  par::Runtime rt;
  CHECK(sort_leaves(x, x, rt).seq.empty());
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    int n = 4 + static_cast<int>(seed * 9 % 125);
    CAPTURE(n);
    auto a = aux(n, seed);
    std::vector<int> sg(n);
    for (int s = 0; s < n; ++s) sg[s] = s;
    Rng rng(seed * 31);
    // Anchor stays put in half the cases.
    if (seed % 2 == 0)
      rng.shuffle(sg.begin() + 1, sg.end());
    else
      rng.shuffle(sg.begin(), sg.end());
    check_sort(a, permuted(a, sg));
  }
}

TEST_CASE("position map") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto a = aux(5 + static_cast<int>(seed * 3 % 50), seed);
    par::Runtime rt;
    auto pm = position_map(a.tree, a.root, rt);
    auto r = orient(a.tree, a.root);
    std::map<int, int> next_index;
    for (NodeId v : r.bfs) {
      if (v == a.root) continue;
      EdgeId e = r.parent_edge[v];
      CHECK(pm[e].level == r.depth[v]);
      CHECK(pm[e].index == next_index[r.depth[v]]++);
    }
  }
}
