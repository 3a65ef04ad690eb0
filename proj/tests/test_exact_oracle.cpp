#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "nni/exact_oracle.hpp"
#include "nni/gep.hpp"

using namespace nni;
using testing::nwk;

namespace {

// State key built from splits and weights, independent of Newick output.
using Key = std::set<std::pair<std::vector<std::string>, Weight>>;
Key key_of(const Phylogeny& t) {
  Key k;
  for (EdgeId e = 0; e < t.edge_count(); ++e) k.insert({testing::far_side(t, e), t.weight(e)});
  return k;
}

std::set<std::vector<std::string>> topology(const Phylogeny& t) {
  std::set<std::vector<std::string>> s;
  for (EdgeId e : t.internal_edges()) s.insert(testing::far_side(t, e));
  return s;
}

// Every state reachable from t, with its move list.
struct Space {
  std::map<Key, int> id;
  std::vector<Phylogeny> trees;
  std::vector<std::vector<std::pair<int, Weight>>> out;
};

Space explore(const Phylogeny& t) {
  Space s;
  s.id[key_of(t)] = 0;
  s.trees.push_back(t);
  for (std::size_t i = 0; i < s.trees.size(); ++i) {
    std::vector<std::pair<int, Weight>> adj;
    for (auto& m : neighbors(s.trees[i])) {
      auto [it, fresh] = s.id.emplace(key_of(m.tree), static_cast<int>(s.trees.size()));
      if (fresh) s.trees.push_back(m.tree);
      adj.push_back({it->second, m.cost});
    }
    s.out.push_back(adj);
  }
  return s;
}

// Bellman-Ford relaxation until nothing changes.
std::vector<std::int64_t> all_distances(const Space& s) {
  const std::int64_t inf = INT64_MAX / 4;
  std::vector<std::int64_t> d(s.trees.size(), inf);
  d[0] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t u = 0; u < s.trees.size(); ++u)
      if (d[u] < inf)
        for (auto [v, w] : s.out[u])
          if (d[u] + w.units() < d[v]) d[v] = d[u] + w.units(), changed = true;
  }
  return d;
}

Phylogeny random_walk(const Phylogeny& t, Rng& rng, int steps) {
  Phylogeny cur = t;
  for (int i = 0; i < steps; ++i) {
    auto nb = neighbors(cur);
    cur = nb[rng.below(nb.size())].tree;
  }
  return cur;
}

}  // namespace

TEST_CASE("neighbors") {
  auto q = nwk("(a:1,b:1,(c:1,d:1):2);");
  auto nb = neighbors(q);
  REQUIRE(nb.size() == 2);
  std::set<std::set<std::vector<std::string>>> tops;
  for (auto& m : nb) {
    tops.insert(topology(m.tree));
    CHECK(m.cost == Weight::from_int(2));
    CHECK(canonical_equal(apply_nni(m.tree, m.op), q));
  }
  tops.insert(topology(q));
  CHECK(tops.size() == 3);

  Rng rng(1);
  auto t5 = random_tree(5, rng, false);
  CHECK(neighbors(t5).size() == 4);
  auto s = explore(t5);
  std::set<std::set<std::vector<std::string>>> all;
  for (auto& t : s.trees) all.insert(topology(t));
  CHECK(all.size() == 15);
  for (auto& t : s.trees) CHECK(neighbors(t).size() == 4);
}

TEST_CASE("trivial distances") {
  auto q = nwk("(a:1,b:1,(c:1,d:1):2.5);");
  auto r = exact_dnni(q, q);
  CHECK(r.distance == Weight());
  CHECK(r.witness.empty());
  auto p = exact_dnni(q, nwk("(a:1,c:1,(b:1,d:1):2.5);"));
  CHECK(p.distance == testing::w("2.5"));
  CHECK(p.witness.size() == 1);
  CHECK_THROWS_AS(exact_dnni(q, nwk("(a:1,c:1,(b:1,d:1):3);")), InfiniteDistance);
  auto far = generate_independent(9, 2, false);
  CHECK_THROWS_AS(exact_dnni(far.t1, far.t2, 10), StateLimitExceeded);
}

TEST_CASE("distances match exhaustive relaxation") {
  for (int n : {5, 6}) {
    for (std::uint64_t seed = 1; seed <= (n == 5 ? 6u : 2u); ++seed) {
      Rng rng(seed * 17 + n);
      auto t = random_tree(n, rng, seed % 2 == 0);
      auto s = explore(t);
      auto d = all_distances(s);
      for (int k = 0; k < 8; ++k) {
        int target = static_cast<int>(rng.below(s.trees.size()));
        auto r = exact_dnni(t, s.trees[target]);
        CHECK(r.distance.units() == d[target]);
        auto v = verify_transform(t, r.witness, s.trees[target]);
        CHECK(v.ok);
        CHECK(v.cost == r.distance);
      }
    }
  }
}

TEST_CASE("metric laws") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    Rng rng(seed);
    int n = 4 + static_cast<int>(seed % 3);
    auto a = random_tree(n, rng, seed % 2 == 0);
    auto b = random_walk(a, rng, 4);
    auto c = random_walk(a, rng, 4);
    Weight ab = exact_dnni(a, b).distance, ba = exact_dnni(b, a).distance;
    CHECK(ab == ba);
    Weight bc = exact_dnni(b, c).distance, ac = exact_dnni(a, c).distance;
    CHECK(ac <= ab + bc);
  }
}

TEST_CASE("lower bound without good pairs") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    int n = 4 + static_cast<int>(seed % 3);
    auto g = generate_independent(n, seed, seed % 2 == 0);
    par::Runtime rt;
    if (!find_good_edge_pairs(g.t1, g.t2, rt).pairs.empty()) continue;
    ++checked;
    CHECK(exact_dnni(g.t1, g.t2).distance >= weight_multiset(g.t1).total);
  }
  CHECK(checked > 10);
}
