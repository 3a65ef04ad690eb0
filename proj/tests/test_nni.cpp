#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"

using namespace nni;
using testing::nwk;
using testing::w;

namespace {

using Taxa = std::vector<std::string>;

// Edge whose split separates exactly `side` from the rest.
EdgeId edge_for(const Phylogeny& t, Taxa side) {
  std::sort(side.begin(), side.end());
  auto all = t.taxa();
  Taxa rest;
  std::set_difference(all.begin(), all.end(), side.begin(), side.end(), std::back_inserter(rest));
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    auto f = testing::far_side(t, e);
    if (f == side || f == rest) return e;
  }
  FAIL("no such edge");
  return kNone;
}

std::set<Taxa> splits(const Phylogeny& t) {
  std::set<Taxa> out;
  for (EdgeId e : t.internal_edges()) out.insert(testing::far_side(t, e));
  return out;
}

}  // namespace

TEST_CASE("swap of the central configuration") {
  // A,B | u - e - v | C,D with each subtree a cherry.
  auto t = nwk("(((a1:1,a2:1):1,(b1:1,b2:1):1):5,((c1:1,c2:1):1,(d1:1,d2:1):1):1);");
  EdgeId e = edge_for(t, {"a1", "a2", "b1", "b2"});
  EdgeId eb = edge_for(t, {"b1", "b2"});
  EdgeId ec = edge_for(t, {"c1", "c2"});
  auto r = apply_sequence(t, NniSequence{{{eb, e, ec}}});
  CHECK(r.cost == t.weight(e));
  auto want = nwk("(((a1:1,a2:1):1,(c1:1,c2:1):1):6,((b1:1,b2:1):1,(d1:1,d2:1):1):0.5);");
  CHECK(splits(r.tree) == splits(want));
  CHECK(testing::far_side(r.tree, e) == Taxa{"b1", "b2", "d1", "d2"});

  auto twice = apply_nni(r.tree, {eb, e, ec});
  CHECK(canonical_equal(twice, t));
}

TEST_CASE("quartet has a forced move") {
  auto ab = nwk("(a:1,b:1,(c:1,d:1):2.5);");
  auto ac = nwk("(a:1,c:1,(b:1,d:1):2.5);");
  EdgeId mid = ab.internal_edges()[0];
  EdgeId eb = edge_for(ab, {"b"}), ec = edge_for(ab, {"c"});
  NniSequence seq{{{eb, mid, ec}}};
  auto v = verify_transform(ab, seq, ac);
  CHECK(v.ok);
  CHECK(v.cost == w("2.5"));
  CHECK(verify_transform(ab, {}, ab).ok);
  CHECK(verify_transform(ab, {}, ab).cost == Weight());
  CHECK_FALSE(verify_transform(ab, {}, ac).ok);
}

TEST_CASE("invalid triplets") {
  auto t = nwk("(a:1,b:1,(c:1,(d:1,e:1):3):2);");
  EdgeId ea = edge_for(t, {"a"}), eb = edge_for(t, {"b"}), ed = edge_for(t, {"d"});
  EdgeId ede = edge_for(t, {"d", "e"});
  CHECK_THROWS_AS(apply_nni(t, {ea, eb, ed}), InvalidNni);
  CHECK_THROWS_AS(apply_nni(t, {ea, ea, ed}), InvalidNni);
  CHECK_THROWS_AS(apply_nni(t, {ea, 99, ed}), InvalidNni);
  // Path through a leaf edge is not a move.
  CHECK_THROWS_AS(apply_nni(t, {eb, ea, ed}), InvalidNni);
  try {
    EdgeId mid = edge_for(t, {"a", "b"});
    apply_sequence(t, NniSequence{{{ea, mid, ede}, {ea, eb, ed}}});
    FAIL("no error");
  } catch (const ReplayError& e) {
    CHECK(e.index == 1);
  }
}

TEST_CASE("sequence inversion") {
  CHECK(invert_sequence({}).empty());
  NniOp a{1, 2, 3}, b{4, 5, 6}, c{7, 8, 9};
  CHECK(invert_sequence(NniSequence{{a}}).ops == std::vector<NniOp>{a});
  CHECK(invert_sequence(NniSequence{{a, b, c}}).ops == std::vector<NniOp>{c, b, a});

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto g = generate_pair({6 + static_cast<int>(seed % 20), seed, 5, seed % 2 == 1});
    CHECK(verify_transform(g.t1, g.moves, g.t2).ok);
    CHECK(verify_transform(g.t1, g.moves, g.t2).cost == g.cost);
    auto back = apply_sequence(g.t2, invert_sequence(g.moves));
    CHECK(canonical_equal(back.tree, g.t1));
    CHECK(back.cost == g.cost);
  }
}

TEST_CASE("edge id remapping") {
  NniSequence s{{{0, 1, 2}}};
  CHECK(map_edges(s, {5, 6, 7}).ops[0] == NniOp{5, 6, 7});
}
