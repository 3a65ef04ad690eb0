#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"

using namespace nni;
using testing::nwk;
using testing::w;

TEST_CASE("parse minimal trifurcation") {
  auto t = nwk("(a:1,b:1,(c:1,d:1):2);");
  CHECK(t.leaf_count() == 4);
  REQUIRE(t.internal_edges().size() == 1);
  CHECK(t.weight(t.internal_edges()[0]) == w("2"));
  CHECK(serialize_newick(t) == "(a:1,b:1,(c:1,d:1):2);");
}

TEST_CASE("degree two root is suppressed") {
  auto t = nwk("((a:1,b:1):1,(c:1,d:1):1);");
  REQUIRE(t.internal_edges().size() == 1);
  CHECK(t.weight(t.internal_edges()[0]) == w("2"));
  CHECK(canonical_equal(t, nwk("(a:1,b:1,(c:1,d:1):2);")));
}

TEST_CASE("formatting tolerance") {
  auto ref = nwk("(a:1,b:1.5,(c:1,d:1):2);");
  CHECK(canonical_equal(ref, nwk("  ( a : 1 ,\n b:1.5 , ( c:1,d:1 ) : 2 ) ;\n")));
  CHECK(canonical_equal(ref, nwk("('a':1,'b':1.5,(c:1,'d':1):2);")));
  auto q = nwk("('x y':1,'it''s':1,(c:1,d:1):2);");
  auto taxa = q.taxa();
  CHECK(std::find(taxa.begin(), taxa.end(), "it's") != taxa.end());
  CHECK(canonical_equal(q, nwk(serialize_newick(q))));
}

TEST_CASE("parse errors carry offsets") {
  struct Case {
    const char* text;
    std::size_t min_offset;
  };
  for (Case c : {Case{"(a:1,b:1;", 8}, Case{"(a:1,b:1,(c:1,d:1));", 18}, Case{"(a:1,b:1,(c:1,d:1):x);", 19},
                 Case{"(a:1,b,(c:1,d:1):2);", 6}, Case{"(a:1,b:1,(c:1,d:1):2)", 21}, Case{"(a:1,b:1,(c:1,d:1):2);x", 22}}) {
    CAPTURE(c.text);
    try {
      nwk(c.text);
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.offset >= c.min_offset);
      CHECK(e.offset <= std::string(c.text).size());
    }
  }
  CHECK_THROWS_AS(nwk("(a:1,a:1,(c:1,d:1):2);"), TreeError);
  CHECK_THROWS_AS(nwk("(a:1,b:1,(c:1,d:1,e:1):2);"), TreeError);
}

TEST_CASE("serialization is canonical") {
  auto a = nwk("(a:1,b:1,(c:1,d:1):2);");
  auto b = nwk("((d:1,c:1):2,b:1,a:1);");
  CHECK(serialize_newick(a) == serialize_newick(b));
  CHECK(serialize_newick(a) == serialize_newick(nwk(serialize_newick(a))));
}

TEST_CASE("round trip on random trees") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    auto t = random_tree(4 + static_cast<int>(seed % 40), rng, seed % 3 == 0);
    std::string s = serialize_newick(t);
    auto back = nwk(s);
    CHECK(canonical_equal(t, back));
    CHECK(serialize_newick(back) == s);
  }
}
