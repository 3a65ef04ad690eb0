#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "nni/generator.hpp"
#include "nni/newick.hpp"
#include "nni/nni.hpp"

namespace testing {

inline nni::Phylogeny nwk(const std::string& s) { return nni::parse_newick(s); }

inline nni::Weight w(const char* s) { return nni::Weight::parse(s); }

// Caterpillar with internal weights 1..n-3 from left to right; taxa t01..tn.
inline nni::Phylogeny caterpillar(int n) {
  auto name = [&](int i) {
    std::string s = std::to_string(i);
    return "t" + std::string(std::to_string(n).size() - s.size(), '0') + s;
  };
  std::string s = "(" + name(1) + ":1," + name(2) + ":1)";
  for (int i = 3; i < n; ++i) s = "(" + s + ":" + std::to_string(i - 2) + "," + name(i) + ":1)";
  s = "(" + s.substr(1, s.size() - 2) + "," + name(n) + ":1);";
  return nni::parse_newick(s);
}

// Complete balanced rooted shape over 2^k leaves, internal weights 1.
inline nni::Phylogeny balanced(int k) {
  int counter = 0;
  auto build = [&](auto&& self, int depth) -> std::string {
    if (depth == 0) {
      std::string s = std::to_string(++counter);
      return "x" + std::string(3 - s.size(), '0') + s;
    }
    std::string a = self(self, depth - 1), b = self(self, depth - 1);
    return "(" + a + ":1," + b + ":1)";
  };
  std::string s = build(build, k);
  return nni::parse_newick(s + ";");
}

// Taxa on the side of e away from the smallest taxon, by plain DFS.
inline std::vector<std::string> far_side(const nni::Phylogeny& t, nni::EdgeId e) {
  auto taxa = t.taxa();
  const auto& ed = t.edge(e);
  auto collect = [&](nni::NodeId start) {
    std::vector<std::string> out;
    std::vector<char> seen(t.node_count(), 0);
    std::vector<nni::NodeId> stack{start};
    seen[start] = 1;
    seen[ed.other(start)] = 1;
    while (!stack.empty()) {
      nni::NodeId x = stack.back();
      stack.pop_back();
      if (t.is_leaf(x)) out.push_back(t.label(x));
      for (nni::EdgeId f : t.incident(x)) {
        nni::NodeId y = t.edge(f).other(x);
        if (!seen[y]) seen[y] = 1, stack.push_back(y);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto a = collect(ed.a);
  if (std::binary_search(a.begin(), a.end(), taxa.front())) {
    std::vector<std::string> o;
    std::set_difference(taxa.begin(), taxa.end(), a.begin(), a.end(), std::back_inserter(o));
    return o;
  }
  return a;
}

}  // namespace testing
