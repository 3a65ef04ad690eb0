#include "nni/exact_oracle.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

#include "nni/newick.hpp"

namespace nni {

std::vector<Move> neighbors(const Phylogeny& t) {
  std::vector<Move> out;
  for (EdgeId e : t.internal_edges()) {
    const Edge& ed = t.edge(e);
    std::vector<EdgeId> left, right;
    for (EdgeId f : t.incident(ed.a))
      if (f != e) left.push_back(f);
    for (EdgeId f : t.incident(ed.b))
      if (f != e) right.push_back(f);
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    for (EdgeId r : right) {
      NniOp op{left[0], e, r};
      out.push_back({op, apply_nni(t, op), ed.weight});
    }
  }
  return out;
}

ExactResult exact_dnni(const Phylogeny& t1, const Phylogeny& t2, std::size_t state_limit) {
  Finiteness f = finiteness_check(t1, t2);
  if (!f.finite()) throw InfiniteDistance("infinite NNI distance: " + f.detail);
  struct Entry {
    Weight dist;
    bool settled = false;
    std::string parent;
    NniOp op;
    Phylogeny tree;
  };
  std::unordered_map<std::string, Entry> seen;
  using Item = std::pair<Weight, std::string>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  const std::string start = serialize_newick(t1);
  const std::string goal = serialize_newick(t2);
  seen.emplace(start, Entry{Weight{}, false, {}, {}, t1});
  open.push({Weight{}, start});
  ExactResult res;
  while (!open.empty()) {
    auto [d, key] = open.top();
    open.pop();
    Entry& cur = seen.at(key);
    if (cur.settled || cur.dist < d) continue;
    cur.settled = true;
    if (key == goal) {
      res.distance = d;
      for (std::string k = key; k != start;) {
        const Entry& en = seen.at(k);
        res.witness.push_back(en.op);
        k = en.parent;
      }
      std::reverse(res.witness.ops.begin(), res.witness.ops.end());
      res.states = seen.size();
      return res;
    }
    Phylogeny here = cur.tree;
    for (Move& m : neighbors(here)) {
      Weight nd = d + m.cost;
      std::string k = serialize_newick(m.tree);
      auto it = seen.find(k);
      if (it == seen.end()) {
        if (seen.size() >= state_limit) throw StateLimitExceeded("exact search exceeded the state limit");
        seen.emplace(k, Entry{nd, false, key, m.op, std::move(m.tree)});
        open.push({nd, std::move(k)});
      } else if (!it->second.settled && nd < it->second.dist) {
        it->second.dist = nd;
        it->second.parent = key;
        it->second.op = m.op;
        it->second.tree = std::move(m.tree);
        open.push({nd, std::move(k)});
      }
    }
  }
  throw InternalError("exact search exhausted without reaching the target");
}

}  // namespace nni
