#include "nni/nni.hpp"

namespace nni {

std::pair<NodeId, NodeId> nni_pivots(const Phylogeny& t, const NniOp& op) {
  int m = t.edge_count();
  for (EdgeId e : {op.e1, op.e2, op.e3})
    if (e < 0 || e >= m) throw InvalidNni("unknown edge id " + std::to_string(e));
  if (op.e1 == op.e2 || op.e2 == op.e3 || op.e1 == op.e3) throw InvalidNni("repeated edge in triplet");
  const Edge& mid = t.edge(op.e2);
  const Edge& x = t.edge(op.e1);
  const Edge& y = t.edge(op.e3);
  for (auto [u, v] : {std::pair{mid.a, mid.b}, std::pair{mid.b, mid.a}})
    if (x.touches(u) && !x.touches(v) && y.touches(v) && !y.touches(u)) {
      if (t.degree(u) != 3 || t.degree(v) != 3) throw InvalidNni("operating edge is a leaf edge");
      return {u, v};
    }
  throw InvalidNni("edges " + std::to_string(op.e1) + "," + std::to_string(op.e2) + "," +
                   std::to_string(op.e3) + " are not a path");
}

Weight apply_nni_inplace(Phylogeny& t, const NniOp& op) {
  auto [u, v] = nni_pivots(t, op);
  t.reattach(op.e1, u, v);
  t.reattach(op.e3, v, u);
  return t.weight(op.e2);
}

Phylogeny apply_nni(const Phylogeny& t, const NniOp& op) {
  Phylogeny out = t;
  apply_nni_inplace(out, op);
  return out;
}

Weight apply_sequence_inplace(Phylogeny& t, const NniSequence& seq) {
  Weight cost;
  for (std::size_t i = 0; i < seq.ops.size(); ++i) {
    try {
      cost += apply_nni_inplace(t, seq.ops[i]);
    } catch (const InvalidNni& e) {
      throw ReplayError(e.what(), i);
    }
  }
  return cost;
}

Replay apply_sequence(const Phylogeny& t, const NniSequence& seq) {
  Replay r{t, {}};
  r.cost = apply_sequence_inplace(r.tree, seq);
  return r;
}

NniSequence invert_sequence(const NniSequence& seq) {
  NniSequence out;
  out.ops.assign(seq.ops.rbegin(), seq.ops.rend());
  return out;
}

NniSequence map_edges(const NniSequence& seq, const std::vector<EdgeId>& map) {
  NniSequence out;
  out.ops.reserve(seq.size());
  for (const NniOp& op : seq.ops) out.push_back({map.at(op.e1), map.at(op.e2), map.at(op.e3)});
  return out;
}

Verification verify_transform(const Phylogeny& t1, const NniSequence& seq, const Phylogeny& t2) {
  if (t1.taxa() != t2.taxa()) throw TaxaMismatch("verify: taxa sets differ");
  Replay r = apply_sequence(t1, seq);
  return {canonical_equal(r.tree, t2), r.cost};
}

}  // namespace nni
