#pragma once

#include <vector>

#include "nni/phylogeny.hpp"

namespace nni {

// e2 is the operating edge; e1 and e3 hang off its two ends. Applying the op
// exchanges the subtrees behind e1 and e3.
struct NniOp {
  EdgeId e1 = kNone, e2 = kNone, e3 = kNone;
  friend bool operator==(const NniOp&, const NniOp&) = default;
};

struct NniSequence {
  std::vector<NniOp> ops;

  std::size_t size() const { return ops.size(); }
  bool empty() const { return ops.empty(); }
  void push_back(const NniOp& op) { ops.push_back(op); }
  void append(const NniSequence& other) { ops.insert(ops.end(), other.ops.begin(), other.ops.end()); }
};

// Endpoints (u, v) of e2 with e1 at u and e3 at v. Throws InvalidNni.
std::pair<NodeId, NodeId> nni_pivots(const Phylogeny& t, const NniOp& op);

// In place; returns the cost (weight of e2).
Weight apply_nni_inplace(Phylogeny& t, const NniOp& op);
Phylogeny apply_nni(const Phylogeny& t, const NniOp& op);

struct Replay {
  Phylogeny tree;
  Weight cost;
};
// Throws ReplayError carrying the index of the first invalid op.
Replay apply_sequence(const Phylogeny& t, const NniSequence& seq);
Weight apply_sequence_inplace(Phylogeny& t, const NniSequence& seq);

NniSequence invert_sequence(const NniSequence& seq);

// Rewrites every edge id through `map` (map[e] is the new id).
NniSequence map_edges(const NniSequence& seq, const std::vector<EdgeId>& map);

struct Verification {
  bool ok = false;
  Weight cost;
};
Verification verify_transform(const Phylogeny& t1, const NniSequence& seq, const Phylogeny& t2);

}  // namespace nni
