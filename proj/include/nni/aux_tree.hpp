#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nni/phylogeny.hpp"

namespace nni {

// Balanced tree: root with the smallest-taxon leaf plus two left-complete binary
// subtrees. Internal edges get the sorted weights in BFS order.
struct AuxiliaryTree {
  Phylogeny tree;
  NodeId root = kNone;
  std::vector<EdgeId> internal_bfs;
  std::vector<NodeId> slots;  // leaf nodes left to right; slots[0] is the anchor leaf
};

AuxiliaryTree build_auxiliary(const Phylogeny& t);
// Same shape from explicit data: sorted internal weights and (taxon, leaf weight) pairs.
AuxiliaryTree build_auxiliary(std::vector<Weight> internal, std::vector<std::pair<std::string, Weight>> taxa);

bool non_descending(const AuxiliaryTree& a);
// Max minus min leaf depth below the root, anchor leaf excluded.
int depth_spread(const AuxiliaryTree& a);
// Throws InternalError if either structural property fails.
void check_auxiliary(const AuxiliaryTree& a);

}  // namespace nni
