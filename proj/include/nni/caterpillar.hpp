#pragma once

#include <vector>

#include "nni/phylogeny.hpp"

namespace nni {

// Reading of a linear tree: spine[i] and spine[i+1] are joined by order[i].
struct Caterpillar {
  std::vector<NodeId> spine;
  std::vector<EdgeId> order;
};

// Starts from the spine end with the smaller node id. Throws TreeError if the
// tree is not linear.
Caterpillar read_caterpillar(const Phylogeny& t);

// Spine matching a claimed reading; throws InternalError unless `order` is the
// spine of a linear tree in that direction.
std::vector<NodeId> spine_for(const Phylogeny& t, const std::vector<EdgeId>& order);

// Leaf edges at v, sorted by edge id.
std::vector<EdgeId> leaf_edges_at(const Phylogeny& t, NodeId v);

}  // namespace nni
