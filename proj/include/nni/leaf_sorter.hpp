#pragma once

#include <string>
#include <vector>

#include "nni/aux_tree.hpp"
#include "nni/nni.hpp"
#include "nni/par_runtime.hpp"

namespace nni {

struct Position {
  int level = 0;  // depth of the edge's lower endpoint
  int index = 0;  // rank within its level in BFS order
  friend bool operator==(const Position&, const Position&) = default;
};

// Per edge id, relative to `root`. Levels come from pointer jumping.
std::vector<Position> position_map(const Phylogeny& t, NodeId root, par::Runtime& rt,
                                   const std::string& phase = "positions");

struct LeafPermutation {
  std::vector<int> pi;                   // slot of x -> slot of y holding the same taxon
  std::vector<std::vector<int>> cycles;  // each starts at its smallest slot; fixed points omitted
};

// Throws TreeError if x and y differ anywhere but in leaf labels.
LeafPermutation leaf_permutation(const AuxiliaryTree& x, const AuxiliaryTree& y);

// Moves `leaf` step by step until it hangs at an endpoint of `target`; applies
// the ops to t. Throws InvalidNni if the leaf already sits there.
NniSequence transport_sequence(Phylogeny& t, NodeId leaf, EdgeId target);

struct LeafSortResult {
  NniSequence seq;
  Weight cost;
  int cycles = 0;
  int max_depth = 0;  // deepest intermediate tree (checked per cycle)
};

// Sequence turning x into a tree canonically equal to y, cycle by cycle.
LeafSortResult sort_leaves(const AuxiliaryTree& x, const AuxiliaryTree& y, par::Runtime& rt,
                           const std::string& phase = "leaf_sort");

}  // namespace nni
