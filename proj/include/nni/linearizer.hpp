#pragma once

#include <string>
#include <vector>

#include "nni/nni.hpp"
#include "nni/par_runtime.hpp"

namespace nni {

struct PathInfo {
  Weight dist;
  std::vector<EdgeId> path;  // from the node upward
  NodeId head = kNone;       // last node before `next`
  int length = 0;
  NodeId next = kNone;       // nearest junction, endnode or root above; kNone at the root
};

struct EndnodePaths {
  std::vector<PathInfo> info;  // indexed by node id; leaves left empty
  int rounds = 0;
};

// Pointer jumping toward r.root over internal nodes.
EndnodePaths endnode_paths(const Phylogeny& t, const RootedView& r, const std::vector<NodeClass>& cls,
                           par::Runtime& rt, const std::string& phase = "endnode_paths");

struct LinearizeResult {
  NniSequence seq;
  Phylogeny tree;
  Weight cost;
  int iterations = 0;
  int max_path_rounds = 0;
};

// Repeatedly inserts endnode paths at junctions until no junction remains.
// The root handle of the input stays the root throughout.
LinearizeResult linearize(const Phylogeny& t, par::Runtime& rt, const std::string& phase = "linearize");

}  // namespace nni
