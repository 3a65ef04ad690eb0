#pragma once

#include <cstddef>
#include <vector>

#include "nni/nni.hpp"

namespace nni {

struct Move {
  NniOp op;
  Phylogeny tree;
  Weight cost;
};

// Two swaps per internal edge, in edge id order.
std::vector<Move> neighbors(const Phylogeny& t);

struct ExactResult {
  Weight distance;
  NniSequence witness;
  std::size_t states = 0;
};

// Uniform-cost search keyed by canonical Newick. Throws StateLimitExceeded or
// InfiniteDistance.
ExactResult exact_dnni(const Phylogeny& t1, const Phylogeny& t2, std::size_t state_limit = 5'000'000);

}  // namespace nni
