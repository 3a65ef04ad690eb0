#pragma once

#include <string>
#include <vector>

#include "nni/caterpillar.hpp"
#include "nni/nni.hpp"
#include "nni/par_runtime.hpp"

namespace nni {

// A sorted run of consecutive reading positions.
struct Block {
  int stage = 0;
  int index = 0;
  int start = 0;
  int length = 0;
  bool ascending = true;
};

struct StageResult {
  NniSequence seq;
  std::vector<EdgeId> order;  // reading after the stage
  std::vector<Block> blocks;
  Weight cost;
  bool skipped = false;
};

// rank[e] is the target position of internal edge e (indexed by edge id).
// Both functions apply their ops to L and check the predicted reading.
StageResult make_alternating(Phylogeny& L, const std::vector<EdgeId>& order, const std::vector<int>& rank,
                             par::Runtime& rt, const std::string& phase = "edge_sort");
StageResult merge_stage(Phylogeny& L, const std::vector<EdgeId>& order, const std::vector<Block>& blocks, int k,
                        const std::vector<int>& rank, par::Runtime& rt, const std::string& phase = "edge_sort");

struct MergeSortResult {
  NniSequence seq;
  std::vector<EdgeId> order;  // final reading, equal to target
  Weight cost;
  int stages = 0;             // stages run, the alternating pass included
};

// Rearranges the linear tree L so that its reading equals `target`.
MergeSortResult merge_sort_edges(Phylogeny& L, const std::vector<EdgeId>& target, par::Runtime& rt,
                                 const std::string& phase = "edge_sort");

// Blocks are sorted in their orientation and cover positions 0..m-1 without gaps.
bool blocks_consistent(const std::vector<EdgeId>& order, const std::vector<Block>& blocks,
                       const std::vector<int>& rank);

}  // namespace nni
