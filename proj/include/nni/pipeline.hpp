#pragma once

#include <map>
#include <string>

#include "nni/gep.hpp"
#include "nni/nni.hpp"
#include "nni/par_runtime.hpp"

namespace nni {

struct ApproxResult {
  Weight cost;
  NniSequence seq;  // global edge ids of t1
  std::map<std::string, Weight> phase_costs;
  par::ParMetrics metrics;
  std::size_t good_pairs = 0;
  std::size_t components = 0;
  Weight W;
  double ratio = 0;  // cost / W, 0 when W is 0

  int linearize_iterations = 0;  // max over calls
  int endnode_path_rounds = 0;   // max over calls
  int sort_stages = 0;           // max over calls
  int pairing_rounds = 0;
  int distinct_labels = 0;
};

// Throws InfiniteDistance, TaxaMismatch, or InternalError if any replay check fails.
ApproxResult approx_nni(const Phylogeny& t1, const Phylogeny& t2, int threads = 1);

// Same pipeline without the good-pair decomposition.
ApproxResult approx_component(const Phylogeny& t1, const Phylogeny& t2, par::Runtime& rt);

}  // namespace nni
