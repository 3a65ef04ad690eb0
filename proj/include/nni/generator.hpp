#pragma once

#include <cstdint>
#include <random>

#include "nni/nni.hpp"

namespace nni {

// Portable draws on top of mt19937_64 (the standard distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t below(std::uint64_t n);
  template <class It>
  void shuffle(It first, It last) {
    for (auto n = last - first; n > 1; --n) std::swap(first[n - 1], first[below(n)]);
  }

 private:
  std::mt19937_64 eng_;
};

struct GenOptions {
  int taxa = 8;
  std::uint64_t seed = 1;
  int moves = 1;
  bool dup_weights = false;
};

struct GeneratedPair {
  Phylogeny t1, t2;
  NniSequence moves;
  Weight cost;
};

// Random tree by stepwise addition; internal weights 1..n-3 in random order, or
// drawn with repetition from a smaller range when dup_weights is set.
Phylogeny random_tree(int taxa, Rng& rng, bool dup_weights);

// t2 is t1 after `moves` random NNI moves.
GeneratedPair generate_pair(const GenOptions& opt);

// t2 has an independent random topology carrying a shuffle of t1's internal
// weights and the same leaf weights.
GeneratedPair generate_independent(int taxa, std::uint64_t seed, bool dup_weights);

}  // namespace nni
