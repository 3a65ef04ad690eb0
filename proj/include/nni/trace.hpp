#pragma once

#include <iosfwd>
#include <string>

#include "nni/nni.hpp"

namespace nni {

// FNV-1a 64 of the canonical Newick form, as 16 hex digits.
std::string tree_digest(const Phylogeny& t);

// JSON-lines: one header line, then one line per op. Replays `seq` on t1 to
// record costs and pivot nodes; throws ReplayError if the sequence is invalid.
void write_trace(std::ostream& out, const Phylogeny& t1, const Phylogeny& t2, const NniSequence& seq);

struct Trace {
  std::string t1_digest, t2_digest;
  NniSequence seq;
};
// Ignores per-op cost and pivot fields. Throws TreeError on malformed input.
Trace read_trace(std::istream& in);

}  // namespace nni
