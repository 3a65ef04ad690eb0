#pragma once

#include <string>
#include <string_view>

#include "nni/phylogeny.hpp"

namespace nni {

// Parses one Newick statement with mandatory branch lengths. Node and edge ids
// follow the order of appearance in the text. Throws ParseError or TreeError.
Phylogeny parse_newick(std::string_view text);
Phylogeny read_newick_file(const std::string& path);

// Rooted at the root handle, children ordered by smallest contained taxon.
std::string serialize_newick(const Phylogeny& t);

}  // namespace nni
