#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "nni/errors.hpp"
#include "nni/weight.hpp"

namespace nni {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
inline constexpr std::int32_t kNone = -1;

struct Edge {
  NodeId a = kNone;
  NodeId b = kNone;
  Weight weight;

  NodeId other(NodeId x) const { return x == a ? b : a; }
  bool touches(NodeId x) const { return x == a || x == b; }
};

// Unrooted leaf-labelled tree with dense node and edge ids. Leaves carry a taxon
// label; internal nodes have degree 3 once the tree is valid.
class Phylogeny {
 public:
  NodeId add_node(std::string label = {});
  EdgeId add_edge(NodeId a, NodeId b, Weight w);

  int node_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int leaf_count() const;

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  Weight weight(EdgeId e) const { return edges_.at(e).weight; }
  const std::vector<EdgeId>& incident(NodeId v) const { return adj_.at(v); }
  int degree(NodeId v) const { return static_cast<int>(adj_.at(v).size()); }
  bool is_leaf(NodeId v) const { return adj_.at(v).size() == 1; }
  bool is_leaf_edge(EdgeId e) const { return is_leaf(edges_.at(e).a) || is_leaf(edges_.at(e).b); }
  // Leaf endpoint of a leaf edge; kNone for internal edges.
  NodeId leaf_end(EdgeId e) const;
  // Edge joining u and v, kNone if not adjacent.
  EdgeId edge_between(NodeId u, NodeId v) const;

  const std::string& label(NodeId v) const { return labels_.at(v); }
  void set_label(NodeId v, std::string label) { labels_.at(v) = std::move(label); }

  std::vector<NodeId> leaves() const;
  std::vector<EdgeId> internal_edges() const;
  std::vector<std::string> taxa() const;  // sorted
  std::unordered_map<std::string, NodeId> leaf_index() const;

  // Internal node adjacent to the leaf with the smallest taxon.
  NodeId root_handle() const;
  NodeId smallest_taxon_leaf() const;

  // Mutation used by the NNI engine: move the `from` end of e to `to`.
  void reattach(EdgeId e, NodeId from, NodeId to);
  void set_weight(EdgeId e, Weight w) { edges_.at(e).weight = w; }

 private:
  std::vector<std::vector<EdgeId>> adj_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
};

struct Violation {
  enum class Kind { Size, Degree, Bijection, Weight, Connectivity };
  Kind kind;
  std::string message;
};
const char* to_string(Violation::Kind k);

std::vector<Violation> validate(const Phylogeny& t);
// Throws TreeError listing the violations.
void require_valid(const Phylogeny& t);

enum class NodeClass { Leaf, Endnode, Pathnode, Junction };
const char* to_string(NodeClass c);

// Indexed by node id; leaves map to NodeClass::Leaf.
std::vector<NodeClass> classify_nodes(const Phylogeny& t);
bool is_linear(const Phylogeny& t);

struct WeightMultiset {
  std::vector<Weight> values;  // sorted
  Weight total;
};
WeightMultiset weight_multiset(const Phylogeny& t);

struct Finiteness {
  enum class Status { Finite, LeafEdge, Multiset };
  Status status = Status::Finite;
  std::string detail;
  bool finite() const { return status == Status::Finite; }
};
// Throws TaxaMismatch when the taxa sets differ.
Finiteness finiteness_check(const Phylogeny& t1, const Phylogeny& t2);

// Sides of an internal edge. `near` holds the smallest taxon; the edge's own
// weight is on neither side.
struct EdgeSplit {
  EdgeId edge = kNone;
  std::vector<std::string> near_taxa, far_taxa;
  std::vector<Weight> near_weights, far_weights;
};
std::vector<EdgeSplit> edge_splits(const Phylogeny& t);

// Taxon bitset of the side of `e` away from the smallest taxon, with taxa indexed
// by their sorted position. Computed for every edge, leaf edges included.
using SplitBits = std::vector<std::uint64_t>;
std::vector<SplitBits> split_bits(const Phylogeny& t);

bool canonical_equal(const Phylogeny& a, const Phylogeny& b);

// Maps each edge of `from` to the edge of `to` with the same split. Requires
// canonical_equal(from, to).
std::vector<EdgeId> match_edges(const Phylogeny& from, const Phylogeny& to);

struct RootedView {
  NodeId root = kNone;
  std::vector<NodeId> parent;
  std::vector<EdgeId> parent_edge;
  std::vector<int> depth;
  std::vector<NodeId> bfs;  // root first
};
RootedView orient(const Phylogeny& t, NodeId root);

}  // namespace nni
