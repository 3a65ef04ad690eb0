#pragma once

#include <string>
#include <vector>

#include "nni/par_runtime.hpp"
#include "nni/phylogeny.hpp"

namespace nni {

// Shared leaf-label numbering for two trees: taxa 1..n by sorted name, then one
// label per distinct internal weight.
struct LabelSpace {
  std::vector<std::string> taxa;
  std::vector<Weight> weights;
  int taxon_label(const std::string& name) const;
  int weight_label(Weight w) const;
  int size() const { return static_cast<int>(taxa.size() + weights.size()); }
};
LabelSpace label_space(const Phylogeny& t1, const Phylogeny& t2);

// Rooted tree in which each internal edge (u,v) became u-s-v with a weight leaf
// hanging from s.
struct AugmentedTree {
  enum class Kind { Original, Subdivision, WeightLeaf };

  int root = 0;
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<Kind> kind;
  std::vector<int> label;          // leaves only; 0 elsewhere
  std::vector<EdgeId> source;      // subdivision node -> internal edge; original node -> kNone
  std::vector<NodeId> original;    // original node -> tree node id
  std::vector<Weight> weight;      // subdivision nodes
  std::vector<int> pre, size, depth;

  int node_count() const { return static_cast<int>(parent.size()); }
  bool is_leaf(int v) const { return children[v].empty(); }
  bool is_ancestor(int a, int b) const { return pre[a] <= pre[b] && pre[b] < pre[a] + size[a]; }
  int lca(int a, int b) const;

  // Euler tour and sparse table of tour positions by depth.
  std::vector<int> first, tour;
  std::vector<std::vector<int>> sparse;
};

AugmentedTree augment_and_root(const Phylogeny& t, const LabelSpace& labels, par::Runtime& rt,
                               const std::string& phase = "gep");
AugmentedTree augment_and_root(const Phylogeny& t);

// Restriction of R to a leaf set plus the LCAs of preorder-consecutive leaves.
struct ContractedSubtree {
  std::vector<int> nodes;   // R node ids in preorder
  std::vector<int> parent;  // index into nodes, -1 at the top
  std::vector<int> leaves;  // R node ids of the selected leaves, in preorder
};

ContractedSubtree induced_subtree(const AugmentedTree& R, std::vector<int> leaves);
ContractedSubtree induced_subtree_by_labels(const AugmentedTree& R, const std::vector<int>& labels);

// Labels indexed like ContractedSubtree::nodes.
struct LabelPair {
  std::vector<int> a, b;
};

// Label = number of selected leaves below.
LabelPair single_label_partition(const AugmentedTree& R, const ContractedSubtree& ra, const AugmentedTree& Rp,
                                 const ContractedSubtree& rpa);

// Relabels R_{A+B} and R'_{A+B} from the labelings of the A and B restrictions.
LabelPair relabel_merge(const AugmentedTree& R, const AugmentedTree& Rp, const ContractedSubtree& rab,
                        const ContractedSubtree& rpab, const ContractedSubtree& ra, const ContractedSubtree& rpa,
                        const LabelPair& rho_a, const ContractedSubtree& rb, const ContractedSubtree& rpb,
                        const LabelPair& rho_b, par::Runtime& rt, const std::string& phase = "gep");

struct PartitionLabeling {
  std::vector<int> rho, rhop;  // by augmented node id
  int pairing_rounds = 0;
  int distinct_labels = 0;
};

PartitionLabeling partition_labeling(const AugmentedTree& R, const AugmentedTree& Rp, par::Runtime& rt,
                                     const std::string& phase = "gep");

struct GoodPair {
  EdgeId e1 = kNone, e2 = kNone;
  Weight weight;
  friend auto operator<=>(const GoodPair&, const GoodPair&) = default;
};

struct GoodEdgePairSet {
  std::vector<GoodPair> pairs;  // sorted by e1
  int pairing_rounds = 0;
  int distinct_labels = 0;
};

// Throws InfiniteDistance if the pair fails the finiteness check.
GoodEdgePairSet find_good_edge_pairs(const Phylogeny& t1, const Phylogeny& t2, par::Runtime& rt,
                                     const std::string& phase = "gep");

// Definition-based O(n^2) reference via edge_splits.
std::vector<GoodPair> brute_force_good_pairs(const Phylogeny& t1, const Phylogeny& t2);

struct Component {
  Phylogeny t1, t2;
  std::vector<EdgeId> map1, map2;  // component edge id -> global edge id
  std::vector<std::string> taxa;   // sorted, pseudo-leaves included
};

// Label given to the pseudo-leaf standing for good pair i.
std::string pseudo_leaf_label(std::size_t i);

// Cuts both trees at every paired edge. Components are ordered by taxa.
std::vector<Component> decompose(const Phylogeny& t1, const Phylogeny& t2, const GoodEdgePairSet& pairs);

}  // namespace nni
