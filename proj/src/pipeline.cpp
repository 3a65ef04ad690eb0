#include "nni/pipeline.hpp"

#include <algorithm>

#include "nni/aux_tree.hpp"
#include "nni/caterpillar.hpp"
#include "nni/edge_merge_sort.hpp"
#include "nni/leaf_sorter.hpp"
#include "nni/linearizer.hpp"

namespace nni {

namespace {

struct Half {
  NniSequence seq;  // input tree -> copy of the auxiliary shape
  Phylogeny tree;   // after seq
  AuxiliaryTree labelled;  // auxiliary shape carrying this tree's leaf order
  std::vector<EdgeId> phi; // auxiliary edge id -> input edge id
  Weight lin, sort, lin_aux;
};

// Position of each internal edge of `order` matched against `ref` by weight,
// ties by edge id against position.
std::vector<EdgeId> target_from(const Phylogeny& t, const Phylogeny& ref, const std::vector<EdgeId>& ref_order) {
  std::vector<EdgeId> mine = t.internal_edges();
  std::sort(mine.begin(), mine.end(), [&](EdgeId a, EdgeId b) {
    return t.weight(a) != t.weight(b) ? t.weight(a) < t.weight(b) : a < b;
  });
  std::vector<int> pos(ref_order.size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = static_cast<int>(i);
  std::stable_sort(pos.begin(), pos.end(),
                   [&](int a, int b) { return ref.weight(ref_order[a]) < ref.weight(ref_order[b]); });
  std::vector<EdgeId> target(ref_order.size(), kNone);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (t.weight(mine[i]) != ref.weight(ref_order[pos[i]])) throw InternalError("weight multisets differ");
    target[pos[i]] = mine[i];
  }
  return target;
}

Half to_auxiliary(const Phylogeny& input, const AuxiliaryTree& aux, const LinearizeResult& lin_aux,
                  const std::vector<EdgeId>& aux_order, par::Runtime& rt, const std::string& tag, ApproxResult& stats) {
  Half h;
  LinearizeResult lin = linearize(input, rt, "linearize-" + tag);
  stats.linearize_iterations = std::max(stats.linearize_iterations, lin.iterations);
  stats.endnode_path_rounds = std::max(stats.endnode_path_rounds, lin.max_path_rounds);
  h.seq = lin.seq;
  h.lin = lin.cost;
  h.tree = std::move(lin.tree);

  std::vector<EdgeId> target = target_from(h.tree, lin_aux.tree, aux_order);
  if (!target.empty()) {
    MergeSortResult ms = merge_sort_edges(h.tree, target, rt, "edge-sort-" + tag);
    stats.sort_stages = std::max(stats.sort_stages, ms.stages);
    h.seq.append(ms.seq);
    h.sort = ms.cost;
  }

  // Identify the two caterpillars position by position.
  h.phi.assign(aux.tree.edge_count(), kNone);
  std::vector<NodeId> sa, sw;
  if (aux_order.empty()) {
    sa = {read_caterpillar(lin_aux.tree).spine};
    sw = {read_caterpillar(h.tree).spine};
  } else {
    sa = spine_for(lin_aux.tree, aux_order);
    sw = spine_for(h.tree, target);
  }
  for (std::size_t i = 0; i < aux_order.size(); ++i) h.phi[aux_order[i]] = target[i];
  for (std::size_t i = 0; i < sa.size(); ++i) {
    auto la = leaf_edges_at(lin_aux.tree, sa[i]);
    auto lw = leaf_edges_at(h.tree, sw[i]);
    if (la.size() != lw.size()) throw InternalError("caterpillars differ in shape");
    for (std::size_t k = 0; k < la.size(); ++k) h.phi[la[k]] = lw[k];
  }

  NniSequence back = map_edges(invert_sequence(lin_aux.seq), h.phi);
  h.lin_aux = apply_sequence_inplace(h.tree, back);
  h.seq.append(back);

  h.labelled = aux;
  for (NodeId s : aux.slots) {
    EdgeId e = aux.tree.incident(s)[0];
    EdgeId f = h.phi[e];
    NodeId leaf = h.tree.leaf_end(f);
    if (leaf == kNone) throw InternalError("auxiliary correspondence maps a leaf edge to an internal edge");
    h.labelled.tree.set_label(s, h.tree.label(leaf));
    h.labelled.tree.set_weight(e, h.tree.weight(f));
  }
  if (!canonical_equal(h.tree, h.labelled.tree)) throw InternalError("tree does not match the auxiliary shape");
  return h;
}

void add_phase(ApproxResult& r, const std::string& name, Weight w) { r.phase_costs[name] += w; }

}  // namespace

ApproxResult approx_component(const Phylogeny& t1, const Phylogeny& t2, par::Runtime& rt) {
  ApproxResult r;
  for (const char* p : {"linearize-1", "edge-sort-1", "linearize-aux-1", "leaf-sort", "linearize-aux-2",
                        "edge-sort-2", "linearize-2"})
    r.phase_costs[p] = Weight{};
  r.W = weight_multiset(t1).total;
  if (canonical_equal(t1, t2)) return r;

  AuxiliaryTree aux = build_auxiliary(t1);
  check_auxiliary(aux);
  if (!canonical_equal(aux.tree, build_auxiliary(t2).tree)) throw InternalError("auxiliary trees differ");
  LinearizeResult lin_aux = linearize(aux.tree, rt, "linearize-aux");
  std::vector<EdgeId> aux_order = read_caterpillar(lin_aux.tree).order;

  Half h1 = to_auxiliary(t1, aux, lin_aux, aux_order, rt, "1", r);
  Half h2 = to_auxiliary(t2, aux, lin_aux, aux_order, rt, "2", r);

  LeafSortResult ls = sort_leaves(h1.labelled, h2.labelled, rt, "leaf-sort");
  NniSequence b = map_edges(ls.seq, h1.phi);
  Phylogeny z = h1.tree;
  Weight bcost = apply_sequence_inplace(z, b);
  if (!canonical_equal(z, h2.tree)) throw InternalError("leaf sort did not reach the second auxiliary form");

  std::vector<EdgeId> psi = match_edges(h2.tree, z);
  NniSequence back2 = map_edges(invert_sequence(h2.seq), psi);
  Weight back_cost = apply_sequence_inplace(z, back2);
  if (!canonical_equal(z, t2)) throw InternalError("reverse of the second half did not reach t2");

  r.seq = h1.seq;
  r.seq.append(b);
  r.seq.append(back2);
  add_phase(r, "linearize-1", h1.lin);
  add_phase(r, "edge-sort-1", h1.sort);
  add_phase(r, "linearize-aux-1", h1.lin_aux);
  add_phase(r, "leaf-sort", bcost);
  add_phase(r, "linearize-aux-2", h2.lin_aux);
  add_phase(r, "edge-sort-2", h2.sort);
  add_phase(r, "linearize-2", h2.lin);
  for (const auto& [name, w] : r.phase_costs) r.cost += w;
  if (r.cost != h1.lin + h1.sort + h1.lin_aux + bcost + back_cost) throw InternalError("phase costs do not add up");
  return r;
}

ApproxResult approx_nni(const Phylogeny& t1, const Phylogeny& t2, int threads) {
  require_valid(t1);
  require_valid(t2);
  par::Runtime rt(threads);
  GoodEdgePairSet gp = find_good_edge_pairs(t1, t2, rt, "gep");
  std::vector<Component> comps = decompose(t1, t2, gp);

  ApproxResult total;
  total.W = weight_multiset(t1).total;
  total.good_pairs = gp.pairs.size();
  total.components = comps.size();
  total.pairing_rounds = gp.pairing_rounds;
  total.distinct_labels = gp.distinct_labels;
  Phylogeny cur = t1;
  for (const Component& c : comps) {
    ApproxResult part = approx_component(c.t1, c.t2, rt);
    NniSequence global = map_edges(part.seq, c.map1);
    apply_sequence_inplace(cur, global);
    total.seq.append(global);
    for (const auto& [name, w] : part.phase_costs) total.phase_costs[name] += w;
    total.linearize_iterations = std::max(total.linearize_iterations, part.linearize_iterations);
    total.endnode_path_rounds = std::max(total.endnode_path_rounds, part.endnode_path_rounds);
    total.sort_stages = std::max(total.sort_stages, part.sort_stages);
  }
  for (const auto& [name, w] : total.phase_costs) total.cost += w;
  Verification v = verify_transform(t1, total.seq, t2);
  if (!v.ok) throw InternalError("pipeline output does not transform t1 into t2");
  if (v.cost != total.cost) throw InternalError("replayed cost differs from phase accounting");
  total.metrics = rt.metrics();
  total.ratio = total.W.positive() ? total.cost.to_double() / total.W.to_double() : 0.0;
  return total;
}

}  // namespace nni
