#include "nni/edge_merge_sort.hpp"

#include <algorithm>
#include <numeric>

namespace nni {

namespace {

bool sorted_run(const std::vector<EdgeId>& order, int s, int len, bool asc, const std::vector<int>& rank) {
  for (int i = s + 1; i < s + len; ++i)
    if ((rank[order[i - 1]] < rank[order[i]]) != asc) return false;
  return true;
}

// Pairs block l with block 2*npair-1-l, innermost pair first. Each pair is
// merged by pulling the front edges around the junction between them into a
// new arm; an odd last block is carried over.
StageResult run_stage(Phylogeny& L, const std::vector<EdgeId>& order, const std::vector<Block>& blocks, int k,
                      const std::vector<int>& rank, par::Runtime& rt, const std::string& phase) {
  const int m = static_cast<int>(order.size());
  const int nb = static_cast<int>(blocks.size());
  const int npair = nb / 2;
  std::vector<NodeId> spine = spine_for(L, order);
  auto first_leaf = [&](NodeId v) { return leaf_edges_at(L, v).front(); };
  auto second_leaf = [&](NodeId v) { return leaf_edges_at(L, v).back(); };

  struct Pair {
    std::vector<EdgeId> x, y;  // fronts first (from the junction outward)
    EdgeId xbeyond, ybeyond;
    bool peak;
    int offset;
  };
  std::vector<Pair> pairs;
  int offset = 0;
  for (int l = npair - 1; l >= 0; --l) {
    const Block& bx = blocks[l];
    const Block& by = blocks[2 * npair - 1 - l];
    Pair p;
    for (int q = bx.start + bx.length - 1; q >= bx.start; --q) p.x.push_back(order[q]);
    for (int q = by.start; q < by.start + by.length; ++q) p.y.push_back(order[q]);
    p.xbeyond = bx.start > 0 ? order[bx.start - 1] : second_leaf(spine[0]);
    p.ybeyond = by.start + by.length < m ? order[by.start + by.length] : second_leaf(spine[m]);
    p.peak = bx.ascending;
    p.offset = offset;
    offset += bx.length + by.length;
    pairs.push_back(std::move(p));
  }

  std::vector<int> pos(L.edge_count(), -1);
  for (int i = 0; i < m; ++i) pos[order[i]] = i;

  struct Task {
    int pair;
    bool from_x;
    int own;
  };
  std::vector<Task> tasks;
  for (int pi = 0; pi < static_cast<int>(pairs.size()); ++pi) {
    for (int i = 0; i < static_cast<int>(pairs[pi].x.size()); ++i) tasks.push_back({pi, true, i});
    for (int j = 0; j < static_cast<int>(pairs[pi].y.size()); ++j) tasks.push_back({pi, false, j});
  }

  // Rank each edge against the opposite block; its merged index is its own
  // index plus the number of opposite edges pulled before it.
  std::vector<int> merged(tasks.size());
  std::vector<NniOp> op_of(tasks.size());
  rt.map(phase, tasks.size(), [&](std::size_t ti) {
    const Task& tk = tasks[ti];
    const Pair& p = pairs[tk.pair];
    const auto& own = tk.from_x ? p.x : p.y;
    const auto& opp = tk.from_x ? p.y : p.x;
    EdgeId e = own[tk.own];
    int r = rank[e];
    // Opposite list is descending from the junction for a peak, ascending for a valley.
    auto before = [&](EdgeId f) { return p.peak ? rank[f] > r : rank[f] < r; };
    int lo = 0, hi = static_cast<int>(opp.size());
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (before(opp[mid]))
        lo = mid + 1;
      else
        hi = mid;
    }
    int cross = lo;
    merged[ti] = p.offset + tk.own + cross;
    if (tk.from_x) {
      EdgeId yfront = cross < static_cast<int>(p.y.size()) ? p.y[cross] : p.ybeyond;
      op_of[ti] = {first_leaf(spine[pos[e]]), e, yfront};
    } else {
      EdgeId xfront = cross < static_cast<int>(p.x.size()) ? p.x[cross] : p.xbeyond;
      op_of[ti] = {xfront, e, first_leaf(spine[pos[e] + 1])};
    }
  });

  StageResult res;
  res.order.assign(m, kNone);
  res.seq.ops.assign(offset, NniOp{});
  rt.map(phase, tasks.size(), [&](std::size_t ti) {
    EdgeId e = (tasks[ti].from_x ? pairs[tasks[ti].pair].x : pairs[tasks[ti].pair].y)[tasks[ti].own];
    res.order[merged[ti]] = e;
    res.seq.ops[merged[ti]] = op_of[ti];
  });

  for (const Pair& p : pairs) {
    int len = static_cast<int>(p.x.size() + p.y.size());
    res.blocks.push_back({k + 1, static_cast<int>(res.blocks.size()), p.offset, len, !p.peak});
  }
  if (nb % 2 == 1) {
    const Block& last = blocks[nb - 1];
    std::copy(order.begin() + last.start, order.begin() + last.start + last.length, res.order.begin() + offset);
    res.blocks.push_back({k + 1, static_cast<int>(res.blocks.size()), offset, last.length, last.ascending});
  }

  for (std::size_t i = 0; i < res.seq.ops.size(); ++i) {
    try {
      res.cost += apply_nni_inplace(L, res.seq.ops[i]);
    } catch (const InvalidNni& e) {
      throw InternalError(std::string("merge stage: predicted op invalid on replay: ") + e.what());
    }
  }
  spine_for(L, res.order);
  if (!blocks_consistent(res.order, res.blocks, rank)) throw InternalError("merge stage: blocks not sorted");
  return res;
}

std::vector<Block> alternating_pairs(const std::vector<EdgeId>& order, const std::vector<int>& rank) {
  const int m = static_cast<int>(order.size());
  std::vector<Block> out;
  bool asc = true;
  for (int s = 0; s < m; s += 2) {
    int len = std::min(2, m - s);
    if (len == 2) {
      bool a = rank[order[s]] < rank[order[s + 1]];
      if (s == 0) asc = a;
      if (a != asc) return {};
    }
    out.push_back({1, static_cast<int>(out.size()), s, len, asc});
    asc = !asc;
  }
  return out;
}

}  // namespace

bool blocks_consistent(const std::vector<EdgeId>& order, const std::vector<Block>& blocks,
                       const std::vector<int>& rank) {
  int at = 0;
  for (const Block& b : blocks) {
    if (b.start != at || b.length <= 0) return false;
    if (!sorted_run(order, b.start, b.length, b.ascending, rank)) return false;
    at += b.length;
  }
  return at == static_cast<int>(order.size());
}

StageResult make_alternating(Phylogeny& L, const std::vector<EdgeId>& order, const std::vector<int>& rank,
                             par::Runtime& rt, const std::string& phase) {
  auto ready = alternating_pairs(order, rank);
  if (!ready.empty()) {
    StageResult res;
    res.order = order;
    res.blocks = std::move(ready);
    res.skipped = true;
    return res;
  }
  std::vector<Block> singles;
  for (int i = 0; i < static_cast<int>(order.size()); ++i) singles.push_back({0, i, i, 1, i % 2 == 0});
  return run_stage(L, order, singles, 0, rank, rt, phase);
}

StageResult merge_stage(Phylogeny& L, const std::vector<EdgeId>& order, const std::vector<Block>& blocks, int k,
                        const std::vector<int>& rank, par::Runtime& rt, const std::string& phase) {
  if (!blocks_consistent(order, blocks, rank)) throw InternalError("merge stage: invalid input blocks");
  for (std::size_t i = 1; i < blocks.size(); ++i)
    if (blocks[i].ascending == blocks[i - 1].ascending)
      throw InternalError("merge stage: blocks do not alternate");
  return run_stage(L, order, blocks, k, rank, rt, phase);
}

MergeSortResult merge_sort_edges(Phylogeny& L, const std::vector<EdgeId>& target, par::Runtime& rt,
                                 const std::string& phase) {
  Caterpillar cat = read_caterpillar(L);
  std::vector<int> rank(L.edge_count(), -1);
  for (int i = 0; i < static_cast<int>(target.size()); ++i) rank.at(target[i]) = i;
  {
    auto a = cat.order, b = target;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw TreeError("merge sort: target is not a permutation of the internal edges");
  }
  MergeSortResult res;
  std::vector<EdgeId> order = cat.order;
  auto sorted_either = [&](const std::vector<EdgeId>& o) {
    return sorted_run(o, 0, static_cast<int>(o.size()), true, rank) ||
           sorted_run(o, 0, static_cast<int>(o.size()), false, rank);
  };
  if (!sorted_either(order)) {
    StageResult st = make_alternating(L, order, rank, rt, phase);
    ++res.stages;
    res.seq.append(st.seq);
    res.cost += st.cost;
    order = st.order;
    std::vector<Block> blocks = st.blocks;
    int k = 1;
    while (blocks.size() > 1 && !sorted_either(order)) {
      st = merge_stage(L, order, blocks, k++, rank, rt, phase);
      ++res.stages;
      res.seq.append(st.seq);
      res.cost += st.cost;
      order = st.order;
      blocks = st.blocks;
    }
  }
  if (!order.empty() && rank[order.front()] > rank[order.back()]) std::reverse(order.begin(), order.end());
  if (order != target) throw InternalError("merge sort: final reading differs from target");
  res.order = std::move(order);
  return res;
}

}  // namespace nni
