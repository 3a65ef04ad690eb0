#include <doctest.h>

#include <json.hpp>
#include <numeric>
#include <stdexcept>

#include "nni/errors.hpp"
#include "nni/generator.hpp"
#include "nni/par_runtime.hpp"

using namespace nni;
using par::Conflict;
using par::Runtime;
using par::Write;

TEST_CASE("empty round is a no-op") {
  Runtime rt(4);
  std::vector<int> mem{1, 2, 3};
  rt.round<int>("p", mem, 0, [](std::size_t, const std::vector<int>&, auto&) { FAIL("ran"); });
  rt.map("p", 0, [](std::size_t) { FAIL("ran"); });
  CHECK(mem == std::vector<int>{1, 2, 3});
  CHECK(rt.metrics().phases.empty());
}

TEST_CASE("own cells") {
  for (int threads : {1, 3, 8}) {
    Runtime rt(threads);
    std::vector<int> mem(100, 0);
    rt.round<int>("inc", mem, mem.size(),
                  [](std::size_t i, const std::vector<int>& s, auto& emit) { emit(i, s[i] + 1); });
    CHECK(std::all_of(mem.begin(), mem.end(), [](int x) { return x == 1; }));
    CHECK(rt.metrics().at("inc") == par::PhaseMetrics{1, 100, 100});
    rt.round<int>("inc", mem, 10, [](std::size_t i, const std::vector<int>& s, auto& emit) { emit(i, s[i] + 1); });
    CHECK(rt.metrics().at("inc") == par::PhaseMetrics{2, 110, 100});
  }
}

TEST_CASE("conflict resolution") {
  using W = Write<int>;
  CHECK(par::crcw_resolve<int>({W{0, 7, 3}}) == std::vector<std::pair<std::size_t, int>>{{0, 7}});
  auto r = par::crcw_resolve<int>({W{4, 50, 5}, W{4, 20, 2}, W{4, 90, 9}});
  CHECK(r == std::vector<std::pair<std::size_t, int>>{{4, 20}});
  auto m = par::crcw_resolve<int>({W{4, 50, 5}, W{4, 20, 2}, W{4, 90, 9}}, Conflict::Max);
  CHECK(m == std::vector<std::pair<std::size_t, int>>{{4, 90}});

  // Same through a round on several threads: lowest task id wins.
  for (int threads : {1, 2, 8}) {
    Runtime rt(threads);
    std::vector<int> mem(1, -1);
    rt.round<int>("w", mem, 64, [](std::size_t i, const std::vector<int>&, auto& emit) {
      if (i == 5 || i == 2 || i == 9) emit(0, static_cast<int>(i * 10));
    });
    CHECK(mem[0] == 20);
  }
}

TEST_CASE("write guard") {
  Runtime rt(4);
  std::vector<int> mem(8, 0);
  par::WriteSet own = [](std::size_t task, std::size_t cell) { return task == cell; };
  CHECK_NOTHROW(rt.round<int>(
      "g", mem, 8, [](std::size_t i, const std::vector<int>&, auto& emit) { emit(i, 1); }, Conflict::Priority, own));
  CHECK_THROWS_AS(rt.round<int>(
                      "g", mem, 8, [](std::size_t i, const std::vector<int>&, auto& emit) { emit((i + 1) % 8, 2); },
                      Conflict::Priority, own),
                  DeterminismError);
  CHECK(std::all_of(mem.begin(), mem.end(), [](int x) { return x == 1; }));
  CHECK_THROWS_AS(rt.round<int>("g", mem, 1, [](std::size_t, const std::vector<int>&, auto& emit) { emit(99, 0); }),
                  DeterminismError);
}

TEST_CASE("exceptions escape parallel regions") {
  Runtime rt(4);
  CHECK_THROWS_AS(rt.map("x", 100,
                         [](std::size_t i) {
                           if (i == 37) throw std::runtime_error("boom");
                         }),
                  std::runtime_error);
}

namespace {

// List ranking by pointer jumping over a random linked list.
std::pair<std::vector<int>, par::ParMetrics> list_rank(int n, std::uint64_t seed, int threads) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order.begin(), order.end());
  std::vector<int> next(n, -1), rank(n, 0);
  for (int i = 0; i + 1 < n; ++i) next[order[i]] = order[i + 1];
  for (int i = 0; i < n; ++i) rank[i] = next[i] < 0 ? 0 : 1;
  Runtime rt(threads);
  // Cell 2k holds rank, 2k+1 holds next.
  std::vector<int> mem(2 * n);
  for (int i = 0; i < n; ++i) mem[2 * i] = rank[i], mem[2 * i + 1] = next[i];
  bool more = true;
  while (more) {
    rt.round<int>("rank", mem, n, [](std::size_t i, const std::vector<int>& s, auto& emit) {
      int nx = s[2 * i + 1];
      if (nx < 0) return;
      emit(2 * i, s[2 * i] + s[2 * nx]);
      emit(2 * i + 1, s[2 * nx + 1]);
    });
    more = false;
    for (int i = 0; i < n; ++i) more |= mem[2 * i + 1] >= 0;
  }
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = mem[2 * i];
  // Sanity: element at list position p has rank n-1-p.
  for (int p = 0; p < n; ++p) CHECK(out[order[p]] == n - 1 - p);
  return {out, rt.metrics()};
}

}  // namespace

TEST_CASE("determinism across thread counts") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto base = list_rank(1000, seed, 1);
    for (int threads : {2, 4, 8}) {
      auto got = list_rank(1000, seed, threads);
      CHECK(got.first == base.first);
      CHECK(got.second == base.second);
      CHECK(got.second.to_json() == base.second.to_json());
    }
    CHECK(base.second.at("rank").rounds == 10);
  }
}

TEST_CASE("metrics json") {
  par::ParMetrics m;
  m.record("b", 4);
  m.record("a", 2);
  m.record("b", 7);
  auto j = nlohmann::json::parse(m.to_json());
  CHECK(j["b"]["rounds"] == 2);
  CHECK(j["b"]["work"] == 11);
  CHECK(j["b"]["peak_parallelism"] == 7);
  CHECK(m.total() == par::PhaseMetrics{3, 13, 7});
  par::ParMetrics other;
  other.record("a", 9);
  m.merge(other);
  CHECK(m.at("a") == par::PhaseMetrics{2, 11, 9});
}
