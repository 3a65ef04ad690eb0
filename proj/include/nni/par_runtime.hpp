#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <omp.h>

#include "nni/errors.hpp"

namespace nni::par {

enum class Conflict {
  Priority,  // smallest writer id wins
  Max,       // largest value wins
};

struct PhaseMetrics {
  std::uint64_t rounds = 0;
  std::uint64_t work = 0;
  std::uint64_t peak_parallelism = 0;
  friend bool operator==(const PhaseMetrics&, const PhaseMetrics&) = default;
};

struct ParMetrics {
  std::map<std::string, PhaseMetrics, std::less<>> phases;

  void record(std::string_view phase, std::uint64_t tasks);
  void merge(const ParMetrics& other);
  PhaseMetrics total() const;
  const PhaseMetrics& at(std::string_view phase) const;
  std::string to_json() const;
  friend bool operator==(const ParMetrics&, const ParMetrics&) = default;
};

template <class T>
struct Write {
  std::size_t cell;
  T value;
  std::uint64_t writer;
};

template <class T>
std::vector<std::pair<std::size_t, T>> crcw_resolve(std::vector<Write<T>> writes,
                                                    Conflict rule = Conflict::Priority) {
  std::sort(writes.begin(), writes.end(), [](const Write<T>& a, const Write<T>& b) {
    return a.cell != b.cell ? a.cell < b.cell : a.writer < b.writer;
  });
  std::vector<std::pair<std::size_t, T>> out;
  for (std::size_t i = 0; i < writes.size();) {
    std::size_t j = i;
    T best = writes[i].value;
    for (; j < writes.size() && writes[j].cell == writes[i].cell; ++j)
      if (rule == Conflict::Max && best < writes[j].value) best = writes[j].value;
    out.emplace_back(writes[i].cell, best);
    i = j;
  }
  return out;
}

// Declared write set of a round: may task `task` write cell `cell`?
using WriteSet = std::function<bool(std::size_t task, std::size_t cell)>;

template <class T>
class Emitter {
 public:
  Emitter(std::vector<Write<T>>& buf, std::size_t task, const WriteSet* guard, bool& violated)
      : buf_(buf), task_(task), guard_(guard), violated_(violated) {}
  void operator()(std::size_t cell, T value) { (*this)(cell, std::move(value), task_); }
  void operator()(std::size_t cell, T value, std::uint64_t writer) {
    if (guard_ && *guard_ && !(*guard_)(task_, cell)) violated_ = true;
    buf_.push_back({cell, std::move(value), writer});
  }

 private:
  std::vector<Write<T>>& buf_;
  std::size_t task_;
  const WriteSet* guard_;
  bool& violated_;
};

// Round-synchronous executor. Every round reads a frozen snapshot; shared writes
// are buffered and resolved at the barrier, so results do not depend on the
// number of threads.
class Runtime {
 public:
  explicit Runtime(int threads = 1) : threads_(std::max(1, threads)) {}

  int threads() const { return threads_; }
  ParMetrics& metrics() { return metrics_; }
  const ParMetrics& metrics() const { return metrics_; }

  // One round where task i writes only to storage it owns.
  template <class Fn>
  void map(std::string_view phase, std::size_t tasks, Fn&& fn) {
    if (tasks == 0) return;
    run(tasks, [&](std::size_t i, int) { fn(i); });
    metrics_.record(phase, tasks);
  }

  // One round with buffered shared writes: fn(i, snapshot, emit), emit(cell, value[, writer]).
  template <class T, class Fn>
  void round(std::string_view phase, std::vector<T>& memory, std::size_t tasks, Fn&& fn,
             Conflict rule = Conflict::Priority, const WriteSet& guard = {}) {
    if (tasks == 0) return;
    std::vector<std::vector<Write<T>>> bufs(threads_);
    std::vector<char> bad(threads_, 0);
    const std::vector<T>& snapshot = memory;
    run(tasks, [&](std::size_t i, int tid) {
      bool violated = false;
      Emitter<T> emit(bufs[tid], i, &guard, violated);
      fn(i, snapshot, emit);
      if (violated) bad[tid] = 1;
    });
    if (std::find(bad.begin(), bad.end(), 1) != bad.end())
      throw DeterminismError(std::string("write outside declared write set in phase ") + std::string(phase));
    std::vector<Write<T>> all;
    for (auto& b : bufs) all.insert(all.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
    for (auto& [cell, value] : crcw_resolve(std::move(all), rule)) {
      if (cell >= memory.size()) throw DeterminismError("write to cell outside memory");
      memory[cell] = std::move(value);
    }
    metrics_.record(phase, tasks);
  }

 private:
  template <class Body>
  void run(std::size_t tasks, Body&& body) {
    if (threads_ == 1 || tasks < 2) {
      for (std::size_t i = 0; i < tasks; ++i) body(i, 0);
      return;
    }
    std::exception_ptr err;
#pragma omp parallel num_threads(threads_)
    {
      int tid = omp_get_thread_num();
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(tasks); ++i) {
        try {
          body(static_cast<std::size_t>(i), tid);
        } catch (...) {
#pragma omp critical(nni_par_error)
          if (!err) err = std::current_exception();
        }
      }
    }
    if (err) std::rethrow_exception(err);
  }

  int threads_;
  ParMetrics metrics_;
};

}  // namespace nni::par
