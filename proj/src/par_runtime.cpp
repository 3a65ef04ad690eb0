#include "nni/par_runtime.hpp"

#include <json.hpp>

namespace nni::par {

void ParMetrics::record(std::string_view phase, std::uint64_t tasks) {
  auto it = phases.find(phase);
  if (it == phases.end()) it = phases.emplace(std::string(phase), PhaseMetrics{}).first;
  PhaseMetrics& m = it->second;
  m.rounds += 1;
  m.work += tasks;
  m.peak_parallelism = std::max(m.peak_parallelism, tasks);
}

void ParMetrics::merge(const ParMetrics& other) {
  for (const auto& [name, o] : other.phases) {
    PhaseMetrics& m = phases[name];
    m.rounds += o.rounds;
    m.work += o.work;
    m.peak_parallelism = std::max(m.peak_parallelism, o.peak_parallelism);
  }
}

PhaseMetrics ParMetrics::total() const {
  PhaseMetrics t;
  for (const auto& [name, m] : phases) {
    t.rounds += m.rounds;
    t.work += m.work;
    t.peak_parallelism = std::max(t.peak_parallelism, m.peak_parallelism);
  }
  return t;
}

const PhaseMetrics& ParMetrics::at(std::string_view phase) const {
  static const PhaseMetrics empty;
  auto it = phases.find(phase);
  return it == phases.end() ? empty : it->second;
}

std::string ParMetrics::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [name, m] : phases)
    j[name] = {{"rounds", m.rounds}, {"work", m.work}, {"peak_parallelism", m.peak_parallelism}};
  return j.dump(2);
}

}  // namespace nni::par
