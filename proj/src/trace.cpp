#include "nni/trace.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "nni/newick.hpp"

namespace nni {

std::string tree_digest(const Phylogeny& t) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : serialize_newick(t)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_trace(std::ostream& out, const Phylogeny& t1, const Phylogeny& t2, const NniSequence& seq) {
  using json = nlohmann::ordered_json;
  Phylogeny t = t1;
  std::vector<json> lines;
  lines.reserve(seq.size());
  Weight total;
  for (std::size_t i = 0; i < seq.ops.size(); ++i) {
    const NniOp& op = seq.ops[i];
    std::pair<NodeId, NodeId> uv;
    Weight c;
    try {
      uv = nni_pivots(t, op);
      c = apply_nni_inplace(t, op);
    } catch (const InvalidNni& e) {
      throw ReplayError(e.what(), i);
    }
    total += c;
    lines.push_back({{"e1", op.e1}, {"e2", op.e2}, {"e3", op.e3}, {"cost", c.to_string()},
                     {"u", uv.first}, {"v", uv.second}});
  }
  json head = {{"format", "nni-trace"}, {"version", 1},         {"t1", tree_digest(t1)},
               {"t2", tree_digest(t2)},  {"ops", seq.size()},   {"total_cost", total.to_string()}};
  out << head.dump() << '\n';
  for (const auto& l : lines) out << l.dump() << '\n';
}

Trace read_trace(std::istream& in) {
  using json = nlohmann::json;
  Trace tr;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t expected = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw TreeError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      if (!have_header) {
        if (j.value("format", "") != "nni-trace") throw TreeError("trace: missing header");
        tr.t1_digest = j.at("t1").get<std::string>();
        tr.t2_digest = j.at("t2").get<std::string>();
        expected = j.at("ops").get<std::size_t>();
        have_header = true;
        continue;
      }
      tr.seq.push_back({j.at("e1").get<EdgeId>(), j.at("e2").get<EdgeId>(), j.at("e3").get<EdgeId>()});
    } catch (const json::exception& e) {
      throw TreeError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) throw TreeError("trace: empty");
  if (tr.seq.size() != expected) throw TreeError("trace: op count does not match header");
  return tr;
}

}  // namespace nni
