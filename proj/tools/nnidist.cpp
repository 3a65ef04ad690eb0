#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nni/exact_oracle.hpp"
#include "nni/generator.hpp"
#include "nni/gep.hpp"
#include "nni/newick.hpp"
#include "nni/pipeline.hpp"
#include "nni/trace.hpp"

using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nni::Phylogeny load(const std::string& path) {
  try {
    return nni::read_newick_file(path);
  } catch (const nni::TreeError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

int run_approx(const std::string& f1, const std::string& f2, const std::string& trace_path,
               const std::string& metrics_path, int threads) {
  nni::Phylogeny t1 = load(f1), t2 = load(f2);
  nni::ApproxResult r = nni::approx_nni(t1, t2, threads);
  if (!trace_path.empty()) {
    std::ostringstream ss;
    nni::write_trace(ss, t1, t2, r.seq);
    write_file(trace_path, ss.str());
  }
  if (!metrics_path.empty()) write_file(metrics_path, r.metrics.to_json() + "\n");
  json phases = json::object();
  for (const auto& [name, w] : r.phase_costs) phases[name] = w.to_string();
  json out = {{"cost", r.cost.to_string()},
              {"W", r.W.to_string()},
              {"ratio", r.ratio},
              {"ops", r.seq.size()},
              {"good_pairs", r.good_pairs},
              {"components", r.components},
              {"phase_costs", phases},
              {"span",
               {{"linearize_iterations", r.linearize_iterations},
                {"endnode_path_rounds", r.endnode_path_rounds},
                {"sort_stages", r.sort_stages},
                {"pairing_rounds", r.pairing_rounds}}}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_exact(const std::string& f1, const std::string& f2, std::size_t limit) {
  nni::Phylogeny t1 = load(f1), t2 = load(f2);
  nni::ExactResult r = nni::exact_dnni(t1, t2, limit);
  nni::write_trace(std::cout, t1, t2, r.witness);
  std::cerr << "distance " << r.distance.to_string() << " states " << r.states << '\n';
  return 0;
}

int run_verify(const std::string& f1, const std::string& trace_path, const std::string& f2) {
  nni::Phylogeny t1 = load(f1), t2 = load(f2);
  std::ifstream in(trace_path);
  if (!in) throw UsageError("cannot open " + trace_path);
  nni::Trace tr;
  try {
    tr = nni::read_trace(in);
  } catch (const nni::TreeError& e) {
    throw UsageError(e.what());
  }
  json out;
  bool digests = tr.t1_digest == nni::tree_digest(t1) && tr.t2_digest == nni::tree_digest(t2);
  try {
    nni::Verification v = nni::verify_transform(t1, tr.seq, t2);
    out = {{"ok", v.ok && digests}, {"cost", v.cost.to_string()}, {"digests_match", digests}};
  } catch (const nni::ReplayError& e) {
    out = {{"ok", false}, {"error", e.what()}};
  }
  std::cout << out.dump() << '\n';
  return out["ok"].get<bool>() ? 0 : 1;
}

int run_gep(const std::string& f1, const std::string& f2) {
  nni::Phylogeny t1 = load(f1), t2 = load(f2);
  nni::par::Runtime rt;
  nni::GoodEdgePairSet gp = nni::find_good_edge_pairs(t1, t2, rt);
  json pairs = json::array();
  for (const auto& p : gp.pairs) pairs.push_back({{"t1_edge", p.e1}, {"t2_edge", p.e2}, {"weight", p.weight.to_string()}});
  json comps = json::array();
  for (const auto& c : nni::decompose(t1, t2, gp)) {
    comps.push_back({{"taxa", c.taxa},
                     {"t1", nni::serialize_newick(c.t1)},
                     {"t2", nni::serialize_newick(c.t2)},
                     {"t1_edges", c.map1},
                     {"t2_edges", c.map2}});
  }
  json out = {{"pairs", pairs}, {"components", comps}, {"pairing_rounds", gp.pairing_rounds}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_gen(int taxa, std::uint64_t seed, int moves, bool dup, const std::string& prefix) {
  if (taxa < 3) throw UsageError("--taxa must be at least 3");
  if (moves < 0) throw UsageError("--moves must be non-negative");
  nni::GeneratedPair g = nni::generate_pair({taxa, seed, moves, dup});
  std::string a = nni::serialize_newick(g.t1), b = nni::serialize_newick(g.t2);
  json summary = {{"taxa", taxa}, {"seed", seed}, {"moves", moves}, {"cost", g.cost.to_string()}};
  if (prefix.empty()) {
    std::cout << a << '\n' << b << '\n' << summary.dump() << '\n';
  } else {
    write_file(prefix + ".t1.nwk", a + "\n");
    write_file(prefix + ".t2.nwk", b + "\n");
    std::cout << summary.dump() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate weighted NNI distance between phylogenies"};
  app.require_subcommand(1);

  std::string f1, f2, trace, metrics, prefix;
  int threads = 1, taxa = 8, moves = 1;
  std::uint64_t seed = 1;
  std::size_t limit = 5'000'000;
  bool dup = false;

  auto* approx = app.add_subcommand("approx", "approximate distance with a verifiable trace");
  approx->add_option("t1", f1)->required();
  approx->add_option("t2", f2)->required();
  approx->add_option("--trace", trace, "write JSON-lines trace");
  approx->add_option("--report-metrics", metrics, "write per-phase round/work metrics");
  approx->add_option("--threads", threads)->check(CLI::PositiveNumber);
  approx->add_option("--seed", seed, "accepted for interface symmetry; the pipeline is deterministic");

  auto* exact = app.add_subcommand("exact", "exact distance by uniform-cost search");
  exact->add_option("t1", f1)->required();
  exact->add_option("t2", f2)->required();
  exact->add_option("--state-limit", limit);

  auto* verify = app.add_subcommand("verify", "replay a trace");
  verify->add_option("t1", f1)->required();
  verify->add_option("trace", trace)->required();
  verify->add_option("t2", f2)->required();

  auto* gep = app.add_subcommand("gep", "good edge pairs and decomposition");
  gep->add_option("t1", f1)->required();
  gep->add_option("t2", f2)->required();

  auto* gen = app.add_subcommand("gen", "random tree pair related by random NNI moves");
  gen->add_option("--taxa", taxa)->required();
  gen->add_option("--seed", seed);
  gen->add_option("--moves", moves)->required();
  gen->add_flag("--dup-weights", dup);
  gen->add_option("-o,--out-prefix", prefix, "write PREFIX.t1.nwk and PREFIX.t2.nwk");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*approx) return run_approx(f1, f2, trace, metrics, threads);
    if (*exact) return run_exact(f1, f2, limit);
    if (*verify) return run_verify(f1, trace, f2);
    if (*gep) return run_gep(f1, f2);
    if (*gen) return run_gen(taxa, seed, moves, dup, prefix);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nni::TaxaMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nni::InfiniteDistance& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
