#include "cflr/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <tuple>

#include "cflr/error.hpp"
#include "cflr/oracle.hpp"

namespace cflr {

std::string RunReport::serialize() const {
  std::ostringstream out;
  out << "variant=" << variant << '\n'
      << "grammar=" << grammar << '\n'
      << "graph=" << graph << '\n'
      << "vertices=" << vertices << '\n'
      << "edges=" << edges << '\n'
      << "iterations=" << iterations << '\n'
      << "wall_seconds=" << wall_seconds << '\n'
      << "peak_rss_bytes=" << (peak_rss_bytes ? std::to_string(*peak_rss_bytes) : "n/a") << '\n'
      << "spgemm_calls=" << counters.spgemm_calls << '\n'
      << "scalar_ops=" << counters.scalar_ops << '\n'
      << "union_entries=" << counters.union_entries << '\n'
      << "driver_entries=" << counters.driver_entries << '\n';
  for (const auto& [name, count] : pairs) out << "pairs." << name << '=' << count << '\n';
  return out.str();
}

RunReport make_report(const SolveResult& result, const LabeledGraph& graph, std::string variant,
                      std::string grammar, std::string graph_id, double wall_seconds) {
  RunReport r;
  r.variant = std::move(variant);
  r.grammar = std::move(grammar);
  r.graph = std::move(graph_id);
  r.vertices = graph.vertex_count();
  r.edges = graph.edges().size();
  r.iterations = result.iterations;
  r.wall_seconds = wall_seconds;
  r.peak_rss_bytes = peak_rss_bytes();
  r.counters = result.counters;
  for (const auto& f : result.matrix.plan().families())
    if (!WcnfGrammar::is_helper(f)) r.pairs[f.base] = result.matrix.fact_count(f.base);
  return r;
}

std::string pair_lines(const NontermMatrix& m, const LabeledGraph& graph, std::string_view base) {
  const auto family = m.plan().family_of(base);
  if (!family) throw Error("unknown non-terminal '" + std::string(base) + "'");
  const auto& names = graph.vertex_names();
  std::vector<ReachTriple> facts;
  for (auto& t : m.triples())
    if (t.nonterminal.base == base) facts.push_back(std::move(t));
  std::sort(facts.begin(), facts.end(), [](const ReachTriple& a, const ReachTriple& b) {
    return std::tie(a.source, a.target, a.nonterminal.index) <
           std::tie(b.source, b.target, b.nonterminal.index);
  });
  std::string out;
  for (const auto& t : facts) {
    out += names[t.source];
    out += ' ';
    out += names[t.target];
    if (t.nonterminal.index) {
      out += ' ';
      out += *t.nonterminal.index;
    }
    out += '\n';
  }
  return out;
}

std::optional<std::uint64_t> peak_rss_bytes() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) != 0) continue;
    std::istringstream fields(line.substr(6));
    std::uint64_t kb = 0;
    if (fields >> kb) return kb * 1024;
  }
  return std::nullopt;
}

std::string Divergence::describe(const LabeledGraph& graph) const {
  const auto& names = graph.vertex_names();
  std::ostringstream out;
  out << "divergence in " << variant << ": " << triple.nonterminal.to_string() << " ("
      << names[triple.source] << ", " << names[triple.target] << ") "
      << (in_oracle ? "present in oracle, absent in " : "absent in oracle, present in ")
      << variant;
  return out.str();
}

std::vector<ReachTriple> solve_triples(const LabeledGraph& graph, const WcnfGrammar& g,
                                       const VariantFlags& flags) {
  return solve(graph, g, flags).matrix.triples();
}

std::optional<Divergence> run_check(const LabeledGraph& graph, const WcnfGrammar& g,
                                    const std::vector<std::string>& variants,
                                    const SolveFn& solver) {
  const auto expected = oracle_solve(graph, g);
  for (const auto& name : variants) {
    const auto got = solver(graph, g, variant_flags(name));
    std::vector<ReachTriple> missing, extra;
    std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(),
                        std::back_inserter(missing));
    std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(),
                        std::back_inserter(extra));
    if (missing.empty() && extra.empty()) continue;
    if (!missing.empty() && (extra.empty() || missing.front() < extra.front()))
      return Divergence{name, missing.front(), true};
    return Divergence{name, extra.front(), false};
  }
  return std::nullopt;
}

TimingStats timing_stats(const std::vector<double>& samples) {
  TimingStats s;
  if (samples.empty()) return s;
  const double n = static_cast<double>(samples.size());
  s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  if (samples.size() > 1) {
    double ss = 0;
    for (double x : samples) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / (n - 1));
  }
  return s;
}

}  // namespace cflr
