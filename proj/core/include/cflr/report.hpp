#pragma once

// Run reports, oracle cross-checks and timing statistics for the CLI and
// the acceptance suite.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cflr/bool_mat.hpp"
#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"
#include "cflr/reach_triple.hpp"
#include "cflr/solver.hpp"

namespace cflr {

/// One solve, as flat `key=value` lines. Keys in order: variant, grammar,
/// graph, vertices, edges, iterations, wall_seconds, peak_rss_bytes,
/// spgemm_calls, scalar_ops, union_entries, driver_entries, then one
/// `pairs.<nonterminal>` per non-helper non-terminal.
struct RunReport {
  std::string variant;
  std::string grammar;
  std::string graph;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t iterations = 0;
  double wall_seconds = 0;
  std::optional<std::uint64_t> peak_rss_bytes;
  OpCounter counters;
  /// Facts per non-terminal: pairs, times tags for an indexed family.
  std::map<std::string, std::size_t> pairs;

  std::string serialize() const;
};

RunReport make_report(const SolveResult& result, const LabeledGraph& graph, std::string variant,
                      std::string grammar, std::string graph_id, double wall_seconds);

/// Output lines for one non-terminal: `u v` sorted, or `u v tag` for an
/// indexed family. Vertices are printed by their input names.
std::string pair_lines(const NontermMatrix& m, const LabeledGraph& graph, std::string_view base);

/// OS high-water mark of resident memory, if the platform exposes it.
std::optional<std::uint64_t> peak_rss_bytes();

struct Divergence {
  std::string variant;
  ReachTriple triple;
  bool in_oracle = false;  // present in the oracle, absent in the variant, or the reverse

  std::string describe(const LabeledGraph& graph) const;
};

using SolveFn = std::function<std::vector<ReachTriple>(const LabeledGraph&, const WcnfGrammar&,
                                                       const VariantFlags&)>;

/// The matrix solver's facts, sorted.
std::vector<ReachTriple> solve_triples(const LabeledGraph& graph, const WcnfGrammar& g,
                                       const VariantFlags& flags);

/// Runs the oracle and each variant through `solver`; returns the first
/// divergence (smallest triple of the first diverging variant).
std::optional<Divergence> run_check(const LabeledGraph& graph, const WcnfGrammar& g,
                                    const std::vector<std::string>& variants,
                                    const SolveFn& solver = solve_triples);

struct TimingStats {
  double mean = 0;
  /// Unbiased estimate; unset for a single sample.
  std::optional<double> stddev;
};

TimingStats timing_stats(const std::vector<double>& samples);

}  // namespace cflr
