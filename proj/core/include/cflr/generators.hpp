#pragma once

// Synthetic graphs for tests and benchmarks.

#include <cstddef>
#include <cstdint>
#include <string>

#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"

namespace cflr {

/// 0 -a-> 1 -a-> ... -a-> n -b-> n+1 -b-> ... -b-> 2n. Under the Dyck
/// grammar S -> a S b | a b | S S the derivation depth grows with n.
LabeledGraph chain_graph(std::size_t n);

/// n x n grid; `a` edges go right, `b` edges go down.
LabeledGraph grid_graph(std::size_t n);

struct RandomGraphOptions {
  std::size_t max_vertices = 30;
  std::size_t max_edges = 120;
  /// Tags used for indexed terminals (`f0` ... ); at least 1.
  std::size_t max_index_values = 4;
};

/// Random graph whose labels are the grammar's terminals. Indexed
/// terminals get a tag drawn from a small pool. Deterministic in `seed`.
LabeledGraph random_graph(const WcnfGrammar& g, std::uint64_t seed,
                          const RandomGraphOptions& options = {});

/// Parses `chain:N` or `grid:N`; returns false for anything else.
bool synthetic_graph(const std::string& spec, LabeledGraph& out);

}  // namespace cflr
