#pragma once

// Reference all-pairs CFL reachability by worklist closure over single
// facts. Shares no code with the matrix path and is meant for small graphs.

#include <vector>

#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"
#include "cflr/reach_triple.hpp"

namespace cflr {

/// Least set of facts closed under the grammar's rules, sorted. Indexed
/// rules are expanded once per tag of the graph's index universe.
std::vector<ReachTriple> oracle_solve(const LabeledGraph& graph, const WcnfGrammar& g);

}  // namespace cflr
