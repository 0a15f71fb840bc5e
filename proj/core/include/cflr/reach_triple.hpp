#pragma once

#include <compare>

#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"

namespace cflr {

/// One derived fact: a path from `source` to `target` whose labels derive
/// from `nonterminal`. Indexed non-terminals carry their concrete index tag.
struct ReachTriple {
  Symbol nonterminal;
  VertexId source = 0;
  VertexId target = 0;

  friend auto operator<=>(const ReachTriple&, const ReachTriple&) = default;
  friend bool operator==(const ReachTriple&, const ReachTriple&) = default;
};

}  // namespace cflr
