#pragma once

// All-pairs CFL reachability by semiring matrix closure.
//
// The baseline repeats M <- M u M*M until nothing changes. The delta loop
// multiplies only the entries found in the previous iteration:
//   C = (M_old * dM) u (dM * M),  dM' = C \ M,  M_old <- M,  M <- M u dM'.
// Optional refinements: both row- and column-major copies of M so each
// product is driven by the sparse delta (dual_format); M kept as a
// MatrixForest so inserting a small delta does not rebuild M
// (lazy_union); one block matrix per indexed family (indexed_blocks).

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cflr/bool_mat.hpp"
#include "cflr/semiring.hpp"

namespace cflr {

struct VariantFlags {
  bool delta = false;
  bool dual_format = false;
  bool lazy_union = false;
  bool indexed_blocks = false;
  std::uint32_t forest_factor = 10;

  /// Throws Error when dual_format or lazy_union is set without delta, or
  /// the forest factor is not greater than 1.
  void validate() const;

  friend bool operator==(const VariantFlags&, const VariantFlags&) = default;
};

/// Named variants: ma, ma1, ma14, ma1234, ma12345. The last one has the
/// flags of ma1234; it differs only in the grammar it is paired with.
VariantFlags variant_flags(std::string_view name);
const std::vector<std::string>& variant_names();

/// State at the top of one loop iteration, as logical matrices.
struct IterationView {
  std::size_t iteration = 0;
  const NontermMatrix& m_old;
  const NontermMatrix& delta;
  const NontermMatrix& m;  // m_old u delta
};

struct SolveOptions {
  VariantFlags flags;
  std::size_t threads = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Called at the top of every iteration. Materializes the state, so it
  /// is meant for tests on small instances.
  std::function<void(const IterationView&)> observer;
};

struct SolveResult {
  NontermMatrix matrix;
  std::size_t iterations = 0;
  OpCounter counters;
  /// Counter increments of each iteration.
  std::vector<OpCounter> iteration_counters;
};

/// Throws Error for a grammar/graph index mismatch and TimeoutError when
/// the deadline passes.
SolveResult solve(const LabeledGraph& graph, const WcnfGrammar& g, const SolveOptions& options);
SolveResult solve(const LabeledGraph& graph, const WcnfGrammar& g, const VariantFlags& flags);

}  // namespace cflr
