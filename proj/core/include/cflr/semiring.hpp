#pragma once

// The reachability semiring over sets of non-terminals, and its matrix
// form stored as one Boolean matrix per non-terminal (or per indexed
// family, as a block matrix).
//
// A MatrixPlan fixes, for a grammar and a graph size, how every
// non-terminal is stored ("units") and which Boolean products make up one
// semiring matrix multiplication ("product steps").

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cflr/bool_mat.hpp"
#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"
#include "cflr/reach_triple.hpp"

namespace cflr {

class ThreadPool;

/// An element of the semiring domain: a set of concrete non-terminals.
struct NontermSet {
  std::set<Symbol> members;

  friend bool operator==(const NontermSet&, const NontermSet&) = default;
};

NontermSet set_union(const NontermSet& a, const NontermSet& b);

/// { c | (x, y) in a x b, c -> x y }. Indexed rules bind their index
/// variable to the operands' tags; a rule whose result is indexed while
/// both operands are plain yields c for every tag in `universe`.
NontermSet scalar_mul(const NontermSet& a, const NontermSet& b, const WcnfGrammar& g,
                      std::span<const std::string> universe = {});

/// Which of lhs, left, right carry the index in a binary rule.
enum class RuleShape : unsigned char {
  kPlain,           // c -> a b
  kOperandsIndexed, // c -> a_i b_i
  kRightIndexed,    // c_i -> a b_i
  kLeftIndexed,     // c_i -> a_i b
  kAllIndexed,      // c_i -> a_i b_i
  kCollapseLeft,    // c -> a_i b
  kCollapseRight,   // c -> a b_i
  kBroadcast,       // c_i -> a b
};

RuleShape classify(const BinaryRule& rule);

/// Derived operand forms of a stored unit.
enum class OperandView : unsigned char {
  kPlain,          // as stored
  kHorizontal,     // vertical block re-laid as horizontal
  kCollapsed,      // union of the slots of a vertical block
  kBlockDiagonal,  // vertical block spread onto the diagonal
};

/// How a product lands in its target unit.
enum class Emission : unsigned char {
  kDirect,
  kHorizontalToVertical,
  kBroadcast,
};

struct StorageUnit {
  std::size_t family = 0;
  std::optional<std::uint32_t> slot;  // per-index storage
  bool block = false;                 // vertical block over all slots
  Index rows = 0;
  Index cols = 0;
};

struct ProductStep {
  std::size_t rule = 0;  // index into WcnfGrammar::binary_rules
  std::size_t target = 0;
  std::size_t left = 0;
  std::size_t right = 0;
  OperandView left_view = OperandView::kPlain;
  OperandView right_view = OperandView::kPlain;
  Emission emission = Emission::kDirect;
};

class MatrixPlan {
 public:
  /// With `indexed_blocks`, an indexed family is one vertical block and
  /// each indexed rule is one product; otherwise each index value gets its
  /// own unit and product.
  MatrixPlan(const WcnfGrammar& g, std::size_t vertex_count, std::vector<std::string> universe,
             bool indexed_blocks);

  const WcnfGrammar& grammar() const noexcept { return grammar_; }
  Index vertex_count() const noexcept { return n_; }
  Index universe_size() const noexcept { return universe_.size(); }
  const std::vector<std::string>& universe() const noexcept { return universe_; }
  bool indexed_blocks() const noexcept { return blocks_; }

  /// Non-terminal families, each with the grammar's index variable if indexed.
  const std::vector<Symbol>& families() const noexcept { return families_; }
  std::optional<std::size_t> family_of(std::string_view base) const;

  const std::vector<StorageUnit>& units() const noexcept { return units_; }
  const std::vector<ProductStep>& products() const noexcept { return products_; }
  /// Units of a family (one, or one per slot).
  std::span<const std::size_t> units_of(std::size_t family) const;
  /// Unit holding a family's slot (the block unit when blocks are on).
  std::size_t unit_for(std::size_t family, std::optional<std::uint32_t> slot) const;

  /// Units used as left / right operands of some product.
  bool in_left_slot(std::size_t unit) const { return left_slot_.at(unit); }
  bool in_right_slot(std::size_t unit) const { return right_slot_.at(unit); }

  BoolMat apply_view(const BoolMat& unit_matrix, OperandView view) const;
  BoolMat emit(const ProductStep& step, const BoolMat& product) const;

  /// Concrete symbol for an entry of a unit (the family symbol with the
  /// slot's tag, if indexed) and the |V| x |V| coordinates of the entry.
  ReachTriple decode(std::size_t unit, Coord c) const;

 private:
  WcnfGrammar grammar_;
  Index n_;
  std::vector<std::string> universe_;
  bool blocks_;
  std::vector<Symbol> families_;
  std::map<std::string, std::size_t, std::less<>> family_index_;
  std::vector<std::vector<std::size_t>> family_units_;
  std::vector<StorageUnit> units_;
  std::vector<ProductStep> products_;
  std::vector<bool> left_slot_;
  std::vector<bool> right_slot_;
};

/// A |V| x |V| matrix over the semiring, stored unit by unit (row-major).
class NontermMatrix {
 public:
  explicit NontermMatrix(std::shared_ptr<const MatrixPlan> plan);

  const MatrixPlan& plan() const noexcept { return *plan_; }
  std::shared_ptr<const MatrixPlan> plan_ptr() const noexcept { return plan_; }

  std::size_t unit_count() const noexcept { return units_.size(); }
  const BoolMat& unit(std::size_t u) const { return units_.at(u); }
  BoolMat& unit(std::size_t u) { return units_.at(u); }

  /// Pairs derivable from a plain non-terminal, or from any member of an
  /// indexed family. Throws Error for an unknown name.
  BoolMat pairs(std::string_view base) const;
  /// Number of (pair, index tag) facts of a family.
  std::size_t fact_count(std::string_view base) const;
  std::size_t total_nnz() const;

  /// Every fact, sorted.
  std::vector<ReachTriple> triples() const;
  /// The set of non-terminals in one cell.
  NontermSet cell(Index row, Index col) const;

  /// Logical equality; plans may differ in storage choices.
  friend bool operator==(const NontermMatrix& a, const NontermMatrix& b) {
    return a.triples() == b.triples();
  }

 private:
  std::shared_ptr<const MatrixPlan> plan_;
  std::vector<BoolMat> units_;
};

/// Entries from graph edges (terminal rules) and full diagonals (epsilon
/// rules). Throws Error if graph labels disagree with the grammar's indexed
/// terminals.
NontermMatrix initial_matrix(const LabeledGraph& graph, std::shared_ptr<const MatrixPlan> plan);

/// Semiring product: for every product step, one Boolean SpGEMM whose
/// result is united into its target. Steps run on `pool` if given; results
/// are reduced in step order.
NontermMatrix semiring_matmul(const NontermMatrix& left, const NontermMatrix& right,
                              OpCounter* counter = nullptr, ThreadPool* pool = nullptr);

NontermMatrix elementwise_union(const NontermMatrix& a, const NontermMatrix& b);
NontermMatrix elementwise_difference(const NontermMatrix& a, const NontermMatrix& b);

}  // namespace cflr
