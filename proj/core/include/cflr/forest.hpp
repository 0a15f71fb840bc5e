#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cflr/bool_mat.hpp"

namespace cflr {

/// A matrix kept as a set of matrices whose union is the logical value.
/// Element sizes stay geometrically separated: for distinct elements A, B
/// with nnz(A) <= nnz(B), growth_factor * nnz(A) < nnz(B). Small inserts
/// therefore touch only small elements; large ones are rebuilt rarely.
class MatrixForest {
 public:
  MatrixForest(Index rows, Index cols, Layout layout = Layout::kRowMajor,
               std::uint32_t growth_factor = 10);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Layout layout() const noexcept { return layout_; }
  std::uint32_t growth_factor() const noexcept { return b_; }

  /// Elements in ascending nnz order.
  std::span<const BoolMat> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }

  /// Adds `d` as an element, then merges the smallest violating pair until
  /// the size invariant holds. Empty matrices are not stored.
  void insert(BoolMat d, OpCounter* counter = nullptr);

  /// Union of all elements.
  BoolMat materialize() const;
  /// Sum of element sizes (an upper bound on the logical nnz).
  std::size_t stored_nnz() const noexcept;
  bool invariant_holds() const noexcept;

 private:
  Index rows_, cols_;
  Layout layout_;
  std::uint32_t b_;
  std::vector<BoolMat> elements_;
};

MatrixForest forest_insert(MatrixForest f, BoolMat d, OpCounter* counter = nullptr);

/// d minus the forest's logical value, subtracting the largest element first.
BoolMat forest_difference(const BoolMat& d, const MatrixForest& f);

enum class DeltaSide : unsigned char {
  kDeltaLeft,   // d · M
  kDeltaRight,  // M · d
};

/// Product of a sparse delta with the union of `elements`, one SpGEMM per
/// element. With `dual_format`, delta-right runs column-by-column (elements
/// and d column-major) and delta-left row-by-row (row-major); otherwise all
/// operands are row-major and both sides run row-by-row. The result is
/// row-major. `m_rows` x `m_cols` is the shape of the elements.
BoolMat multiply_with_forest(const BoolMat& d, std::span<const BoolMat> elements, Index m_rows,
                             Index m_cols, DeltaSide side, bool dual_format,
                             OpCounter* counter = nullptr);
BoolMat multiply_with_forest(const BoolMat& d, const MatrixForest& f, DeltaSide side,
                             bool dual_format, OpCounter* counter = nullptr);

}  // namespace cflr
