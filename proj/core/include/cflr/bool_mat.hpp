#pragma once

// Sparse Boolean matrices in compressed row-major (CSR) or column-major
// (CSC) layout, with a hypersparse variant that stores only nonempty lines.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cflr {

using Index = std::uint64_t;

enum class Layout : unsigned char { kRowMajor, kColMajor };

struct Coord {
  Index row = 0;
  Index col = 0;

  friend auto operator<=>(const Coord&, const Coord&) = default;
  friend bool operator==(const Coord&, const Coord&) = default;
};

/// Deterministic work counters. Every field only grows.
struct OpCounter {
  std::uint64_t spgemm_calls = 0;
  /// (driver entry, matching line entry) pairs visited inside SpGEMM.
  std::uint64_t scalar_ops = 0;
  /// Entries read by element-wise unions.
  std::uint64_t union_entries = 0;
  /// Entries of the driving operand scanned by SpGEMM.
  std::uint64_t driver_entries = 0;

  OpCounter& operator+=(const OpCounter& other) noexcept {
    spgemm_calls += other.spgemm_calls;
    scalar_ops += other.scalar_ops;
    union_entries += other.union_entries;
    driver_entries += other.driver_entries;
    return *this;
  }

  friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

class BoolMat {
 public:
  /// Lines with fewer than 1/kHypersparseRatio of the major dimension
  /// nonempty are stored hypersparse.
  static constexpr Index kHypersparseRatio = 8;

  BoolMat() = default;
  BoolMat(Index rows, Index cols, Layout layout = Layout::kRowMajor);

  /// Builds from arbitrary coordinates; duplicates are dropped. Throws
  /// DimensionError for out-of-range coordinates.
  static BoolMat from_coords(Index rows, Index cols, std::vector<Coord> coords,
                             Layout layout = Layout::kRowMajor);
  static BoolMat identity(Index n, Layout layout = Layout::kRowMajor);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Layout layout() const noexcept { return layout_; }
  std::size_t nnz() const noexcept { return minor_.size(); }
  bool empty() const noexcept { return minor_.empty(); }
  bool hypersparse() const noexcept { return hyper_; }

  /// Rows for row-major storage, columns for column-major.
  Index major_dim() const noexcept { return layout_ == Layout::kRowMajor ? rows_ : cols_; }
  Index minor_dim() const noexcept { return layout_ == Layout::kRowMajor ? cols_ : rows_; }

  /// Sorted minor coordinates of one line (empty span if the line is empty).
  std::span<const Index> line(Index major) const;
  std::size_t nonempty_lines() const noexcept;

  /// Calls f(major, span) for every nonempty line in increasing order.
  template <typename F>
  void for_each_line(F&& f) const {
    if (hyper_) {
      for (std::size_t k = 0; k < line_ids_.size(); ++k)
        f(line_ids_[k], std::span<const Index>(minor_.data() + ptr_[k], ptr_[k + 1] - ptr_[k]));
    } else {
      for (Index m = 0; m + 1 < ptr_.size(); ++m)
        if (ptr_[m + 1] > ptr_[m])
          f(m, std::span<const Index>(minor_.data() + ptr_[m], ptr_[m + 1] - ptr_[m]));
    }
  }

  bool contains(Index row, Index col) const;

  /// All entries sorted by (row, col), independent of layout.
  std::vector<Coord> coords() const;

  /// Sorted `(row, col)` lines, used by golden tests.
  std::string debug_string() const;

  /// Logical equality: same shape and same entries; layout is ignored.
  friend bool operator==(const BoolMat& a, const BoolMat& b);

 private:
  friend class LineBuilder;

  Index rows_ = 0;
  Index cols_ = 0;
  Layout layout_ = Layout::kRowMajor;
  bool hyper_ = true;
  std::vector<Index> line_ids_;     // hypersparse only
  std::vector<std::size_t> ptr_{0};  // line offsets into minor_
  std::vector<Index> minor_;
};

/// Appends lines in strictly increasing major order.
class LineBuilder {
 public:
  LineBuilder(Index rows, Index cols, Layout layout);

  /// `minor` must be sorted and free of duplicates.
  void append_line(Index major, std::span<const Index> minor);
  std::vector<Index>& scratch() noexcept { return scratch_; }

  BoolMat finish() &&;

 private:
  Index rows_, cols_;
  Layout layout_;
  std::vector<Index> line_ids_;
  std::vector<std::size_t> ptr_{0};
  std::vector<Index> minor_;
  std::vector<Index> scratch_;
};

enum class Orientation : unsigned char { kRowByRow, kColumnByColumn };

/// Boolean product a·b. Row-by-row needs both operands row-major and yields
/// a row-major result; column-by-column needs both column-major and yields a
/// column-major result. Work is driven by the left operand's entries
/// (row-by-row) or the right operand's entries (column-by-column).
BoolMat spgemm(const BoolMat& a, const BoolMat& b, Orientation orientation,
               OpCounter* counter = nullptr);

/// Element-wise union; shapes and layouts must match.
BoolMat union_of(const BoolMat& a, const BoolMat& b, OpCounter* counter = nullptr);
/// Entries of a that are absent from b; b may use either layout.
BoolMat difference(const BoolMat& a, const BoolMat& b);
/// Element-wise intersection; b may use either layout.
BoolMat intersection(const BoolMat& a, const BoolMat& b);
/// Same logical matrix in the requested layout.
BoolMat convert(const BoolMat& a, Layout layout);

}  // namespace cflr
