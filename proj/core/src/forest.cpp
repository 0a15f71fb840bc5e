#include "cflr/forest.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "cflr/error.hpp"

namespace cflr {

MatrixForest::MatrixForest(Index rows, Index cols, Layout layout, std::uint32_t growth_factor)
    : rows_(rows), cols_(cols), layout_(layout), b_(growth_factor) {
  if (growth_factor < 2) throw Error("forest growth factor must be greater than 1");
}

namespace {

bool violates(std::size_t smaller, std::size_t larger, std::uint32_t b) {
  return static_cast<std::uint64_t>(b) * smaller >= larger;
}

}  // namespace

void MatrixForest::insert(BoolMat d, OpCounter* counter) {
  if (d.rows() != rows_ || d.cols() != cols_)
    throw DimensionError("forest_insert: shape mismatch");
  if (d.empty()) return;
  if (d.layout() != layout_) d = convert(d, layout_);

  auto by_size = [](const BoolMat& x, const BoolMat& y) { return x.nnz() < y.nnz(); };
  elements_.insert(std::upper_bound(elements_.begin(), elements_.end(), d, by_size), std::move(d));

  // In ascending order, a violating pair exists iff an adjacent one does;
  // the first adjacent one is the smallest.
  while (true) {
    std::size_t i = 0;
    while (i + 1 < elements_.size() &&
           !violates(elements_[i].nnz(), elements_[i + 1].nnz(), b_))
      ++i;
    if (i + 1 >= elements_.size()) break;
    BoolMat merged = union_of(elements_[i], elements_[i + 1], counter);
    elements_.erase(elements_.begin() + static_cast<std::ptrdiff_t>(i),
                    elements_.begin() + static_cast<std::ptrdiff_t>(i + 2));
    elements_.insert(std::upper_bound(elements_.begin(), elements_.end(), merged, by_size),
                     std::move(merged));
  }
}

BoolMat MatrixForest::materialize() const {
  BoolMat out(rows_, cols_, layout_);
  for (const auto& e : elements_) out = union_of(out, e);
  return out;
}

std::size_t MatrixForest::stored_nnz() const noexcept {
  return std::accumulate(elements_.begin(), elements_.end(), std::size_t{0},
                         [](std::size_t acc, const BoolMat& e) { return acc + e.nnz(); });
}

bool MatrixForest::invariant_holds() const noexcept {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (std::size_t j = 0; j < elements_.size(); ++j) {
      const auto a = elements_[i].nnz(), b = elements_[j].nnz();
      if (a < b && static_cast<std::uint64_t>(b_) * a >= b) return false;
    }
  return true;
}

MatrixForest forest_insert(MatrixForest f, BoolMat d, OpCounter* counter) {
  f.insert(std::move(d), counter);
  return f;
}

BoolMat forest_difference(const BoolMat& d, const MatrixForest& f) {
  if (d.rows() != f.rows() || d.cols() != f.cols())
    throw DimensionError("forest_difference: shape mismatch");
  BoolMat out = d;
  const auto elems = f.elements();
  for (auto it = elems.rbegin(); it != elems.rend() && !out.empty(); ++it)
    out = difference(out, *it);
  return out;
}

BoolMat multiply_with_forest(const BoolMat& d, std::span<const BoolMat> elements, Index m_rows,
                             Index m_cols, DeltaSide side, bool dual_format, OpCounter* counter) {
  const bool left = side == DeltaSide::kDeltaLeft;
  if (left ? d.cols() != m_rows : m_cols != d.rows())
    throw DimensionError("multiply_with_forest: shape mismatch");
  const Index rows = left ? d.rows() : m_rows;
  const Index cols = left ? m_cols : d.cols();
  BoolMat out(rows, cols, Layout::kRowMajor);
  const bool column_by_column = dual_format && side == DeltaSide::kDeltaRight;
  const auto orientation = column_by_column ? Orientation::kColumnByColumn : Orientation::kRowByRow;
  const Layout want = column_by_column ? Layout::kColMajor : Layout::kRowMajor;
  const BoolMat dd = d.layout() == want ? d : convert(d, want);
  for (const auto& e : elements) {
    if (e.layout() != want)
      throw DimensionError("multiply_with_forest: element layout does not match orientation");
    BoolMat part = left ? spgemm(dd, e, orientation, counter) : spgemm(e, dd, orientation, counter);
    if (column_by_column) part = convert(part, Layout::kRowMajor);
    out = out.empty() ? std::move(part) : union_of(out, part, counter);
  }
  return out;
}

BoolMat multiply_with_forest(const BoolMat& d, const MatrixForest& f, DeltaSide side,
                             bool dual_format, OpCounter* counter) {
  return multiply_with_forest(d, f.elements(), f.rows(), f.cols(), side, dual_format, counter);
}

}  // namespace cflr
