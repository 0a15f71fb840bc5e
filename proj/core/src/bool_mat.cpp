#include "cflr/bool_mat.hpp"

#include <algorithm>
#include <sstream>

#include "cflr/error.hpp"

namespace cflr {

namespace {

// Dense accumulators are used when a result line can hold at most this
// many coordinates; wider lines fall back to sort-and-deduplicate.
constexpr Index kDenseAccumulatorLimit = Index{1} << 16;

struct Marker {
  std::vector<std::uint32_t> stamps;
  std::uint32_t current = 0;

  void prepare(Index width) {
    if (stamps.size() < width) stamps.assign(width, 0), current = 0;
    if (++current == 0) {
      std::fill(stamps.begin(), stamps.end(), 0);
      current = 1;
    }
  }
  void next_line() {
    if (++current == 0) {
      std::fill(stamps.begin(), stamps.end(), 0);
      current = 1;
    }
  }
  bool mark(Index j) {
    if (stamps[j] == current) return false;
    stamps[j] = current;
    return true;
  }
};

Coord oriented(Layout layout, Index major, Index minor) {
  return layout == Layout::kRowMajor ? Coord{major, minor} : Coord{minor, major};
}

}  // namespace

BoolMat::BoolMat(Index rows, Index cols, Layout layout)
    : rows_(rows), cols_(cols), layout_(layout) {
  if (major_dim() == 0) hyper_ = false;
}

BoolMat BoolMat::from_coords(Index rows, Index cols, std::vector<Coord> coords, Layout layout) {
  for (const auto& c : coords)
    if (c.row >= rows || c.col >= cols)
      throw DimensionError("coordinate (" + std::to_string(c.row) + ", " + std::to_string(c.col) +
                           ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
  if (layout == Layout::kColMajor)
    for (auto& c : coords) std::swap(c.row, c.col);
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());

  LineBuilder builder(rows, cols, layout);
  auto& line = builder.scratch();
  std::size_t i = 0;
  while (i < coords.size()) {
    const Index major = coords[i].row;
    line.clear();
    while (i < coords.size() && coords[i].row == major) line.push_back(coords[i++].col);
    builder.append_line(major, line);
  }
  return std::move(builder).finish();
}

BoolMat BoolMat::identity(Index n, Layout layout) {
  LineBuilder builder(n, n, layout);
  for (Index i = 0; i < n; ++i) {
    const Index one[] = {i};
    builder.append_line(i, one);
  }
  return std::move(builder).finish();
}

std::span<const Index> BoolMat::line(Index major) const {
  if (hyper_) {
    const auto it = std::lower_bound(line_ids_.begin(), line_ids_.end(), major);
    if (it == line_ids_.end() || *it != major) return {};
    const auto k = static_cast<std::size_t>(it - line_ids_.begin());
    return {minor_.data() + ptr_[k], ptr_[k + 1] - ptr_[k]};
  }
  if (major >= major_dim()) return {};
  return {minor_.data() + ptr_[major], ptr_[major + 1] - ptr_[major]};
}

std::size_t BoolMat::nonempty_lines() const noexcept {
  if (hyper_) return line_ids_.size();
  std::size_t n = 0;
  for (std::size_t m = 0; m + 1 < ptr_.size(); ++m) n += ptr_[m + 1] > ptr_[m];
  return n;
}

bool BoolMat::contains(Index row, Index col) const {
  const auto [major, minor] = layout_ == Layout::kRowMajor ? std::pair{row, col} : std::pair{col, row};
  const auto l = line(major);
  return std::binary_search(l.begin(), l.end(), minor);
}

std::vector<Coord> BoolMat::coords() const {
  std::vector<Coord> out;
  out.reserve(nnz());
  for_each_line([&](Index major, std::span<const Index> l) {
    for (Index minor : l) out.push_back(oriented(layout_, major, minor));
  });
  if (layout_ == Layout::kColMajor) std::sort(out.begin(), out.end());
  return out;
}

std::string BoolMat::debug_string() const {
  std::ostringstream out;
  for (const auto& c : coords()) out << '(' << c.row << ", " << c.col << ")\n";
  return out.str();
}

bool operator==(const BoolMat& a, const BoolMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.nnz() != b.nnz()) return false;
  if (a.layout_ != b.layout_) return a.coords() == b.coords();
  bool equal = true;
  a.for_each_line([&](Index major, std::span<const Index> l) {
    if (!equal) return;
    const auto other = b.line(major);
    equal = std::equal(l.begin(), l.end(), other.begin(), other.end());
  });
  return equal;
}

// ---------------------------------------------------------------------------

LineBuilder::LineBuilder(Index rows, Index cols, Layout layout)
    : rows_(rows), cols_(cols), layout_(layout) {}

void LineBuilder::append_line(Index major, std::span<const Index> minor) {
  if (minor.empty()) return;
  minor_.insert(minor_.end(), minor.begin(), minor.end());
  line_ids_.push_back(major);
  ptr_.push_back(minor_.size());
}

BoolMat LineBuilder::finish() && {
  BoolMat m(rows_, cols_, layout_);
  const Index major_dim = m.major_dim();
  m.minor_ = std::move(minor_);
  if (static_cast<Index>(line_ids_.size()) * BoolMat::kHypersparseRatio < major_dim) {
    m.hyper_ = true;
    m.line_ids_ = std::move(line_ids_);
    m.ptr_ = std::move(ptr_);
  } else {
    m.hyper_ = false;
    std::vector<std::size_t> dense(major_dim + 1, 0);
    std::size_t k = 0;
    for (Index major = 0; major < major_dim; ++major) {
      dense[major] = ptr_[k];
      if (k < line_ids_.size() && line_ids_[k] == major) ++k;
    }
    dense[major_dim] = ptr_[k];
    m.ptr_ = std::move(dense);
  }
  return m;
}

// ---------------------------------------------------------------------------

namespace {

// Shared kernel: for every nonempty line of `driver`, the result line is the
// union of the `other` lines named by the driver line's coordinates.
BoolMat multiply_lines(const BoolMat& driver, const BoolMat& other, Index rows, Index cols,
                       Layout layout, OpCounter* counter) {
  thread_local Marker marker;
  const Index width = other.minor_dim();
  const bool dense = width <= kDenseAccumulatorLimit;
  if (dense) marker.prepare(width);

  LineBuilder builder(rows, cols, layout);
  auto& acc = builder.scratch();
  std::uint64_t ops = 0;
  std::uint64_t driven = 0;
  driver.for_each_line([&](Index major, std::span<const Index> d) {
    acc.clear();
    driven += d.size();
    if (dense) marker.next_line();
    for (Index k : d) {
      const auto l = other.line(k);
      ops += l.size();
      if (dense) {
        for (Index j : l)
          if (marker.mark(j)) acc.push_back(j);
      } else {
        acc.insert(acc.end(), l.begin(), l.end());
      }
    }
    if (acc.empty()) return;
    std::sort(acc.begin(), acc.end());
    if (!dense) acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    builder.append_line(major, acc);
  });
  if (counter) {
    counter->spgemm_calls += 1;
    counter->scalar_ops += ops;
    counter->driver_entries += driven;
  }
  return std::move(builder).finish();
}

void require_same_shape(const BoolMat& a, const BoolMat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
}

template <typename Combine>
BoolMat merge_lines(const BoolMat& a, const BoolMat& b, bool keep_b_only, Combine combine) {
  LineBuilder builder(a.rows(), a.cols(), a.layout());
  auto& out = builder.scratch();
  std::vector<std::pair<Index, std::span<const Index>>> lb;
  if (keep_b_only) {
    lb.reserve(b.nonempty_lines());
    b.for_each_line([&](Index m, std::span<const Index> l) { lb.emplace_back(m, l); });
  }
  std::size_t k = 0;
  a.for_each_line([&](Index m, std::span<const Index> la) {
    while (k < lb.size() && lb[k].first < m) {
      builder.append_line(lb[k].first, lb[k].second);
      ++k;
    }
    std::span<const Index> other;
    if (keep_b_only) {
      if (k < lb.size() && lb[k].first == m) other = lb[k++].second;
    } else {
      other = b.line(m);
    }
    out.clear();
    combine(la, other, out);
    builder.append_line(m, out);
  });
  for (; k < lb.size(); ++k) builder.append_line(lb[k].first, lb[k].second);
  return std::move(builder).finish();
}

}  // namespace

BoolMat spgemm(const BoolMat& a, const BoolMat& b, Orientation orientation, OpCounter* counter) {
  if (a.cols() != b.rows())
    throw DimensionError("spgemm: inner dimensions differ (" + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " times " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
  if (orientation == Orientation::kRowByRow) {
    if (a.layout() != Layout::kRowMajor || b.layout() != Layout::kRowMajor)
      throw DimensionError("spgemm: row-by-row needs row-major operands");
    return multiply_lines(a, b, a.rows(), b.cols(), Layout::kRowMajor, counter);
  }
  if (a.layout() != Layout::kColMajor || b.layout() != Layout::kColMajor)
    throw DimensionError("spgemm: column-by-column needs column-major operands");
  return multiply_lines(b, a, a.rows(), b.cols(), Layout::kColMajor, counter);
}

BoolMat union_of(const BoolMat& a, const BoolMat& b, OpCounter* counter) {
  require_same_shape(a, b, "union");
  if (a.layout() != b.layout()) throw DimensionError("union: layout mismatch");
  if (counter) counter->union_entries += a.nnz() + b.nnz();
  if (b.empty()) return a;
  if (a.empty()) return b;
  return merge_lines(a, b, true,
                     [](std::span<const Index> x, std::span<const Index> y, std::vector<Index>& out) {
                       std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
                     });
}

BoolMat difference(const BoolMat& a, const BoolMat& b) {
  require_same_shape(a, b, "difference");
  if (a.empty() || b.empty()) return a;
  if (a.layout() == b.layout()) {
    return merge_lines(a, b, false,
                       [](std::span<const Index> x, std::span<const Index> y, std::vector<Index>& out) {
                         std::set_difference(x.begin(), x.end(), y.begin(), y.end(),
                                             std::back_inserter(out));
                       });
  }
  LineBuilder builder(a.rows(), a.cols(), a.layout());
  auto& out = builder.scratch();
  const bool row_major = a.layout() == Layout::kRowMajor;
  a.for_each_line([&](Index m, std::span<const Index> l) {
    out.clear();
    for (Index j : l)
      if (!(row_major ? b.contains(m, j) : b.contains(j, m))) out.push_back(j);
    builder.append_line(m, out);
  });
  return std::move(builder).finish();
}

BoolMat intersection(const BoolMat& a, const BoolMat& b) {
  require_same_shape(a, b, "intersection");
  LineBuilder builder(a.rows(), a.cols(), a.layout());
  auto& out = builder.scratch();
  const bool row_major = a.layout() == Layout::kRowMajor;
  a.for_each_line([&](Index m, std::span<const Index> l) {
    out.clear();
    for (Index j : l)
      if (row_major ? b.contains(m, j) : b.contains(j, m)) out.push_back(j);
    builder.append_line(m, out);
  });
  return std::move(builder).finish();
}

BoolMat convert(const BoolMat& a, Layout layout) {
  if (a.layout() == layout) return a;
  // Bucket by the new major coordinate; each bucket fills in increasing
  // old-major order, so lines come out sorted.
  std::vector<std::pair<Index, Index>> entries;  // (new major, new minor)
  entries.reserve(a.nnz());
  a.for_each_line([&](Index m, std::span<const Index> l) {
    for (Index j : l) entries.emplace_back(j, m);
  });
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  LineBuilder builder(a.rows(), a.cols(), layout);
  auto& line = builder.scratch();
  std::size_t i = 0;
  while (i < entries.size()) {
    const Index major = entries[i].first;
    line.clear();
    while (i < entries.size() && entries[i].first == major) line.push_back(entries[i++].second);
    builder.append_line(major, line);
  }
  return std::move(builder).finish();
}

}  // namespace cflr
