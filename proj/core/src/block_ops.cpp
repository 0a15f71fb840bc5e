#include "cflr/block_ops.hpp"

#include <string>
#include <vector>

#include "cflr/error.hpp"

namespace cflr {

namespace {

template <typename Map>
BoolMat remap(const BoolMat& a, Index rows, Index cols, Map map) {
  std::vector<Coord> out;
  out.reserve(a.nnz());
  for (const auto& c : a.coords()) out.push_back(map(c));
  return BoolMat::from_coords(rows, cols, std::move(out), a.layout());
}

void expect_shape(const BoolMat& a, Index rows, Index cols, const char* op) {
  if (a.rows() != rows || a.cols() != cols)
    throw DimensionError(std::string(op) + ": expected " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ", got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
}

}  // namespace

BoolMat block_offset(const BoolMat& a, Index slot, Index universe_size, BlockSide side) {
  if (a.rows() != a.cols()) throw DimensionError("block_offset: matrix must be square");
  if (slot >= universe_size)
    throw DimensionError("block_offset: slot " + std::to_string(slot) + " outside universe of " +
                         std::to_string(universe_size));
  const Index n = a.rows();
  const Index shift = slot * n;
  if (side == BlockSide::kHorizontal)
    return remap(a, n, universe_size * n, [&](Coord c) { return Coord{c.row, c.col + shift}; });
  return remap(a, universe_size * n, n, [&](Coord c) { return Coord{c.row + shift, c.col}; });
}

BoolMat block_diagonalize(const BoolMat& vertical, Index block_size, Index universe_size) {
  const Index n = block_size;
  expect_shape(vertical, universe_size * n, n, "block_diagonalize");
  return remap(vertical, universe_size * n, universe_size * n, [&](Coord c) {
    const Index t = c.row / n;
    return Coord{c.row, t * n + c.col};
  });
}

BoolMat block_collapse(const BoolMat& horizontal, Index block_size, Index universe_size) {
  const Index n = block_size;
  expect_shape(horizontal, n, universe_size * n, "block_collapse");
  return remap(horizontal, n, n, [&](Coord c) { return Coord{c.row, c.col % n}; });
}

BoolMat vertical_collapse(const BoolMat& vertical, Index block_size, Index universe_size) {
  const Index n = block_size;
  expect_shape(vertical, universe_size * n, n, "vertical_collapse");
  return remap(vertical, n, n, [&](Coord c) { return Coord{c.row % n, c.col}; });
}

BoolMat vertical_to_horizontal(const BoolMat& vertical, Index block_size, Index universe_size) {
  const Index n = block_size;
  expect_shape(vertical, universe_size * n, n, "vertical_to_horizontal");
  return remap(vertical, n, universe_size * n, [&](Coord c) {
    const Index t = c.row / n;
    return Coord{c.row % n, t * n + c.col};
  });
}

BoolMat horizontal_to_vertical(const BoolMat& horizontal, Index block_size, Index universe_size) {
  const Index n = block_size;
  expect_shape(horizontal, n, universe_size * n, "horizontal_to_vertical");
  return remap(horizontal, universe_size * n, n, [&](Coord c) {
    const Index t = c.col / n;
    return Coord{t * n + c.row, c.col % n};
  });
}

BoolMat vertical_broadcast(const BoolMat& a, Index universe_size) {
  if (a.rows() != a.cols()) throw DimensionError("vertical_broadcast: matrix must be square");
  const Index n = a.rows();
  std::vector<Coord> out;
  const auto base = a.coords();
  out.reserve(base.size() * universe_size);
  for (Index t = 0; t < universe_size; ++t)
    for (const auto& c : base) out.push_back({t * n + c.row, c.col});
  return BoolMat::from_coords(universe_size * n, n, std::move(out), a.layout());
}

BoolMat vertical_slice(const BoolMat& vertical, Index slot, Index block_size,
                       Index universe_size) {
  const Index n = block_size;
  expect_shape(vertical, universe_size * n, n, "vertical_slice");
  if (slot >= universe_size) throw DimensionError("vertical_slice: slot out of range");
  std::vector<Coord> out;
  for (const auto& c : vertical.coords())
    if (c.row / n == slot) out.push_back({c.row % n, c.col});
  return BoolMat::from_coords(n, n, std::move(out), vertical.layout());
}

}  // namespace cflr
