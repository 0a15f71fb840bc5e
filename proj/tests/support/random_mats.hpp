#pragma once

#include <random>
#include <vector>

#include "cflr/bool_mat.hpp"

namespace cflr::testing {

using Dense = std::vector<std::vector<bool>>;

inline BoolMat random_mat(std::mt19937_64& rng, Index rows, Index cols, double density,
                          Layout layout = Layout::kRowMajor) {
  std::bernoulli_distribution coin(density);
  std::vector<Coord> coords;
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      if (coin(rng)) coords.push_back({r, c});
  return BoolMat::from_coords(rows, cols, std::move(coords), layout);
}

inline Dense to_dense(const BoolMat& m) {
  Dense d(m.rows(), std::vector<bool>(m.cols(), false));
  for (const auto& c : m.coords()) d[c.row][c.col] = true;
  return d;
}

inline BoolMat from_dense(const Dense& d, Index rows, Index cols) {
  std::vector<Coord> coords;
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      if (d[r][c]) coords.push_back({r, c});
  return BoolMat::from_coords(rows, cols, std::move(coords));
}

inline BoolMat dense_product(const BoolMat& a, const BoolMat& b) {
  const auto da = to_dense(a), db = to_dense(b);
  Dense out(a.rows(), std::vector<bool>(b.cols(), false));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k)
      if (da[i][k])
        for (Index j = 0; j < b.cols(); ++j)
          if (db[k][j]) out[i][j] = true;
  return from_dense(out, a.rows(), b.cols());
}

}  // namespace cflr::testing
