#include "btq/linalg.hpp"

#include <cstdlib>
#include <numeric>
#include <utility>

namespace btq {

std::vector<std::vector<Elt>> nullspace(const Field& F, FqMatrix rows, int ncols) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Elt inv = F.inv(rows[r][c]);
    for (auto& x : rows[r]) x = F.mul(x, inv);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][c] == 0) continue;
      const Elt f = rows[k][c];
      for (int j = 0; j < ncols; ++j) rows[k][j] = F.sub(rows[k][j], F.mul(f, rows[r][j]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(ncols, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<Elt>> basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elt> v(ncols, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = F.neg(rows[k][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::int64_t> smith_invariants(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<std::int64_t> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Move the smallest nonzero entry of the remaining block to (t, t), then
    // clear its row and column; repeat until the pivot divides everything.
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pi == rows || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) pi = i, pj = j;
      if (pi == rows) {
        for (std::size_t k = t; k < std::min(rows, cols); ++k) diag.push_back(0);
        return diag;
      }
      std::swap(m[t], m[pi]);
      for (auto& row : m) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const std::int64_t f = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= f * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const std::int64_t f = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= f * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(std::llabs(m[t][t]));
  }
  return diag;
}

}  // namespace btq
