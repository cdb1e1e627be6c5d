#include "ringlin/snf.hpp"

#include <cstdlib>
#include <stdexcept>

namespace ringlin {

namespace {

IntMat identity(std::size_t n) {
  IntMat m(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

SmithForm smith_normal_form(IntMat a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  SmithForm f;
  f.u = identity(rows);
  f.uinv = identity(rows);
  f.v = identity(cols);
  f.vinv = identity(cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    std::swap(f.u[i], f.u[j]);
    // inverse of a swap is the same swap, applied to columns of uinv
    for (std::size_t r = 0; r < rows; ++r) std::swap(f.uinv[r][i], f.uinv[r][j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.size(); ++r) std::swap(a[r][i], a[r][j]);
    // v accumulates right-multiplications, so swap v's columns;
    // the inverse swap acts on vinv's rows
    for (std::size_t r = 0; r < f.v.size(); ++r) std::swap(f.v[r][i], f.v[r][j]);
    std::swap(f.vinv[i], f.vinv[j]);
  };
  // row_j += c * row_i
  auto add_row = [&](std::size_t j, std::size_t i, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < cols; ++k) a[j][k] += c * a[i][k];
    for (std::size_t k = 0; k < rows; ++k) f.u[j][k] += c * f.u[i][k];
    // inverse op: col_i -= c * col_j in uinv
    for (std::size_t r = 0; r < rows; ++r) f.uinv[r][i] -= c * f.uinv[r][j];
  };
  // col_j += c * col_i
  auto add_col = [&](std::size_t j, std::size_t i, const Int& c) {
    if (c == 0) return;
    for (std::size_t r = 0; r < rows; ++r) a[r][j] += c * a[r][i];
    for (std::size_t r = 0; r < cols; ++r) f.v[r][j] += c * f.v[r][i];
    // inverse op on vinv: row_i -= c * row_j
    for (std::size_t r = 0; r < cols; ++r) f.vinv[i][r] -= c * f.vinv[j][r];
  };
  auto negate_row = [&](std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : f.u[i]) x = -x;
    for (std::size_t r = 0; r < rows; ++r) f.uinv[r][i] = -f.uinv[r][i];
  };

  std::size_t t = 0;
  const std::size_t dim = std::min(rows, cols);
  while (t < dim) {
    // find a pivot: nonzero entry of smallest absolute value in the remaining block
    std::size_t pi = t, pj = t;
    bool found = false;
    Int best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (!found || abs(a[i][j]) < best)) {
          best = abs(a[i][j]);
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    if (a[t][t] < 0) negate_row(t);

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (a[i][t] == 0) continue;
      Int q = a[i][t] / a[t][t];
      add_row(i, t, -q);
      if (a[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (a[t][j] == 0) continue;
      Int q = a[t][j] / a[t][t];
      add_col(j, t, -q);
      if (a[t][j] != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared; repeat with new pivot

    // enforce divisibility: a[t][t] must divide the rest of the block
    bool fixed = false;
    for (std::size_t i = t + 1; i < rows && !fixed; ++i)
      for (std::size_t j = t + 1; j < cols && !fixed; ++j)
        if (a[i][j] % a[t][t] != 0) {
          add_row(t, i, 1);  // pulls row i into row t; next pass reduces
          fixed = true;
        }
    if (fixed) continue;
    ++t;
  }
  f.rank = t;
  f.s = std::move(a);
  return f;
}

std::optional<std::vector<Int>> solve_diophantine(const IntMat& a,
                                                  const std::vector<Int>& b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  SmithForm f = smith_normal_form(a);
  // c = U b; need S t = c
  std::vector<Int> c(rows, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) c[i] += f.u[i][j] * b[j];
  std::vector<Int> t(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < f.rank && i < cols && f.s[i][i] != 0) {
      if (c[i] % f.s[i][i] != 0) return std::nullopt;
      t[i] = c[i] / f.s[i][i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) x[i] += f.v[i][j] * t[j];
  return x;
}

std::optional<std::vector<Int>> solve_congruences(const IntMat& a,
                                                  const std::vector<Int>& b,
                                                  const std::vector<Int>& mods) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  IntMat ext(rows, std::vector<Int>(cols + rows, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) ext[i][j] = a[i][j];
    ext[i][cols + i] = mods[i];
  }
  auto sol = solve_diophantine(ext, b);
  if (!sol) return std::nullopt;
  sol->resize(cols);
  return sol;
}

}  // namespace ringlin
