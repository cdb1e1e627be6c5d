#include "ringlin/lp.hpp"

#include <cassert>
#include <cstddef>

namespace ringlin {

namespace {

// Dense simplex tableau for: minimize c.x subject to A.x = b, x >= 0, b >= 0.
// Returns nullopt if unbounded (cannot happen for our phase-1/phase-2 uses
// since the objectives are bounded), otherwise the optimal basic solution.
struct Simplex {
  std::size_t m, n;                    // rows, structural columns
  std::vector<std::vector<Rat>> tab;   // m rows of n coefficients
  std::vector<Rat> rhs;                // length m, kept nonnegative
  std::vector<Rat> cost;               // reduced-cost row, length n
  Rat obj;                             // negated objective value
  std::vector<std::size_t> basis;      // basic column per row

  void pivot(std::size_t r, std::size_t c) {
    Rat p = tab[r][c];
    for (auto& v : tab[r]) v /= p;
    rhs[r] /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      Rat f = tab[i][c];
      if (f == Rat(0)) continue;
      for (std::size_t j = 0; j < n; ++j) tab[i][j] -= f * tab[r][j];
      rhs[i] -= f * rhs[r];
    }
    Rat f = cost[c];
    if (f != Rat(0)) {
      for (std::size_t j = 0; j < n; ++j) cost[j] -= f * tab[r][j];
      obj -= f * rhs[r];
    }
    basis[r] = c;
  }

  // Bland's rule; returns false if optimal, true after one pivot,
  // nullopt-style flag via `unbounded`.
  bool step(bool& unbounded) {
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j)
      if (cost[j] < Rat(0)) {
        enter = j;
        break;
      }
    if (enter == n) return false;
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter] <= Rat(0)) continue;
      Rat ratio = rhs[i] / tab[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) {
      unbounded = true;
      return false;
    }
    pivot(leave, enter);
    return true;
  }

  bool solve() {  // returns false if unbounded
    bool unbounded = false;
    while (step(unbounded)) {
    }
    return !unbounded;
  }
};

}  // namespace

std::optional<std::vector<Rat>> lp_feasible_point(
    std::size_t nvars, const std::vector<LinCons>& cons) {
  bool any_strict = false;
  for (const auto& c : cons)
    if (c.op == RelOp::LT || c.op == RelOp::GT) any_strict = true;

  // Structural columns: x_i = u_i - v_i (u,v >= 0), then delta (if strict),
  // then one slack per inequality row, then one artificial per row.
  std::size_t m = cons.size() + (any_strict ? 1 : 0);  // + row: delta <= 1
  std::size_t base = 2 * nvars + (any_strict ? 1 : 0);
  std::size_t delta_col = 2 * nvars;

  std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(base, Rat(0)));
  std::vector<Rat> rhs(m, Rat(0));
  std::vector<int> slack_sign(m, 0);  // +1: <=, -1: >=, 0: equality

  for (std::size_t i = 0; i < cons.size(); ++i) {
    const auto& c = cons[i];
    for (std::size_t j = 0; j < c.a.size() && j < nvars; ++j) {
      rows[i][2 * j] = c.a[j];
      rows[i][2 * j + 1] = -c.a[j];
    }
    rhs[i] = c.b;
    switch (c.op) {
      case RelOp::LE:
        slack_sign[i] = 1;
        break;
      case RelOp::GE:
        slack_sign[i] = -1;
        break;
      case RelOp::EQ:
        slack_sign[i] = 0;
        break;
      case RelOp::LT:
        rows[i][delta_col] = Rat(1);
        slack_sign[i] = 1;
        break;
      case RelOp::GT:
        rows[i][delta_col] = Rat(-1);
        slack_sign[i] = -1;
        break;
    }
  }
  if (any_strict) {
    std::size_t i = cons.size();
    rows[i][delta_col] = Rat(1);
    rhs[i] = Rat(1);
    slack_sign[i] = 1;
  }

  std::size_t nslack = 0;
  for (int s : slack_sign)
    if (s != 0) ++nslack;

  Simplex sx;
  sx.m = m;
  sx.n = base + nslack + m;  // artificial per row
  sx.tab.assign(m, std::vector<Rat>(sx.n, Rat(0)));
  sx.rhs.assign(m, Rat(0));
  sx.cost.assign(sx.n, Rat(0));
  sx.obj = Rat(0);
  sx.basis.assign(m, 0);

  std::size_t scol = base;
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = rhs[i] < Rat(0);
    for (std::size_t j = 0; j < base; ++j)
      sx.tab[i][j] = flip ? -rows[i][j] : rows[i][j];
    sx.rhs[i] = flip ? -rhs[i] : rhs[i];
    if (slack_sign[i] != 0) {
      Rat s = Rat(slack_sign[i]);
      sx.tab[i][scol] = flip ? -s : s;
      ++scol;
    }
    std::size_t art = base + nslack + i;
    sx.tab[i][art] = Rat(1);
    sx.basis[i] = art;
  }

  // Phase 1: minimize sum of artificials.
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t art = base + nslack + i;
    sx.cost[art] = Rat(1);
  }
  for (std::size_t i = 0; i < m; ++i) {
    // price out the basic artificials
    for (std::size_t j = 0; j < sx.n; ++j) sx.cost[j] -= sx.tab[i][j];
    sx.obj -= sx.rhs[i];
  }
  if (!sx.solve()) return std::nullopt;
  if (sx.obj != Rat(0)) return std::nullopt;  // infeasible (obj = -min sum)

  // Drive any artificials out of the basis; drop the artificial columns.
  for (std::size_t i = 0; i < m; ++i) {
    if (sx.basis[i] < base + nslack) continue;
    std::size_t piv = sx.n;
    for (std::size_t j = 0; j < base + nslack; ++j)
      if (sx.tab[i][j] != Rat(0)) {
        piv = j;
        break;
      }
    if (piv == sx.n) continue;  // redundant row; harmless to leave
    sx.pivot(i, piv);
  }
  std::size_t full = sx.n;
  sx.n = base + nslack;
  for (auto& row : sx.tab) row.resize(sx.n);
  (void)full;

  if (any_strict) {
    // Phase 2: maximize delta (minimize -delta).
    sx.cost.assign(sx.n, Rat(0));
    sx.obj = Rat(0);
    sx.cost[delta_col] = Rat(-1);
    for (std::size_t i = 0; i < m; ++i) {
      if (sx.basis[i] >= base + nslack) continue;
      Rat f = sx.cost[sx.basis[i]];
      if (f == Rat(0)) continue;
      for (std::size_t j = 0; j < sx.n; ++j) sx.cost[j] -= f * sx.tab[i][j];
      sx.obj -= f * sx.rhs[i];
    }
    if (!sx.solve()) return std::nullopt;
    // obj holds -(optimal -delta) = max delta
    if (sx.obj <= Rat(0)) return std::nullopt;
  }

  std::vector<Rat> value(sx.n, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (sx.basis[i] < sx.n) value[sx.basis[i]] = sx.rhs[i];
  std::vector<Rat> x(nvars);
  for (std::size_t j = 0; j < nvars; ++j)
    x[j] = value[2 * j] - value[2 * j + 1];
  return x;
}

}  // namespace ringlin
