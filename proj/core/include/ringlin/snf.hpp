#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

namespace ringlin {

using Int = boost::multiprecision::cpp_int;
using IntMat = std::vector<std::vector<Int>>;  // row-major

// Smith normal form S = U * A * V with U, V unimodular and S diagonal,
// diagonal entries non-negative with s_1 | s_2 | ... | s_rank.
// uinv is U^{-1}, needed to map canonical coordinates back to representatives.
struct SmithForm {
  IntMat s;
  IntMat u, uinv, v, vinv;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(IntMat a);

// One integer solution x of A x = b, if any.
std::optional<std::vector<Int>> solve_diophantine(const IntMat& a,
                                                  const std::vector<Int>& b);

// One solution of the congruence system (A x)_i = b_i (mod m_i), m_i >= 1.
// Solved by introducing a slack variable per row; returns x only.
std::optional<std::vector<Int>> solve_congruences(const IntMat& a,
                                                  const std::vector<Int>& b,
                                                  const std::vector<Int>& mods);

}  // namespace ringlin
