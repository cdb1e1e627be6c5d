#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <vector>

#include "ringlin/snf.hpp"

namespace ringlin {

using Rat = boost::rational<Int>;

enum class RelOp { LE, GE, EQ, LT, GT };

struct LinCons {
  std::vector<Rat> a;  // coefficient per variable (padded with zeros)
  RelOp op;
  Rat b;
};

// Exact rational feasibility over free variables: returns a point satisfying
// every constraint, with strict inequalities satisfied strictly, or nullopt.
// Two-phase simplex with Bland's rule; strict rows are handled by maximizing
// a shared slack and requiring it to be positive.
std::optional<std::vector<Rat>> lp_feasible_point(
    std::size_t nvars, const std::vector<LinCons>& cons);

}  // namespace ringlin
