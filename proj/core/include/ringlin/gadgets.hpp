#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringlin/eqsys.hpp"
#include "ringlin/ring.hpp"

namespace ringlin {

// Linear equation with arbitrarily many terms (Min-3-Lin instances and
// ternarization inputs live here; EquationSystem itself caps at 2 terms).
struct LongEquation {
  std::vector<Term> terms;
  Elem rhs = 0;
  bool soft = true;
  std::string id;
};

struct LongSystem {
  RingPtr ring;
  std::vector<LongEquation> eqs;
  uint64_t k = 0;
  std::vector<std::string> vars() const;  // first-appearance order
};

std::optional<uint64_t> long_cost(const LongSystem& sys, const Assignment& a);

// Brute-force oracle over all assignments (testing aid).
struct LongBrute {
  bool available = false;
  std::optional<uint64_t> cost;
  Assignment assignment;
};
LongBrute long_brute_min(const LongSystem& sys, uint64_t cap = 10000000);

// Rewrites sum a_1*x_1 + ... + a_L*x_L = y into an equisatisfiable chain of
// crisp equations with at most three unit-coefficient terms each, using
// fresh inverse pairs u_l, ubar_l and pinned constant carriers z_0, z_{-y}.
// Every coefficient must be an integer multiple of 1 (it is expanded into
// repeated terms). Fresh variables are prefixed with `prefix`.
std::vector<LongEquation> ternarize(const RingPtr& ring, const LongEquation& eq,
                                    const std::string& prefix);

// Tangle gadget: maps an almost-homogeneous Min-3-Lin instance over the
// residue field R/M (given as Z_p) into Min-2-Lin over the non-Helly local
// ring R with the same parameter. Ternary equations x+y+z=0 become three
// crisp binary equations through a fresh variable v:
//   a*v = (a*t)*y,  b*v = (b*s)*x,  c*v = -(c*t)*z
// where (Ann(a), Ann(b), Ann(c)+d) is a tangle, s in Ann(a) cap (Ann(c)+d),
// t in Ann(b) cap (Ann(c)+d). Throws std::invalid_argument when R is not
// local/non-Helly or the instance is not almost homogeneous.
EquationSystem tangle_gadget(const LongSystem& field_sys, const RingPtr& ring);

// Split Paired Min Cut instance: graph with terminals s,t, a side (1 or 2)
// for every non-terminal vertex and every edge, and disjoint edge pairs,
// each pair taking one edge from either side.
struct CutGraph {
  struct Edge {
    uint32_t u = 0, v = 0;
    int side = 1;
  };
  uint32_t n = 0;  // vertices 0..n-1
  uint32_t s = 0, t = 0;
  std::vector<int> side;  // per vertex: 0 = terminal, else 1 or 2
  std::vector<Edge> edges;
  std::vector<std::pair<uint32_t, uint32_t>> pairs;  // edge indices
  uint64_t k = 0;
  std::vector<std::string> names;  // optional vertex names
};

// Paired-cut gadget over a non-lineal ring: one variable per non-terminal
// vertex, s split into s1/s2 (pinned to a*g and b*f), t into t1/t2 (pinned
// to 0), crisp u=v along unpaired edges, and per pair the five-equation
// gadget with a single soft equation x_p = y_p. Throws
// std::invalid_argument for lineal rings or malformed splits.
EquationSystem paired_cut_gadget(const CutGraph& g, const RingPtr& ring);

// Multicolored Densest Bipartite Subgraph instance: k classes per side,
// classes may have different sizes (padded internally); edges connect
// a_{i,j} to b_{i2,j2} (all indices 0-based).
struct MdbsInstance {
  uint32_t k = 0;
  std::vector<uint32_t> a_sizes, b_sizes;      // per class
  std::vector<std::array<uint32_t, 4>> edges;  // (i, j, i2, j2)
};

// Path-bundle reduction to Split Paired Min Cut: per class a chain of
// vertices from s to t, per vertex and opposite class a path whose edges
// correspond to the vertex's edges into that class (unit-length unpaired
// padding when there are none); pairs join the two preimages of each
// source edge; the new parameter is k^2.
CutGraph split_paired_paths(const MdbsInstance& in);

}  // namespace ringlin
