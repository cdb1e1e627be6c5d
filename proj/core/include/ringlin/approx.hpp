#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ringlin/classify.hpp"
#include "ringlin/eqsys.hpp"
#include "ringlin/ring.hpp"

namespace ringlin {

// ---------- simple instances ----------

// Every equation is binary homogeneous `u = r*v` (stored as 1*u + (-r)*v = 0)
// or crisp unary `u = r`. Produced by `simplify` below; `eta` holds the
// homogenization offsets on the original variables and `provenance` maps new
// equation ids to the ids they derive from.
struct SimpleInstance {
  EquationSystem sys;
  std::map<std::string, std::string> provenance;
  Assignment eta;
  uint64_t k = 0;  // adjusted budget k_beta
};

// Homogenization by branching: X indexes equations of `sys` (S - X must be
// satisfiable over the ideal), beta assigns values to the variables of X.
// Unary equations outside X are first split into a +/- binary pair; every
// binary equation e of S - X becomes the pair z_e = a*x0, z_e = -b*y0 with
// e's softness; S_beta adds crisp unaries x0 = beta(x) - eta(x). The budget
// becomes k - cost_X(beta) (nullopt when beta violates a crisp X equation).
std::optional<SimpleInstance> simplify(const EquationSystem& sys,
                                       const std::vector<std::size_t>& X,
                                       const Assignment& beta,
                                       const std::vector<Elem>& ideal,
                                       uint64_t k);

// ---------- the class assignment graph ----------

struct ClassAssignmentGraph {
  // vertex 0 = s, 1 = t, then one vertex per (variable, nonzero class)
  std::vector<std::string> var_of;    // per vertex ("" for s, t)
  std::vector<uint32_t> class_of;     // index into the partition's classes
  std::map<std::pair<std::string, uint32_t>, uint32_t> vertex;
  struct GEdge {
    uint32_t a = 0, b = 0;
    bool crisp = false;
    std::string eq_id;
  };
  std::vector<GEdge> edges;
  uint64_t crisp_multiplicity = 1;  // k*|Gamma^{!=0}|+1
  uint32_t s() const { return 0; }
  uint32_t t() const { return 1; }
  std::string vertex_name(uint32_t v) const;
};

// Builds the graph of a simple instance for one matching partition:
// per binary equation u = r*v an edge v_C u_{pi(C)} for every nonzero class
// C with r*C != {0} plus u_D t for classes D without preimage; per crisp
// unary x = 0 edges x_C t; per crisp unary x = b an edge s x_{class(b)}.
ClassAssignmentGraph build_graph(const EquationSystem& simple_sys,
                                 const MatchingPartition& part, uint64_t k);

struct ConformalCut {
  std::vector<uint32_t> edges;      // indices into graph.edges, sorted
  std::vector<char> reachable;      // per vertex, from s in G - Y
  std::map<std::string, uint32_t> tau;  // variable -> class index (0 = {0})
  bool conformal = true;            // at most one class reachable per var
};

// sep(Y): the unique minimal subcut of Y closest to s, together with the
// induced class assignment. Throws std::invalid_argument when Y is not an
// st-cut.
ConformalCut closest_mincut(const ClassAssignmentGraph& g,
                            const std::vector<uint32_t>& y);

// Candidate st-cuts: boundaries of the s-closed vertex sets reachable by
// absorbing cut endpoints one at a time, kept when they consist of at most
// b soft edges (crisp edges are never cut); deterministic order.
std::vector<std::vector<uint32_t>> minimal_cuts(const ClassAssignmentGraph& g,
                                                uint64_t b);

// One random shadow sample: the unreachable side of a uniformly chosen
// budget-bounded minimal cut (empty when none exists). Candidate shadows
// can also be enumerated exhaustively for the deterministic mode.
std::vector<uint32_t> shadow_cover(const ClassAssignmentGraph& g, uint64_t b,
                                   std::mt19937_64& rng);
std::vector<std::vector<uint32_t>> shadow_candidates(
    const ClassAssignmentGraph& g, uint64_t b);

// The branching enumeration of conformal cuts within delta(W): bookkeeping
// over the components of G[W], branching on undecided variables, then on
// which non-self-satisfiable components stay reachable (at most k kept).
std::vector<ConformalCut> enumerate_conformal(const ClassAssignmentGraph& g,
                                              const EquationSystem& simple_sys,
                                              const MatchingPartition& part,
                                              const std::vector<uint32_t>& w,
                                              uint64_t b, uint64_t k);

// ---------- level descent ----------

// Rewrites a simple equation to the next ideal under the class assignment
// tau (class indices into part.classes): unary u = r becomes u' = r - rep;
// binary u = r*v becomes u' = r*v' + (r*rep(tau(v)) - rep(tau(u))).
// rep(C) is the minimal element of the class; primed variables get "'".
Equation nxt(const Ring& ring, const Equation& eq,
             const std::map<std::string, uint32_t>& tau,
             const MatchingPartition& part);

// ---------- the solvers ----------

struct ApproxOptions {
  uint64_t seed = 0;
  uint32_t trials = 8;
  bool exhaustive_cuts = false;  // iterate all shadows and cuts
  // Compression-set size that triggers homogenization branching; defaults
  // to the per-level budget. Lower it to force the full pipeline.
  std::optional<uint64_t> compress_cap;
  std::vector<std::string>* trace = nullptr;  // optional cut/route log
};

struct ApproxResult {
  bool accepted = false;
  Assignment assignment;
  uint64_t measured_cost = 0;
  Int gamma = 1;
  std::vector<uint64_t> class_counts;  // d_i per level
};

// The randomized constant-factor approximation for Bergen rings: per chain
// level homogenize (iterative compression + branching), compute a class
// assignment from a conformal cut, rewrite via nxt and recurse with budget
// d_i * k; at the zero ideal evaluate the all-zero assignment. Acceptance
// implies measured cost <= gamma * k (checked deterministically).
ApproxResult bergen_solve(const EquationSystem& sys, uint64_t k,
                          const BergenWitness& witness,
                          const ApproxOptions& opt = {});

// Direct-sum combiner: projects the instance to each local factor, solves
// factors independently (default: brute force when available, otherwise
// bergen_solve on a discovered witness) and recombines.
using FactorSolver = std::function<std::optional<Assignment>(
    const EquationSystem&, uint64_t)>;
ApproxResult sum_solve(const EquationSystem& sys, uint64_t k,
                       const ApproxOptions& opt = {},
                       const std::vector<FactorSolver>& solvers = {});

}  // namespace ringlin
