#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringlin/eqsys.hpp"
#include "ringlin/ring.hpp"

namespace ringlin {

// The additive group of R as a product of cyclic groups together with
// multiplication-by-a matrices; a thin view over the ring's presentation.
struct AbelianPresentation {
  RingPtr ring;
  std::vector<uint64_t> moduli;  // cyclic moduli d_1..d_t
  std::size_t dim() const { return moduli.size(); }
  std::vector<Int> coords(Elem a) const;
  Elem decode(const std::vector<Int>& c) const;
  IntMat mult(Elem a) const;  // column j = coords(a * basis_j)
};
AbelianPresentation abelian_presentation(const RingPtr& ring);

// Exact feasibility of the system with every equation treated as crisp and
// all coset restrictions plus the domain ideal enforced. Encodes equations
// as integer congruences over the cyclic coordinates (coset membership via
// slack columns over the ideal's additive generators) and solves by Smith
// normal form. Infeasible is a normal nullopt outcome.
std::optional<Assignment> feasible(const EquationSystem& sys);

// Feasibility of the sub-instance induced on `component` with the unary
// coset constraint tau(x) (a class of the current matching partition,
// i.e. a coset) added per variable.
bool self_satisfiable(const EquationSystem& sys,
                      const std::vector<std::string>& component,
                      const std::map<std::string, std::vector<Elem>>& tau);

// Brute-force MinLin oracle.
struct BruteResult {
  bool available = false;            // caps respected
  std::optional<uint64_t> cost;      // nullopt = infeasible even with all
                                     // soft equations deleted
  Assignment assignment;             // witness when cost has a value
  std::vector<std::string> deleted;  // ids of violated soft equations
};
inline constexpr uint64_t kAssignmentCap = 10000000;  // candidate assignments
inline constexpr uint64_t kSubsetCap = 1000000;       // deletion subsets
BruteResult brute_min(const EquationSystem& sys);

}  // namespace ringlin
