#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringlin/geometry.hpp"
#include "ringlin/ring.hpp"

namespace ringlin {

// ---------- structure: locality, quotients, decomposition ----------

// True iff the non-units are closed under addition; then they form the
// unique maximal ideal (returned sorted when requested).
bool is_local(const Ring& ring, std::vector<Elem>* maximal = nullptr);

// View of R/I for an enumerable ring: cosets indexed 0..k-1 with minimal
// canonical representatives; rep[proj[a]] is the representative of a+I.
struct QuotientRing {
  RingPtr base;
  std::vector<Elem> reps;
  std::vector<uint32_t> proj;  // element -> coset index
  uint32_t size() const { return static_cast<uint32_t>(reps.size()); }
  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t project(Elem a) const { return proj[a]; }
};
QuotientRing quotient_ring(const RingPtr& ring, const std::vector<Elem>& ideal);

// Decomposition into local factors (Peirce decomposition by idempotents
// realized per ring kind: local rings are returned as-is, Z_m splits by the
// Chinese remainder theorem, direct sums decompose factorwise).
struct LocalDecomposition {
  RingPtr ring;
  std::vector<RingPtr> factors;
  std::vector<Elem> project(Elem a) const;      // componentwise image
  Elem lift(const std::vector<Elem>& c) const;  // inverse of project
 private:
  friend LocalDecomposition decompose_local(const RingPtr&);
  // per factor: image of every base element / per-factor section tables
  std::vector<std::vector<Elem>> proj_;
  std::vector<uint64_t> weight_;  // CRT lift data (zmod path); empty for sums
  int kind_ = 0;                  // 0 identity, 1 zmod CRT, 2 sum
};
LocalDecomposition decompose_local(const RingPtr& ring);

// ---------- matching partitions and Bergen witnesses ----------

struct MatchingPartition {
  // classes of an equivalence on an ideal I; each class sorted ascending,
  // classes sorted by their minimal element ({0} first)
  std::vector<std::vector<Elem>> classes;
  std::vector<Elem> domain() const;  // union, sorted
};

// Verifies: domain is an ideal, {0} is a class, every class is a coset of
// an ideal, and both multiplication conditions. On failure `why` carries a
// human-readable reason including a violating triple.
bool matching_check(const Ring& ring, const MatchingPartition& part,
                    std::string* why = nullptr);

struct BergenWitness {
  std::vector<std::vector<Elem>> chain;  // I_0 = R down to {0}, sorted
  std::vector<MatchingPartition> parts;  // one per chain level except last
  Int gamma = 1;                         // product of class counts
};
bool check_bergen_witness(const Ring& ring, const BergenWitness& w,
                          std::string* why = nullptr);

// ---------- the classification predicates ----------

bool is_chain(const Ring& ring, std::pair<Elem, Elem>* counter = nullptr);

// Lineality via pairwise comparability of one-element annihilators. The
// counterexample satisfies a*f = 0, b*f != 0, a*g != 0, b*g = 0.
struct LinealWitness {
  Elem a, b, f, g;
};
bool is_lineal(const Ring& ring, std::optional<LinealWitness>* counter = nullptr);

// Cross-check: no a,b,c,d with ab=0, cd=0, ad!=0, bc!=0 (magic square).
bool magic_square_ok(const Ring& ring,
                     std::optional<std::array<Elem, 4>>* counter = nullptr);

// Tangle (Ann(a), Ann(b), Ann(c)+d): pairwise intersecting, empty triple
// intersection. First witness in canonical (a,b,c,d) order on small rings.
struct Tangle {
  Elem a, b, c, d;
};
bool is_helly(const Ring& ring, std::optional<Tangle>* tangle = nullptr);

// ---------- witness constructions ----------

// Requires is_chain; builds the ideal chain and ord/lsu classes.
BergenWitness chain_witness(const RingPtr& ring);

struct ThresholdLabelling {
  std::vector<Rat> label;  // per element, 0 <= label <= threshold
  Rat threshold;
  bool monomial = false;  // label(r) = min over monomials of r
  bool linear = false;    // label(uv) = label(u)+label(v) when uv != 0
};
std::optional<ThresholdLabelling> threshold_labelling(const Ring& ring);

// Labelling induced by a separating hyperplane (linear monomial labels).
ThresholdLabelling labelling_from_separation(const Ring& ring,
                                             const Separation& sep);

// Chain = sublevel ideals of the labelling, classes = equal-label cosets.
// Throws std::invalid_argument unless the labelling is linear.
BergenWitness threshold_witness(const RingPtr& ring,
                                const ThresholdLabelling& lab);

struct BergenSearchLimits {
  uint64_t size_cap = 32;
  uint64_t node_budget = 2000000;
};
// Exhaustive search over ideal chains and coarsenings of forced matching
// partitions; minimal gamma, ties broken by lexicographically smallest
// chain of ideal bitmasks. nullopt = no witness within limits.
std::optional<BergenWitness> bergen_search(const RingPtr& ring,
                                           BergenSearchLimits limits = {});

// ---------- the combined report ----------

enum class BergenStatus { Found, NoneWithinLimits, RefutedViaLineal };

struct Classification {
  bool chain = false;
  bool local = false;
  TriState lineal = TriState::Unknown;
  TriState helly = TriState::Unknown;
  BergenStatus bergen = BergenStatus::NoneWithinLimits;
  std::optional<Int> gamma;
  std::optional<BergenWitness> witness;  // enumerable rings only
  // witnesses / counterexamples rendered as element literals
  std::vector<std::string> chain_counter;   // two incomparable generators
  std::vector<std::string> lineal_counter;  // a, b, f, g (or exponent data)
  std::vector<std::string> tangle_counter;  // a, b, c, d
  std::string bergen_route;  // "chain" | "threshold" | "search" | "level-map" | ""
};

Classification classify(const RingPtr& ring, BergenSearchLimits limits = {});

}  // namespace ringlin
