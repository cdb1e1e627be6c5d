#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "ringlin/lp.hpp"
#include "ringlin/ring.hpp"

namespace ringlin {

enum class TriState { Yes, No, Unknown };

// Exponent geometry of a monomial quotient F[x_1..x_n]/I: the zero set Z
// (up-closed modulo exceptional points), the finite nonzero set N, and a
// bounding box B_i = 2*(max exponent of x_i over N) + 2.
struct ExponentModel {
  std::size_t n = 0;
  std::vector<std::string> vars;
  std::vector<Expo> gens;        // minimal generators of Z
  std::vector<Expo> exceptions;  // points excluded from Z despite domination
  std::vector<Expo> nonzero;     // N in graded-lex order
  Expo box;

  bool in_z(const Expo& e) const;
};

// Throws std::invalid_argument on rings that are not monomial quotients.
ExponentModel exponent_model(const Ring& ring);

struct ConditionPWitness {
  Expo p1, p2;  // in Z
  Expo q1, q2;  // in N, with p1+p2 = q1+q2
};
bool condition_p(const ExponentModel& m,
                 std::optional<ConditionPWitness>* counter = nullptr);

bool is_z_hole_free(const ExponentModel& m, std::optional<Expo>* hole = nullptr);
bool is_n_hole_free(const ExponentModel& m, std::optional<Expo>* hole = nullptr);

struct SegmentWitness {
  Expo a, b;  // endpoints in Z
  Expo mid;   // integer point on the segment outside Z
};
bool is_z_1convex(const ExponentModel& m,
                  std::optional<SegmentWitness>* counter = nullptr);

// Separating hyperplane w.x = T with w > 0: w.q < T for q in N (and
// exceptional points), w.g >= T for the generators of Z. Some iff the ring
// is fully convex.
struct Separation {
  std::vector<Rat> w;
  Rat threshold;
};
std::optional<Separation> hyperplane_separation(const ExponentModel& m);

// No-cancellations: pq = 0 implies every monomial product in pq is zero.
// Decided via Z-hole-freeness / Condition P when possible, exhaustively on
// small enumerable rings otherwise; Unknown when out of reach.
struct CancellationWitness {
  Elem p, q;  // pq = 0 with some nonzero monomial product
};
TriState no_cancellations(const Ring& ring,
                          std::optional<CancellationWitness>* w = nullptr);

// Distributivity of the closure of one-element annihilators under + and
// intersection; a diamond witness is a violating triple (as ideals given by
// their canonical generator sets rendered as element/monomial strings).
struct LatticeReport {
  TriState distributive = TriState::Unknown;
  std::size_t family_size = 0;
  std::optional<std::array<std::string, 3>> diamond;  // violating triple
};
LatticeReport annihilator_lattice_report(const Ring& ring,
                                         std::size_t family_cap = 4096);

// Exact membership of q in conv(points) + cone(rays), all over the rationals.
bool in_convex_hull(const std::vector<Expo>& points,
                    const std::vector<Expo>& rays, const Expo& q);

}  // namespace ringlin
