#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringlin/ring.hpp"

namespace ringlin {

// A weak monomial order on a monomial quotient: an ordered partition of the
// nonzero monomials into levels 0..L-1 (level 0 = {1}; zero sits at level L)
// such that the level of a product depends only on the levels of its factors
// and multiplication never lowers levels.
struct WeakMonomialOrder {
  std::vector<std::vector<uint32_t>> levels;  // monomial indices per level
  std::vector<uint32_t> level_of;             // per monomial index
  // g[i][j] = level of any product of a level-i and level-j monomial;
  // UINT32_MAX where no such product exists. Row/column L encodes zero.
  std::vector<std::vector<uint32_t>> g;
  uint32_t zero_level() const { return static_cast<uint32_t>(levels.size()); }
};

// Builds the order from per-level exponent lists and verifies both defining
// conditions; nullopt (with a reason) on any violation.
std::optional<WeakMonomialOrder> make_weak_order(
    const MonomialBasis& basis,
    const std::vector<std::vector<Expo>>& level_exponents,
    std::string* why = nullptr);

// Equivalence classes within one level, described as bit patterns over the
// level's monomials in listed order: '1' = contains the monomial, '0' = does
// not, '*' = unconstrained. The patterns must partition the nonzero vectors.
struct LevelClasses {
  uint32_t level = 0;
  std::vector<std::string> patterns;
};

// A certificate that the partition of R by (level, class pattern) is a
// matching: levels with a single monomial get the sole class "1" implicitly.
struct LevelMapWitness {
  WeakMonomialOrder order;
  std::vector<LevelClasses> classes;  // required for multi-monomial levels
};

// Verifies the certificate symbolically (characteristic 2 only): classes are
// cosets of monomial ideals and both matching conditions hold, checked via
// the finitely many monomial factorizations that land on a cycle level.
bool verify_matching_via_levels(const Ring& ring, const LevelMapWitness& w,
                                std::string* why = nullptr);

// Built-in certificates for the two large catalog rings, matched by the
// ring's monomial structure; nullopt when the ring is not recognized.
std::optional<LevelMapWitness> builtin_levelmap(const Ring& ring);

}  // namespace ringlin
