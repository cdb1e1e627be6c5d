#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ringlin {

// Exponent vector of a monomial.
using Expo = std::vector<uint32_t>;

// p1 divides p2 componentwise?
bool expo_divides(const Expo& p1, const Expo& p2);
Expo expo_add(const Expo& a, const Expo& b);
// graded lexicographic comparison (total degree first)
bool grlex_less(const Expo& a, const Expo& b);

// Monomial structure of F[x_1..x_n]/I for a monomial ideal I with an
// Artinian quotient (finitely many nonzero monomials). Exceptional points
// are exponents excluded from the ideal's exponent set even though they
// dominate a generator (supports rings defined as "half-plane minus a point").
struct MonomialBasis {
  std::size_t nvars = 0;
  std::vector<std::string> vars;
  std::vector<Expo> gens;        // minimal monomial generators of the zero set
  std::vector<Expo> exceptions;  // nonzero despite dominating a generator
  std::vector<Expo> mons;        // nonzero monomials in graded-lex order; mons[0] = 1
  std::map<Expo, uint32_t> index;

  bool zero_mono(const Expo& e) const;  // exponent lies in the zero set?
  // product of two basis monomials; -1 if it falls into the zero set
  int32_t mul(uint32_t i, uint32_t j) const;
  std::string show_mono(uint32_t i) const;
};

// Builds the basis; throws std::invalid_argument if the quotient is not
// Artinian (some variable has no pure power in the zero set).
MonomialBasis make_monomial_basis(std::vector<std::string> vars,
                                  std::vector<Expo> gens,
                                  std::vector<Expo> exceptions = {});

// Minimal generators of the up-closed set {e <= box : !nonzero(e)},
// with exceptions collected separately. Used by catalog constructions
// that define a ring through a predicate on exponents.
struct ExponentScan {
  std::vector<Expo> gens;
  std::vector<Expo> exceptions;
};
ExponentScan scan_zero_set(const Expo& box,
                           const std::function<bool(const Expo&)>& nonzero);

}  // namespace ringlin
