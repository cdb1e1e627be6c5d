#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ringlin/monomial.hpp"
#include "ringlin/snf.hpp"

namespace ringlin {

// Canonical element encoding: every enumerable ring numbers its elements
// 0..size-1 with 0 mapped to the ring's zero.
using Elem = uint32_t;

// Rings above this size are not enumerated; monomial quotients fall back
// to on-the-fly sparse arithmetic on coefficient maps.
constexpr uint64_t kDenseCap = 4096;
// Operation tables are cached only below this size to bound memory.
constexpr uint64_t kTableCap = 512;

// Polynomial with integer coefficients, used during parsing/construction.
struct Poly {
  std::map<Expo, int64_t> terms;  // exponent -> coefficient (nonzero)
  uint32_t max_degree() const;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Additive-group presentation data for the non-monomial quotient path.
struct QuotientData {
  std::vector<std::string> gens_text;           // printable ideal generators
  std::vector<uint64_t> moduli;                 // cyclic moduli d_i > 1
  std::vector<Expo> work_mons;                  // monomials of degree < D*
  std::vector<std::vector<Int>> proj;           // projection rows: vector -> coords
  std::vector<std::vector<Int>> basis_rep;      // representative vectors per basis coord
  std::vector<std::vector<std::vector<uint64_t>>> basis_mul;  // coords of e_i * e_j
};

// Element of a sparse (non-enumerable) monomial quotient:
// monomial index -> coefficient in [1, q).
using SparseElem = std::map<uint32_t, uint32_t>;

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  enum class Kind { Zmod, PolyQuot, Sum };

  static RingPtr zmod(uint64_t m);
  // q must be a prime power p^r; gens may be arbitrary polynomials.
  static RingPtr poly_quot(uint64_t q, std::vector<std::string> vars,
                           const std::vector<Poly>& gens);
  // direct construction from a monomial basis (catalog rings)
  static RingPtr monomial_quot(uint64_t q, MonomialBasis basis);
  static RingPtr direct_sum(std::vector<RingPtr> factors);

  Kind kind() const { return kind_; }
  bool enumerable() const { return enumerable_; }
  uint64_t size() const;
  std::string describe() const;  // s-expression form

  Elem zero() const { return 0; }
  Elem one() const;
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem of_int(int64_t n) const;
  // polyquot rings: evaluate a parsed polynomial into an element
  Elem from_poly(const Poly& p) const;
  SparseElem sparse_from_poly(const Poly& p) const;
  bool is_unit(Elem a) const;
  std::string show(Elem a) const;  // element literal (round-trips via parser)

  // --- presentation as a product of cyclic groups with mult structure ---
  const std::vector<uint64_t>& pres_moduli() const { return pres_moduli_; }
  std::vector<uint64_t> pres_coords(Elem a) const;
  Elem pres_from_coords(const std::vector<Int>& c) const;
  Elem pres_basis_elem(std::size_t j) const;
  // column j = coords of a * basis_j
  IntMat mult_matrix(Elem a) const;

  // --- ideal helpers (enumerable rings) ---
  std::vector<Elem> elements() const;
  std::vector<Elem> principal_ideal(Elem a) const;  // sorted {ra : r in R}
  std::vector<Elem> ideal_generated(const std::vector<Elem>& gens) const;
  std::vector<Elem> ann(Elem a) const;  // {x : ax = 0}

  // --- structure access ---
  uint64_t zmod_modulus() const { return mod_; }
  uint64_t coeff_modulus() const { return q_; }  // p^r of a polyquot
  uint64_t coeff_char() const { return p_; }
  const MonomialBasis* monomials() const { return mono_ ? mono_.get() : nullptr; }
  const std::vector<RingPtr>& factors() const { return factors_; }

  // --- sparse arithmetic for non-enumerable monomial quotients ---
  SparseElem sparse_add(const SparseElem& a, const SparseElem& b) const;
  SparseElem sparse_mul(const SparseElem& a, const SparseElem& b) const;

  Ring(const Ring&) = delete;
  Ring& operator=(const Ring&) = delete;

 private:
  Ring() = default;

  Kind kind_ = Kind::Zmod;
  bool enumerable_ = false;
  uint64_t size_ = 0;

  uint64_t mod_ = 0;               // zmod
  uint64_t p_ = 0, q_ = 0;         // polyquot: char p, coefficient modulus q = p^r
  uint32_t r_ = 1;
  std::unique_ptr<MonomialBasis> mono_;
  std::unique_ptr<QuotientData> quot_;
  std::vector<RingPtr> factors_;

  std::vector<uint64_t> pres_moduli_;
  // cached tables for small rings
  mutable std::vector<Elem> add_tab_, mul_tab_;
  void maybe_build_tables();

  Elem add_raw(Elem a, Elem b) const;
  Elem mul_raw(Elem a, Elem b) const;
  Elem from_work_vector(const std::vector<Int>& w) const;  // quotient path
  std::string show_work_mono(const Expo& e) const;
  std::vector<uint64_t> digits(Elem a) const;      // mixed-radix decompose
  Elem undigits(const std::vector<uint64_t>& d) const;
};

// factors n into p^r; returns nullopt if not a prime power
std::optional<std::pair<uint64_t, uint32_t>> prime_power(uint64_t n);

}  // namespace ringlin
