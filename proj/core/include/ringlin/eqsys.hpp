#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringlin/ring.hpp"

namespace ringlin {

// One side term of a two-variable linear equation: coef * var.
struct Term {
  Elem coef = 0;
  std::string var;
};

// c1*x1 [+ c2*x2] = rhs, soft (deletable at unit cost) or crisp.
// The identifier is stable through rewrites so that reported deletion
// sets name equations of the original instance.
struct Equation {
  std::vector<Term> terms;  // one or two terms
  Elem rhs = 0;
  bool soft = true;
  std::string id;
};

// Coset restriction: the variable must take a value in base + (gens).
struct Restriction {
  Elem base = 0;
  std::vector<Elem> gens;
};

struct EquationSystem {
  RingPtr ring;
  std::vector<Equation> eqs;
  uint64_t k = 0;
  // Domain ideal: every variable ranges over the ideal generated by these
  // generators; disengaged = the full ring.
  std::optional<std::vector<Elem>> ideal_gens;
  std::map<std::string, Restriction> restrictions;

  // Variables in order of first appearance (equations, then restrictions).
  std::vector<std::string> vars() const;
  // Sorted element list of the domain ideal (enumerable rings).
  std::vector<Elem> domain_ideal() const;
};

using Assignment = std::map<std::string, Elem>;

// Evaluates one equation under the assignment; variables default to 0.
bool satisfies(const Ring& ring, const Equation& eq, const Assignment& a);

// Number of violated soft equations; nullopt (= infinite) when a crisp
// equation, a coset restriction, or the domain ideal is violated or the
// assignment is not total on vars().
std::optional<uint64_t> cost(const EquationSystem& sys, const Assignment& a);

// Line-oriented bit-exact format:
//   ring <s-expr>
//   param k <int>
//   ideal (<elem>, ...)            [optional]
//   soft|crisp <coef>*<var> [+ <coef>*<var>] = <elem>
//   restrict <var> in <elem> + (<elem>, ...)
// serialize(parse(text)) == canonical text; parse(serialize(sys)) == sys.
EquationSystem parse_instance(const std::string& text);
std::string serialize_instance(const EquationSystem& sys);

// Seed-reproducible random instance. With planted_opt, samples a ground
// truth assignment, emits equations it satisfies, then corrupts exactly
// *planted_opt soft equations (so the optimum is at most planted_opt).
EquationSystem random_instance(const RingPtr& ring, uint32_t n_vars,
                               uint32_t n_eqs, double soft_fraction,
                               std::optional<uint32_t> planted_opt,
                               uint64_t seed, bool with_restrictions = false,
                               std::optional<std::vector<Elem>> ideal_gens =
                                   std::nullopt);

}  // namespace ringlin
