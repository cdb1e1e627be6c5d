#include "ringlin/catalog.hpp"

#include <cctype>
#include <mutex>
#include <stdexcept>

#include "ringlin/parse.hpp"

namespace ringlin {

namespace {

RingPtr f2_monomial(std::vector<std::string> vars, std::vector<Expo> gens,
                    std::vector<Expo> exceptions = {}) {
  return Ring::monomial_quot(
      2, make_monomial_basis(std::move(vars), std::move(gens),
                             std::move(exceptions)));
}

// F_2[x,y,z]/I where the nonzero monomials are those with 12a+15b+20c <= 60
// except multiples of x^2*y*z.
RingPtr make_r_knt() {
  auto nz = [](const Expo& e) {
    uint64_t f = 12ull * e[0] + 15ull * e[1] + 20ull * e[2];
    bool above = e[0] >= 2 && e[1] >= 1 && e[2] >= 1;
    return f <= 60 && !above;
  };
  auto scan = scan_zero_set({6, 5, 4}, nz);
  return f2_monomial({"x", "y", "z"}, scan.gens, scan.exceptions);
}

// F_2[x,y,z]/(x^3, y^4, z^7, ...): the upper half-plane of 28a+21b+12c >= 84
// except the point xyz^3, given by its minimal generators.
RingPtr make_r_347() {
  std::vector<Expo> gens = {{3, 0, 0}, {0, 4, 0}, {0, 0, 7}, {1, 2, 2},
                            {1, 3, 0}, {1, 1, 4}, {1, 0, 5}, {2, 0, 3},
                            {2, 2, 0}, {2, 1, 1}, {0, 1, 6}, {0, 2, 4},
                            {0, 3, 2}};
  return f2_monomial({"x", "y", "z"}, gens);
}

// F_2[x,y,z]/I with nonzero monomials {12a+8b+6c <= 24} plus xyz, xy^2, x^2y.
RingPtr make_double_hole_free() {
  auto nz = [](const Expo& e) {
    uint64_t f = 12ull * e[0] + 8ull * e[1] + 6ull * e[2];
    if (f <= 24) return true;
    Expo p = e;
    return p == Expo{1, 1, 1} || p == Expo{1, 2, 0} || p == Expo{2, 1, 0};
  };
  auto scan = scan_zero_set({3, 4, 5}, nz);
  return f2_monomial({"x", "y", "z"}, scan.gens, scan.exceptions);
}

// F[x,y,z]/((x,y,z)^4, xyz)
RingPtr make_diamond() {
  std::vector<Expo> gens = {{4, 0, 0}, {0, 4, 0}, {0, 0, 4}, {3, 1, 0},
                            {3, 0, 1}, {1, 3, 0}, {0, 3, 1}, {1, 0, 3},
                            {0, 1, 3}, {2, 2, 0}, {2, 0, 2}, {0, 2, 2},
                            {2, 1, 1}, {1, 2, 1}, {1, 1, 2}, {1, 1, 1}};
  return f2_monomial({"x", "y", "z"}, gens);
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  auto add = [&](std::string name, RingPtr r, std::string note) {
    c.push_back({std::move(name), std::move(r), std::move(note)});
  };
  add("z2", Ring::zmod(2), "prime field");
  add("z3", Ring::zmod(3), "prime field");
  add("z4", Ring::zmod(4), "chain ring");
  add("z5", Ring::zmod(5), "prime field");
  add("z6", Ring::zmod(6), "direct sum of fields");
  add("z8", Ring::zmod(8), "chain ring");
  add("z9", Ring::zmod(9), "chain ring");
  add("z27", Ring::zmod(27), "chain ring");
  add("table1", parse_ring("(poly 2 (x y) (x^2 x*y y^2))"),
      "smallest Bergen ring that is not a chain ring");
  add("tangle16", parse_ring("(poly 2 (x y) (x^2 y^2))"),
      "not Helly: tangle on Ann(x), Ann(y), Ann(x+y)+x");
  add("helly32", parse_ring("(poly 2 (x y) (x^3 x*y y^3))"),
      "Helly but not lineal");
  add("hole_ring", parse_ring("(poly 2 (x y) (x^4 x^2*y y^3))"),
      "zero set has the hole (3,1)");
  add("oneconvex_ring", parse_ring("(poly 2 (x y) (x^4 x*y^2 y^3))"),
      "zero set not 1-convex at (4,0)-(2,2)");
  add("r_knt", make_r_knt(), "Bergen but not fully convex");
  add("r_347", make_r_347(), "Bergen but not Z-hole-free");
  add("double_hole_free", make_double_hole_free(),
      "not lineal with both N and Z hole-free");
  add("huneke_swanson", parse_ring("(poly 2 (x y) (x^2+y^3 x*y^3 y^4))"),
      "lineal non-monomial quotient");
  add("diamond", make_diamond(),
      "annihilator lattice contains a diamond");
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = build_catalog();
  return c;
}

RingPtr catalog_ring(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e.ring;
  if (name.size() > 1 && name[0] == 'z') {
    bool digits = true;
    for (std::size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
    if (digits) return Ring::zmod(std::stoull(name.substr(1)));
  }
  throw std::invalid_argument("unknown catalog ring '" + name + "'");
}

}  // namespace ringlin
