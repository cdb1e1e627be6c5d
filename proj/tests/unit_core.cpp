// Ring arithmetic, presentations, parsing, instance grammar, Smith normal
// form: the foundations everything else builds on.

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "ringlin/catalog.hpp"
#include "ringlin/eqsys.hpp"
#include "ringlin/exact.hpp"
#include "ringlin/monomial.hpp"
#include "ringlin/parse.hpp"
#include "ringlin/ring.hpp"
#include "ringlin/snf.hpp"

using namespace ringlin;

namespace {

std::vector<RingPtr> axiom_rings() {
  return {Ring::zmod(2),
          Ring::zmod(4),
          Ring::zmod(6),
          Ring::zmod(9),
          catalog_ring("table1"),
          catalog_ring("tangle16"),
          Ring::direct_sum({Ring::zmod(4), Ring::zmod(3)})};
}

}  // namespace

TEST_CASE("commutative ring axioms on small rings") {
  for (const auto& R : axiom_rings()) {
    CAPTURE(R->describe());
    uint64_t n = R->size();
    REQUIRE(n <= 32);
    CHECK(R->zero() == 0);
    for (Elem a = 0; a < n; ++a) {
      CHECK(R->add(a, R->zero()) == a);
      CHECK(R->mul(a, R->one()) == a);
      CHECK(R->add(a, R->neg(a)) == R->zero());
      CHECK(R->sub(a, a) == R->zero());
      for (Elem b = 0; b < n; ++b) {
        CHECK(R->add(a, b) == R->add(b, a));
        CHECK(R->mul(a, b) == R->mul(b, a));
        CHECK(R->sub(a, b) == R->add(a, R->neg(b)));
        for (Elem c = 0; c < n; ++c) {
          CHECK(R->add(R->add(a, b), c) == R->add(a, R->add(b, c)));
          CHECK(R->mul(R->mul(a, b), c) == R->mul(a, R->mul(b, c)));
          CHECK(R->mul(a, R->add(b, c)) ==
                R->add(R->mul(a, b), R->mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("units and of_int") {
  auto z6 = Ring::zmod(6);
  CHECK(z6->is_unit(1));
  CHECK(z6->is_unit(5));
  CHECK(!z6->is_unit(2));
  CHECK(!z6->is_unit(3));
  CHECK(z6->of_int(-1) == 5);
  CHECK(z6->of_int(13) == 1);
}

TEST_CASE("element literals round-trip through the parser") {
  for (const auto& R : axiom_rings()) {
    CAPTURE(R->describe());
    for (Elem a = 0; a < R->size(); ++a)
      CHECK(parse_element(*R, R->show(a)) == a);
  }
}

TEST_CASE("ring descriptions round-trip through the parser") {
  for (const auto& entry : catalog()) {
    if (!entry.ring->enumerable()) continue;
    CAPTURE(entry.name);
    auto back = parse_ring(entry.ring->describe());
    REQUIRE(back->size() == entry.ring->size());
    // same structure: identical operation tables under the same numbering
    for (Elem a = 0; a < std::min<uint64_t>(back->size(), 64); ++a)
      for (Elem b = 0; b < std::min<uint64_t>(back->size(), 64); ++b) {
        CHECK(back->add(a, b) == entry.ring->add(a, b));
        CHECK(back->mul(a, b) == entry.ring->mul(a, b));
      }
  }
}

TEST_CASE("additive presentation round-trips and multiplication matrices") {
  for (const auto& R : axiom_rings()) {
    CAPTURE(R->describe());
    uint64_t prod = 1;
    for (auto m : R->pres_moduli()) prod *= m;
    CHECK(prod == R->size());
    for (Elem a = 0; a < R->size(); ++a) {
      auto c = R->pres_coords(a);
      std::vector<Int> ci(c.begin(), c.end());
      CHECK(R->pres_from_coords(ci) == a);
    }
    auto ap = abelian_presentation(R);
    for (Elem a = 0; a < R->size(); ++a) {
      auto M = ap.mult(a);
      for (Elem b = 0; b < R->size(); ++b) {
        auto cb = ap.coords(b);
        std::vector<Int> prodc(ap.dim(), 0);
        for (std::size_t i = 0; i < ap.dim(); ++i) {
          for (std::size_t j = 0; j < ap.dim(); ++j)
            prodc[i] += M[i][j] * cb[j];
          Int m = Int(ap.moduli[i]);
          prodc[i] = ((prodc[i] % m) + m) % m;
        }
        CHECK(ap.decode(prodc) == R->mul(a, b));
      }
    }
  }
}

TEST_CASE("ideal helpers produce ideals") {
  for (const auto& R : axiom_rings()) {
    CAPTURE(R->describe());
    for (Elem g = 0; g < R->size(); ++g) {
      auto I = R->principal_ideal(g);
      CHECK(std::is_sorted(I.begin(), I.end()));
      std::set<Elem> s(I.begin(), I.end());
      CHECK(s.count(0) == 1);
      for (Elem a : I)
        for (Elem b : I) CHECK(s.count(R->add(a, b)) == 1);
      for (Elem a : I)
        for (Elem r = 0; r < R->size(); ++r)
          CHECK(s.count(R->mul(r, a)) == 1);
      auto A = R->ann(g);
      for (Elem x : A) CHECK(R->mul(g, x) == 0);
      for (Elem x = 0; x < R->size(); ++x)
        if (R->mul(g, x) == 0)
          CHECK(std::binary_search(A.begin(), A.end(), x));
    }
  }
}

TEST_CASE("prime power recognition") {
  CHECK(prime_power(8) == std::pair<uint64_t, uint32_t>{2, 3});
  CHECK(prime_power(27) == std::pair<uint64_t, uint32_t>{3, 3});
  CHECK(prime_power(7) == std::pair<uint64_t, uint32_t>{7, 1});
  CHECK(!prime_power(6));
  CHECK(!prime_power(12));
  CHECK(!prime_power(1));
}

TEST_CASE("monomial basis of the Table-1 ring") {
  auto mb = make_monomial_basis({"x", "y"}, {{2, 0}, {1, 1}, {0, 2}});
  REQUIRE(mb.mons.size() == 3);
  CHECK(mb.mons[0] == Expo{0, 0});
  CHECK(mb.zero_mono({2, 0}));
  CHECK(mb.zero_mono({1, 1}));
  CHECK(!mb.zero_mono({1, 0}));
  CHECK(mb.mul(0, 1) == 1);   // 1 * x = x
  CHECK(mb.mul(1, 1) == -1);  // x * x = 0
}

TEST_CASE("scan_zero_set matches the direct generator list") {
  // zero set {(a,b) : 2a + b >= 4} over the box (3, 5)
  auto scan = scan_zero_set(
      {3, 5}, [](const Expo& e) { return 2 * e[0] + e[1] < 4; });
  CHECK(scan.exceptions.empty());
  std::set<Expo> gens(scan.gens.begin(), scan.gens.end());
  CHECK(gens == std::set<Expo>{{2, 0}, {1, 2}, {0, 4}});
}

TEST_CASE("Smith normal form invariants on random matrices") {
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    IntMat a(rows, std::vector<Int>(cols));
    for (auto& row : a)
      for (auto& x : row) x = Int(static_cast<int64_t>(rng() % 21) - 10);
    auto f = smith_normal_form(a);
    // S = U * A * V
    IntMat ua(rows, std::vector<Int>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t l = 0; l < rows; ++l)
          ua[i][j] += f.u[i][l] * a[l][j];
    IntMat uav(rows, std::vector<Int>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t l = 0; l < cols; ++l)
          uav[i][j] += ua[i][l] * f.v[l][j];
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        CHECK(uav[i][j] == f.s[i][j]);
        if (i != j) CHECK(f.s[i][j] == 0);
      }
    for (std::size_t i = 0; i + 1 < std::min(rows, cols); ++i) {
      CHECK(f.s[i][i] >= 0);
      if (f.s[i][i] != 0) CHECK(f.s[i + 1][i + 1] % f.s[i][i] == 0);
    }
    // U * Uinv = I
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < rows; ++j) {
        Int acc = 0;
        for (std::size_t l = 0; l < rows; ++l)
          acc += f.u[i][l] * f.uinv[l][j];
        CHECK(acc == (i == j ? 1 : 0));
      }
  }
}

TEST_CASE("diophantine and congruence solvers verified against brute force") {
  std::mt19937_64 rng(777);
  for (int iter = 0; iter < 80; ++iter) {
    std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
    IntMat a(rows, std::vector<Int>(cols));
    for (auto& row : a)
      for (auto& x : row) x = Int(static_cast<int64_t>(rng() % 9) - 4);
    std::vector<Int> b(rows);
    for (auto& x : b) x = Int(static_cast<int64_t>(rng() % 9) - 4);
    std::vector<Int> mods(rows);
    for (auto& m : mods) m = Int(static_cast<int64_t>(1 + rng() % 6));

    auto sol = solve_congruences(a, b, mods);
    bool brute = false;
    // small box search is enough to witness solvability for these sizes
    std::vector<int64_t> x(cols, -12);
    while (!brute) {
      bool ok = true;
      for (std::size_t i = 0; i < rows && ok; ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < cols; ++j) acc += a[i][j] * Int(x[j]);
        Int m = mods[i];
        if (((acc - b[i]) % m + m) % m != 0) ok = false;
      }
      if (ok) brute = true;
      std::size_t p = 0;
      while (p < cols && ++x[p] > 12) x[p++] = -12;
      if (p == cols) break;
    }
    if (sol) {
      REQUIRE(sol->size() == cols);
      for (std::size_t i = 0; i < rows; ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < cols; ++j) acc += a[i][j] * (*sol)[j];
        Int m = mods[i];
        CHECK(((acc - b[i]) % m + m) % m == 0);
      }
    } else {
      CHECK(!brute);
    }
  }
}

TEST_CASE("instance grammar round-trips") {
  std::string text =
      "ring (zmod 4)\n"
      "param k 2\n"
      "ideal (2)\n"
      "soft 1*x + 3*y = 2\n"
      "crisp 2*x = 0\n"
      "restrict x in 1 + (2)\n";
  auto sys = parse_instance(text);
  CHECK(sys.k == 2);
  REQUIRE(sys.eqs.size() == 2);
  CHECK(sys.eqs[0].soft);
  CHECK(!sys.eqs[1].soft);
  REQUIRE(sys.ideal_gens.has_value());
  CHECK(serialize_instance(sys) == text);
  // parse(serialize(sys)) == sys
  auto sys2 = parse_instance(serialize_instance(sys));
  CHECK(serialize_instance(sys2) == text);

  CHECK_THROWS_AS(parse_instance("param k 1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("ring (zmod 4)\nsoft 1*x + 2*x = 0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_instance("ring (zmod 4)\nwat 1*x = 0\n"), ParseError);
}

TEST_CASE("random instances honour the planted optimum") {
  auto z4 = Ring::zmod(4);
  for (uint64_t seed = 0; seed < 40; ++seed) {
    auto sys = random_instance(z4, 3, 6, 0.7, 1, seed);
    CHECK(sys.k == 1);
    auto br = brute_min(sys);
    REQUIRE(br.available);
    REQUIRE(br.cost.has_value());
    CHECK(*br.cost <= 1);
    // reproducibility
    auto again = random_instance(z4, 3, 6, 0.7, 1, seed);
    CHECK(serialize_instance(again) == serialize_instance(sys));
  }
}

TEST_CASE("cost rejects partial or out-of-domain assignments") {
  auto sys = parse_instance(
      "ring (zmod 4)\n"
      "param k 1\n"
      "ideal (2)\n"
      "soft 1*x + 1*y = 2\n");
  Assignment full{{"x", 2}, {"y", 0}};
  CHECK(cost(sys, full) == 0);
  Assignment partial{{"x", 2}};
  CHECK(!cost(sys, partial).has_value());
  Assignment outside{{"x", 1}, {"y", 1}};  // 1 is not in (2)
  CHECK(!cost(sys, outside).has_value());
}
