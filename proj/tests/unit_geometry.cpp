// Exponent-set geometry: Condition P, holes, 1-convexity, separating
// hyperplanes, cancellation behaviour and the annihilator lattice.

#include <algorithm>
#include <set>

#include "doctest.h"
#include "ringlin/catalog.hpp"
#include "ringlin/classify.hpp"
#include "ringlin/geometry.hpp"
#include "ringlin/parse.hpp"

using namespace ringlin;

namespace {

bool genuine_monomial(const RingPtr& r) {
  return r->monomials() && !r->monomials()->mons.empty();
}

}  // namespace

TEST_CASE("exponent_model rejects non-monomial rings") {
  CHECK_THROWS_AS(exponent_model(*Ring::zmod(8)), std::invalid_argument);
  CHECK_THROWS_AS(exponent_model(*catalog_ring("huneke_swanson")),
                  std::invalid_argument);
}

TEST_CASE("exponent model of the Helly example ring") {
  auto m = exponent_model(*catalog_ring("helly32"));
  CHECK(m.n == 2);
  std::set<Expo> gens(m.gens.begin(), m.gens.end());
  CHECK(gens == std::set<Expo>{{3, 0}, {1, 1}, {0, 3}});
  std::set<Expo> nz(m.nonzero.begin(), m.nonzero.end());
  CHECK(nz == std::set<Expo>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}});
  CHECK(m.in_z({1, 1}));
  CHECK(m.in_z({5, 7}));
  CHECK(!m.in_z({2, 0}));
}

TEST_CASE("Condition P matches lineality on monomial catalog rings") {
  for (const auto& entry : catalog()) {
    if (!genuine_monomial(entry.ring) || !entry.ring->enumerable()) continue;
    CAPTURE(entry.name);
    auto m = exponent_model(*entry.ring);
    std::optional<ConditionPWitness> cw;
    bool cp = condition_p(m, &cw);
    CHECK(cp == is_lineal(*entry.ring));
    if (cw) {
      // the witness really is a violation
      CHECK(m.in_z(cw->p1));
      CHECK(m.in_z(cw->p2));
      CHECK(!m.in_z(cw->q1));
      CHECK(!m.in_z(cw->q2));
      CHECK(expo_add(cw->p1, cw->p2) == expo_add(cw->q1, cw->q2));
    }
  }
}

TEST_CASE("pinned Condition P violation of the Helly example") {
  auto m = exponent_model(*catalog_ring("helly32"));
  std::optional<ConditionPWitness> cw;
  REQUIRE(!condition_p(m, &cw));
  REQUIRE(cw.has_value());
  std::multiset<Expo> zs{cw->p1, cw->p2}, ns{cw->q1, cw->q2};
  CHECK(zs == std::multiset<Expo>{{1, 1}, {1, 1}});
  CHECK(ns == std::multiset<Expo>{{2, 0}, {0, 2}});
}

TEST_CASE("pinned hole and 1-convexity violation") {
  auto m = exponent_model(*catalog_ring("oneconvex_ring"));
  std::optional<Expo> hole;
  REQUIRE(!is_z_hole_free(m, &hole));
  REQUIRE(hole.has_value());
  CHECK(*hole == Expo{3, 1});
  std::optional<SegmentWitness> sw;
  REQUIRE(!is_z_1convex(m, &sw));
  REQUIRE(sw.has_value());
  std::multiset<Expo> ends{sw->a, sw->b};
  CHECK(ends == std::multiset<Expo>{{4, 0}, {2, 2}});
  CHECK(sw->mid == Expo{3, 1});
}

TEST_CASE("hole-freeness implication suite over the catalog") {
  for (const auto& entry : catalog()) {
    if (!genuine_monomial(entry.ring) || !entry.ring->enumerable()) continue;
    CAPTURE(entry.name);
    auto m = exponent_model(*entry.ring);
    bool zhf = is_z_hole_free(m);
    bool z1c = is_z_1convex(m);
    auto nc = no_cancellations(*entry.ring);
    bool helly = is_helly(*entry.ring);
    if (zhf) CHECK(nc == TriState::Yes);
    if (nc == TriState::Yes) CHECK(helly);
    if (helly) CHECK(z1c);
  }
}

TEST_CASE("hole witnesses are genuine") {
  for (const auto& entry : catalog()) {
    if (!genuine_monomial(entry.ring)) continue;
    CAPTURE(entry.name);
    auto m = exponent_model(*entry.ring);
    std::optional<Expo> zh;
    if (!is_z_hole_free(m, &zh)) {
      REQUIRE(zh.has_value());
      CHECK(!m.in_z(*zh));
      // inside the hull of Z restricted to the bounding box
      std::vector<Expo> zpts;
      Expo cur(m.n, 0);
      auto advance = [&]() {
        std::size_t i = 0;
        while (i < m.n && ++cur[i] > m.box[i]) cur[i++] = 0;
        return i < m.n;
      };
      do {
        if (m.in_z(cur)) zpts.push_back(cur);
      } while (advance());
      std::vector<Expo> rays;
      for (std::size_t i = 0; i < m.n; ++i) {
        Expo e(m.n, 0);
        e[i] = 1;
        rays.push_back(e);
      }
      CHECK(in_convex_hull(zpts, rays, *zh));
    }
  }
}

TEST_CASE("full convexity and the separating hyperplane") {
  auto m1 = exponent_model(*catalog_ring("table1"));
  auto sep = hyperplane_separation(m1);
  REQUIRE(sep.has_value());
  // w.q < T on N, w.g >= T on generators of Z
  auto dot = [&](const Expo& e) {
    Rat acc(0);
    for (std::size_t i = 0; i < e.size(); ++i)
      acc += sep->w[i] * Rat(Int(e[i]));
    return acc;
  };
  for (const auto& q : m1.nonzero) CHECK(dot(q) < sep->threshold);
  for (const auto& g : m1.gens) CHECK(dot(g) >= sep->threshold);
  for (const auto& w : sep->w) CHECK(w > Rat(0));

  CHECK(!hyperplane_separation(exponent_model(*catalog_ring("r_knt"))));
  CHECK(!hyperplane_separation(exponent_model(*catalog_ring("tangle16"))));
}

TEST_CASE("cancellation witnesses multiply to zero with a surviving monomial") {
  auto R = catalog_ring("tangle16");
  std::optional<CancellationWitness> cw;
  REQUIRE(no_cancellations(*R, &cw) == TriState::No);
  REQUIRE(cw.has_value());
  CHECK(R->mul(cw->p, cw->q) == 0);
  CHECK(cw->p != 0);
  CHECK(cw->q != 0);
}

TEST_CASE("annihilator lattice reports") {
  auto good = annihilator_lattice_report(*catalog_ring("helly32"));
  CHECK(good.distributive == TriState::Yes);
  CHECK(!good.diamond.has_value());

  auto bad = annihilator_lattice_report(*catalog_ring("diamond"));
  CHECK(bad.distributive == TriState::No);
  CHECK(bad.diamond.has_value());
}

TEST_CASE("in_convex_hull basics") {
  std::vector<Expo> pts = {{0, 0}, {4, 0}, {0, 4}};
  CHECK(in_convex_hull(pts, {}, {1, 1}));
  CHECK(in_convex_hull(pts, {}, {2, 2}));
  CHECK(!in_convex_hull(pts, {}, {3, 3}));
  CHECK(in_convex_hull(pts, {{1, 0}, {0, 1}}, {3, 3}));
  CHECK(!in_convex_hull({{2, 2}}, {{1, 0}}, {1, 2}));
}

TEST_CASE("double hole-free example separates lineality from hole-freeness") {
  auto R = catalog_ring("double_hole_free");
  auto m = exponent_model(*R);
  CHECK(is_z_hole_free(m));
  CHECK(is_n_hole_free(m));
  CHECK(!condition_p(m));
  // too large to enumerate, so lineality is decided through the geometry
  CHECK(classify(R).lineal == TriState::No);
}
