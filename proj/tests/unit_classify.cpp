// Structural classification: chain/local/lineal/Helly predicates, matching
// partitions, witness constructions and the level-map certificates.

#include <algorithm>
#include <set>

#include "doctest.h"
#include "ringlin/catalog.hpp"
#include "ringlin/classify.hpp"
#include "ringlin/levelmap.hpp"
#include "ringlin/parse.hpp"

using namespace ringlin;

TEST_CASE("chain predicate") {
  CHECK(is_chain(*Ring::zmod(2)));
  CHECK(is_chain(*Ring::zmod(8)));
  CHECK(is_chain(*Ring::zmod(27)));
  std::pair<Elem, Elem> counter;
  CHECK(!is_chain(*Ring::zmod(6), &counter));
  // the witnesses generate incomparable principal ideals
  auto z6 = Ring::zmod(6);
  auto i1 = z6->principal_ideal(counter.first);
  auto i2 = z6->principal_ideal(counter.second);
  CHECK(!std::includes(i1.begin(), i1.end(), i2.begin(), i2.end()));
  CHECK(!std::includes(i2.begin(), i2.end(), i1.begin(), i1.end()));
  CHECK(!is_chain(*catalog_ring("table1")));
}

TEST_CASE("locality and local decomposition") {
  CHECK(is_local(*Ring::zmod(4)));
  CHECK(is_local(*catalog_ring("table1")));
  CHECK(!is_local(*Ring::zmod(6)));
  std::vector<Elem> maximal;
  CHECK(is_local(*Ring::zmod(9), &maximal));
  CHECK(maximal == std::vector<Elem>{0, 3, 6});

  for (uint64_t m : {6ull, 12ull, 30ull}) {
    auto R = Ring::zmod(m);
    auto dec = decompose_local(R);
    CAPTURE(m);
    uint64_t prod = 1;
    for (const auto& f : dec.factors) {
      CHECK(is_local(*f));
      prod *= f->size();
    }
    CHECK(prod == m);
    for (Elem a = 0; a < m; ++a) {
      auto c = dec.project(a);
      REQUIRE(c.size() == dec.factors.size());
      CHECK(dec.lift(c) == a);
    }
    // projections are ring homomorphisms
    for (Elem a = 0; a < m; ++a)
      for (Elem b = 0; b < m; ++b) {
        auto ca = dec.project(a), cb = dec.project(b);
        auto cs = dec.project(R->add(a, b));
        auto cp = dec.project(R->mul(a, b));
        for (std::size_t i = 0; i < dec.factors.size(); ++i) {
          CHECK(cs[i] == dec.factors[i]->add(ca[i], cb[i]));
          CHECK(cp[i] == dec.factors[i]->mul(ca[i], cb[i]));
        }
      }
  }
}

TEST_CASE("quotient ring view") {
  auto t1 = catalog_ring("table1");
  std::vector<Elem> maximal;
  REQUIRE(is_local(*t1, &maximal));
  auto q = quotient_ring(t1, maximal);
  CHECK(q.size() == 2);  // residue field F_2
  CHECK(q.add(1, 1) == 0);
  CHECK(q.mul(1, 1) == 1);
  for (Elem a = 0; a < t1->size(); ++a)
    for (Elem b = 0; b < t1->size(); ++b) {
      CHECK(q.add(q.project(a), q.project(b)) == q.project(t1->add(a, b)));
      CHECK(q.mul(q.project(a), q.project(b)) == q.project(t1->mul(a, b)));
    }
}

TEST_CASE("lineal predicate agrees with the magic square cross-check") {
  for (const auto& name :
       {"z4", "z6", "z8", "table1", "tangle16", "helly32", "hole_ring"}) {
    auto R = catalog_ring(name);
    CAPTURE(name);
    std::optional<LinealWitness> lw;
    bool lin = is_lineal(*R, &lw);
    std::optional<std::array<Elem, 4>> sq;
    CHECK(lin == magic_square_ok(*R, &sq));
    if (!lin) {
      REQUIRE(lw.has_value());
      CHECK(R->mul(lw->a, lw->f) == 0);
      CHECK(R->mul(lw->b, lw->f) != 0);
      CHECK(R->mul(lw->a, lw->g) != 0);
      CHECK(R->mul(lw->b, lw->g) == 0);
    }
  }
}

TEST_CASE("Helly predicate and tangle witnesses") {
  CHECK(is_helly(*Ring::zmod(8)));
  CHECK(is_helly(*catalog_ring("table1")));
  CHECK(is_helly(*catalog_ring("helly32")));
  std::optional<Tangle> tg;
  REQUIRE(!is_helly(*catalog_ring("tangle16"), &tg));
  REQUIRE(tg.has_value());
  auto R = catalog_ring("tangle16");
  // the three coset ideals pairwise intersect but have no common point
  auto inA = [&](Elem e) { return R->mul(tg->a, e) == 0; };
  auto inB = [&](Elem e) { return R->mul(tg->b, e) == 0; };
  auto inC = [&](Elem e) { return R->mul(tg->c, R->sub(e, tg->d)) == 0; };
  bool ab = false, ac = false, bc = false, abc = false;
  for (Elem e = 0; e < R->size(); ++e) {
    if (inA(e) && inB(e)) ab = true;
    if (inA(e) && inC(e)) ac = true;
    if (inB(e) && inC(e)) bc = true;
    if (inA(e) && inB(e) && inC(e)) abc = true;
  }
  CHECK(ab);
  CHECK(ac);
  CHECK(bc);
  CHECK(!abc);
}

TEST_CASE("matching_check accepts chain classes and rejects corruptions") {
  auto z4 = Ring::zmod(4);
  MatchingPartition good;
  good.classes = {{0}, {1, 3}, {2}};
  CHECK(matching_check(*z4, good));

  std::string why;
  MatchingPartition no_zero;  // {0} merged into another class
  no_zero.classes = {{0, 2}, {1, 3}};
  CHECK(!matching_check(*z4, no_zero, &why));
  CHECK(!why.empty());

  MatchingPartition not_coset;
  not_coset.classes = {{0}, {1, 2}, {3}};
  CHECK(!matching_check(*z4, not_coset));

  MatchingPartition not_ideal;  // domain {0,2,3} is not an ideal
  not_ideal.classes = {{0}, {2}, {3}};
  CHECK(!matching_check(*z4, not_ideal));
}

TEST_CASE("chain witnesses validate and have the expected gamma") {
  struct Row {
    const char* name;
    uint64_t gamma;
  };
  for (const Row& row : {Row{"z4", 6}, Row{"z8", 24}, Row{"z9", 15}}) {
    auto R = catalog_ring(row.name);
    CAPTURE(row.name);
    auto w = chain_witness(R);
    std::string why;
    CHECK(check_bergen_witness(*R, w, &why));
    CHECK(why.empty());
    CHECK(w.gamma == Int(row.gamma));
    CHECK(w.chain.front().size() == R->size());
    CHECK(w.chain.back() == std::vector<Elem>{0});
  }
}

TEST_CASE("bergen_search finds a valid witness for Z_4 and the Table-1 ring") {
  for (const auto& name : {"z4", "table1"}) {
    auto R = catalog_ring(name);
    CAPTURE(name);
    auto w = bergen_search(R);
    REQUIRE(w.has_value());
    std::string why;
    CHECK(check_bergen_witness(*R, *w, &why));
    CHECK(why.empty());
  }
  CHECK(bergen_search(catalog_ring("z4"))->gamma <= Int(6));
}

TEST_CASE("every witness classify produces passes the full verification") {
  for (const auto& entry : catalog()) {
    auto cl = classify(entry.ring);
    CAPTURE(entry.name);
    if (cl.witness) {
      std::string why;
      CHECK(check_bergen_witness(*entry.ring, *cl.witness, &why));
      CHECK(why.empty());
      CHECK(cl.gamma == cl.witness->gamma);
    }
    if (cl.bergen == BergenStatus::RefutedViaLineal)
      CHECK(cl.lineal == TriState::No);
  }
}

TEST_CASE("threshold labelling of fully convex rings gives a valid witness") {
  auto t1 = catalog_ring("table1");
  auto lab = threshold_labelling(*t1);
  REQUIRE(lab.has_value());
  // defining property: uv = 0 iff L(u) + L(v) >= T
  for (Elem u = 0; u < t1->size(); ++u)
    for (Elem v = 0; v < t1->size(); ++v)
      CHECK((t1->mul(u, v) == 0) ==
            (lab->label[u] + lab->label[v] >= lab->threshold));
  if (lab->linear) {
    auto w = threshold_witness(t1, *lab);
    CHECK(check_bergen_witness(*t1, w));
  }
}

TEST_CASE("level-map certificates verify the two large catalog rings") {
  for (const auto& name : {"r_knt", "r_347"}) {
    auto R = catalog_ring(name);
    CAPTURE(name);
    auto w = builtin_levelmap(*R);
    REQUIRE(w.has_value());
    std::string why;
    CHECK(verify_matching_via_levels(*R, *w, &why));
    CHECK(why.empty());

    // tampering with a class pattern must be caught
    auto bad = *w;
    bool tampered = false;
    for (auto& lc : bad.classes) {
      for (auto& p : lc.patterns)
        for (auto& ch : p)
          if (ch == '1' && !tampered) {
            ch = '0';
            tampered = true;
          }
    }
    if (tampered) CHECK(!verify_matching_via_levels(*R, bad));
  }
  CHECK(!builtin_levelmap(*catalog_ring("table1")).has_value());
}

TEST_CASE("classification pins for the named catalog rings") {
  auto cl = classify(catalog_ring("table1"));
  CHECK(!cl.chain);
  CHECK(cl.local);
  CHECK(cl.lineal == TriState::Yes);
  CHECK(cl.helly == TriState::Yes);
  CHECK(cl.bergen == BergenStatus::Found);

  auto t = classify(catalog_ring("tangle16"));
  CHECK(t.helly == TriState::No);
  CHECK(t.bergen == BergenStatus::RefutedViaLineal);

  auto h = classify(catalog_ring("helly32"));
  CHECK(h.helly == TriState::Yes);
  CHECK(h.lineal == TriState::No);

  for (const auto& name : {"r_knt", "r_347"}) {
    auto big = classify(catalog_ring(name));
    CAPTURE(name);
    CHECK(big.bergen == BergenStatus::Found);
    CHECK(big.bergen_route == "level-map");
  }
}
