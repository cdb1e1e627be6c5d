// The approximation pipeline: homogenization, the class-assignment graph,
// conformal cuts, level descent and the two solvers.

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "ringlin/approx.hpp"
#include "ringlin/catalog.hpp"
#include "ringlin/classify.hpp"
#include "ringlin/exact.hpp"
#include "ringlin/parse.hpp"

using namespace ringlin;

namespace {

// A small reference instance over Z_4: two crisp unaries feeding two soft
// doubling chains joined through u = r.
EquationSystem joined_chains() {
  return parse_instance(
      "ring (zmod 4)\n"
      "param k 2\n"
      "crisp 1*a = 1\n"
      "crisp 1*b = 1\n"
      "soft 1*c + 2*a = 0\n"
      "soft 1*c + 2*u = 0\n"
      "soft 1*u + 3*r = 0\n"
      "soft 1*d + 2*b = 0\n"
      "soft 1*d + 3*r = 0\n");
}

MatchingPartition z4_partition() {
  MatchingPartition p;
  p.classes = {{0}, {1, 3}, {2}};
  return p;
}

using NamedEdge = std::tuple<std::string, std::string, bool>;

NamedEdge named(const ClassAssignmentGraph& g,
                const ClassAssignmentGraph::GEdge& e) {
  auto a = g.vertex_name(e.a), b = g.vertex_name(e.b);
  if (b < a) std::swap(a, b);
  return {a, b, e.crisp};
}

bool cuts_st(const ClassAssignmentGraph& g, const std::set<uint32_t>& cut) {
  std::vector<char> seen(g.var_of.size(), 0);
  std::vector<uint32_t> q{g.s()};
  seen[g.s()] = 1;
  while (!q.empty()) {
    uint32_t v = q.back();
    q.pop_back();
    for (uint32_t i = 0; i < g.edges.size(); ++i) {
      if (cut.count(i)) continue;
      const auto& e = g.edges[i];
      uint32_t o;
      if (e.a == v)
        o = e.b;
      else if (e.b == v)
        o = e.a;
      else
        continue;
      if (!seen[o]) {
        seen[o] = 1;
        q.push_back(o);
      }
    }
  }
  return !seen[g.t()];
}

}  // namespace

TEST_CASE("simplify produces the homogeneous simple form") {
  auto sys = parse_instance(
      "ring (zmod 4)\n"
      "param k 2\n"
      "soft 1*x + 2*y = 3\n"
      "crisp 1*y = 1\n");
  std::vector<Elem> full = {0, 1, 2, 3};

  auto simple = simplify(sys, {1}, {{"y", 1}}, full, 2);
  REQUIRE(simple.has_value());
  CHECK(simple->k == 2);  // beta satisfies the crisp compression equation
  for (const auto& e : simple->sys.eqs) {
    if (e.terms.size() == 2) {
      CHECK(e.rhs == 0);
      CHECK(e.terms[0].coef == 1);
    } else {
      REQUIRE(e.terms.size() == 1);
      CHECK(!e.soft);
    }
    CHECK(simple->provenance.count(e.id));
  }
  for (const auto& v : sys.vars()) CHECK(simple->eta.count(v));

  // beta violating a crisp compression equation yields no branch
  CHECK(!simplify(sys, {1}, {{"y", 0}}, full, 2).has_value());
}

TEST_CASE("class assignment graph of the joined-chains instance") {
  auto sys = joined_chains();
  auto g = build_graph(sys, z4_partition(), sys.k);

  CHECK(g.var_of.size() == 14);  // s, t and 6 variables x 2 nonzero classes
  std::multiset<NamedEdge> got;
  for (const auto& e : g.edges) got.insert(named(g, e));
  std::multiset<NamedEdge> want = {
      {"a@1", "s", true},    {"b@1", "s", true},    {"a@1", "c@2", false},
      {"c@2", "u@1", false}, {"c@1", "t", false},   {"c@1", "t", false},
      {"b@1", "d@2", false}, {"d@1", "t", false},   {"r@1", "u@1", false},
      {"r@2", "u@2", false}, {"d@1", "r@1", false}, {"d@2", "r@2", false}};
  CHECK(got == want);
}

TEST_CASE("closest_mincut returns the minimal cut nearest to s") {
  auto sys = joined_chains();
  auto g = build_graph(sys, z4_partition(), sys.k);

  std::vector<uint32_t> all_soft;
  for (uint32_t i = 0; i < g.edges.size(); ++i)
    if (!g.edges[i].crisp) all_soft.push_back(i);
  auto cut = closest_mincut(g, all_soft);

  std::multiset<NamedEdge> got;
  for (auto i : cut.edges) got.insert(named(g, g.edges[i]));
  CHECK(got == std::multiset<NamedEdge>{{"a@1", "c@2", false},
                                        {"b@1", "d@2", false}});
  // only s and the two crisp-pinned vertices stay reachable
  uint32_t reach = 0;
  for (auto c : cut.reachable) reach += c;
  CHECK(reach == 3);
  CHECK(cut.conformal);
  CHECK(cut.tau.at("a") == 1);
  CHECK(cut.tau.at("b") == 1);
  // unreachable variables stay in the zero class (absent from tau)
  CHECK(!cut.tau.count("c"));
  CHECK(!cut.tau.count("r"));

  CHECK_THROWS_AS(closest_mincut(g, {}), std::invalid_argument);
}

TEST_CASE("minimal_cuts respects the budget and only cuts soft edges") {
  auto sys = joined_chains();
  auto g = build_graph(sys, z4_partition(), sys.k);

  auto cuts = minimal_cuts(g, 2);
  CHECK(!cuts.empty());
  for (const auto& y : cuts) {
    CHECK(y.size() <= 2);
    for (auto i : y) CHECK(!g.edges[i].crisp);
    CHECK(cuts_st(g, std::set<uint32_t>(y.begin(), y.end())));
  }
  for (const auto& y : minimal_cuts(g, 1)) {
    CHECK(y.size() <= 1);
    CHECK(cuts_st(g, std::set<uint32_t>(y.begin(), y.end())));
  }
  // deterministic ordering
  CHECK(minimal_cuts(g, 2) == cuts);
}

TEST_CASE("enumerate_conformal yields only conformal budget cuts") {
  auto sys = joined_chains();
  auto part = z4_partition();
  auto g = build_graph(sys, part, sys.k);
  bool any = false;
  for (const auto& w : shadow_candidates(g, 3)) {
    for (const auto& cut : enumerate_conformal(g, sys, part, w, 3, sys.k)) {
      any = true;
      CHECK(cut.conformal);
      CHECK(cut.edges.size() <= 3);
      for (auto i : cut.edges) CHECK(!g.edges[i].crisp);
      CHECK(cuts_st(g, std::set<uint32_t>(cut.edges.begin(), cut.edges.end())));
      // tau matches reachability: a reachable class fixes the variable
      for (uint32_t v = 2; v < g.var_of.size(); ++v)
        if (cut.reachable[v]) CHECK(cut.tau.at(g.var_of[v]) == g.class_of[v]);
    }
  }
  CHECK(any);
}

TEST_CASE("nxt rewrites equations faithfully to the next ideal") {
  auto R = Ring::zmod(4);
  auto w = chain_witness(R);
  REQUIRE(w.chain.size() == 3);
  const auto& part = w.parts[0];
  const std::vector<Elem>& next_ideal = w.chain[1];  // {0, 2}

  std::mt19937_64 rng(7);
  auto draw = [&](uint64_t b) { return static_cast<Elem>(rng() % b); };
  for (int iter = 0; iter < 200; ++iter) {
    Equation eq;
    bool binary = draw(2);
    eq.terms.push_back({1, "x"});
    if (binary) eq.terms.push_back({R->neg(draw(4)), "y"});
    eq.rhs = binary ? 0 : draw(4);
    eq.soft = draw(2);
    eq.id = "e";
    std::map<std::string, uint32_t> tau;
    tau["x"] = static_cast<uint32_t>(draw(part.classes.size()));
    tau["y"] = static_cast<uint32_t>(draw(part.classes.size()));
    auto rewritten = nxt(*R, eq, tau, part);
    CHECK(rewritten.soft == eq.soft);

    for (Elem ax : next_ideal)
      for (Elem ay : next_ideal) {
        Assignment prime{{"x'", ax}, {"y'", ay}};
        Assignment orig{{"x", R->add(part.classes[tau["x"]].front(), ax)},
                        {"y", R->add(part.classes[tau["y"]].front(), ay)}};
        CHECK(satisfies(*R, eq, orig) == satisfies(*R, rewritten, prime));
      }
  }
}

TEST_CASE("bergen_solve is sound and finds planted optima") {
  auto R = Ring::zmod(4);
  auto w = chain_witness(R);
  int accepted = 0;
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    auto sys = random_instance(R, 3, 5, 0.8, 1, seed);
    ApproxOptions opt;
    opt.seed = seed;
    opt.trials = 8;
    auto res = bergen_solve(sys, sys.k, w, opt);
    CAPTURE(seed);
    if (res.accepted) {
      ++accepted;
      auto c = cost(sys, res.assignment);
      REQUIRE(c.has_value());
      CHECK(*c == res.measured_cost);
      CHECK(Int(res.measured_cost) <= res.gamma * Int(sys.k));
    }
  }
  CHECK(accepted > 0);
}

TEST_CASE("bergen_solve full pipeline with forced branching and tracing") {
  auto R = Ring::zmod(4);
  auto w = chain_witness(R);
  auto sys = random_instance(R, 3, 5, 0.8, 1, 42);
  ApproxOptions opt;
  opt.seed = 5;
  opt.trials = 16;
  opt.compress_cap = 0;  // always branch through homogenization
  std::vector<std::string> trace;
  opt.trace = &trace;
  auto res = bergen_solve(sys, sys.k, w, opt);
  if (res.accepted) {
    auto c = cost(sys, res.assignment);
    REQUIRE(c.has_value());
    CHECK(Int(*c) <= res.gamma * Int(sys.k));
  }
  CHECK(!trace.empty());

  // identical options reproduce the identical result
  std::vector<std::string> trace2;
  ApproxOptions opt2 = opt;
  opt2.trace = &trace2;
  auto res2 = bergen_solve(sys, sys.k, w, opt2);
  CHECK(res2.accepted == res.accepted);
  CHECK(res2.assignment == res.assignment);
  CHECK(trace2 == trace);
}

TEST_CASE("bergen_solve exhaustive mode on a tiny instance") {
  auto R = Ring::zmod(4);
  auto w = chain_witness(R);
  auto sys = random_instance(R, 2, 4, 1.0, 1, 3);
  auto br = brute_min(sys);
  REQUIRE(br.available);
  ApproxOptions opt;
  opt.exhaustive_cuts = true;
  auto res = bergen_solve(sys, sys.k, w, opt);
  if (br.cost && *br.cost <= sys.k) CHECK(res.accepted);
  if (res.accepted) {
    auto c = cost(sys, res.assignment);
    REQUIRE(c.has_value());
    CHECK(Int(*c) <= res.gamma * Int(sys.k));
  }
}

TEST_CASE("sum_solve recombines local factors of Z_6") {
  auto R = Ring::zmod(6);
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto sys = random_instance(R, 3, 5, 0.8, 1, seed);
    auto br = brute_min(sys);
    REQUIRE(br.available);
    ApproxOptions opt;
    opt.seed = seed;
    auto res = sum_solve(sys, sys.k, opt);
    CAPTURE(seed);
    if (br.cost && *br.cost <= sys.k) {
      REQUIRE(res.accepted);
      auto c = cost(sys, res.assignment);
      REQUIRE(c.has_value());
      CHECK(*c <= 2 * sys.k);
    }
  }
}

TEST_CASE("solvers reject restricted instances") {
  auto sys = parse_instance(
      "ring (zmod 4)\n"
      "param k 1\n"
      "soft 1*x = 1\n"
      "restrict x in 0 + (2)\n");
  auto w = chain_witness(sys.ring);
  CHECK_THROWS_AS(bergen_solve(sys, 1, w), std::invalid_argument);
  CHECK_THROWS_AS(sum_solve(sys, 1), std::invalid_argument);
}
