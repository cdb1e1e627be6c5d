#include "ringlin/approx.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "ringlin/exact.hpp"

namespace ringlin {

namespace {

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

uint32_t class_of_elem(const MatchingPartition& part, Elem a,
                       bool* found = nullptr) {
  for (std::size_t i = 0; i < part.classes.size(); ++i)
    if (std::binary_search(part.classes[i].begin(), part.classes[i].end(), a)) {
      if (found) *found = true;
      return static_cast<uint32_t>(i);
    }
  if (found) *found = false;
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// simplification (homogenization by branching)

std::optional<SimpleInstance> simplify(const EquationSystem& sys,
                                       const std::vector<std::size_t>& X,
                                       const Assignment& beta,
                                       const std::vector<Elem>& ideal,
                                       uint64_t k) {
  const Ring& R = *sys.ring;
  std::set<std::size_t> xs(X.begin(), X.end());

  // budget adjustment from the branched values on the compression set
  uint64_t costx = 0;
  for (std::size_t i : X) {
    if (i >= sys.eqs.size()) throw std::invalid_argument("simplify: bad index");
    if (!satisfies(R, sys.eqs[i], beta)) {
      if (!sys.eqs[i].soft) return std::nullopt;
      ++costx;
    }
  }
  if (costx > k) return std::nullopt;

  SimpleInstance out;
  out.k = k - costx;
  out.sys.ring = sys.ring;
  out.sys.k = out.k;
  out.sys.ideal_gens = ideal;

  // split unary equations of S - X into a +/- binary pair
  std::vector<Equation> binaries;
  std::vector<std::string> origin;
  for (std::size_t i = 0; i < sys.eqs.size(); ++i) {
    if (xs.count(i)) continue;
    const Equation& e = sys.eqs[i];
    if (e.terms.size() == 1) {
      std::string wv = "w#" + e.id;
      Equation p = e;
      p.terms.push_back({R.neg(R.one()), wv});
      p.id = e.id + "#p";
      Equation m = e;
      m.terms.push_back({R.one(), wv});
      m.id = e.id + "#m";
      binaries.push_back(p);
      origin.push_back(e.id);
      binaries.push_back(m);
      origin.push_back(e.id);
    } else {
      binaries.push_back(e);
      origin.push_back(e.id);
    }
  }

  // homogenization offsets: a simultaneous crisp solution of S - X
  EquationSystem hs;
  hs.ring = sys.ring;
  hs.ideal_gens = ideal;
  hs.eqs = binaries;
  auto eta = feasible(hs);
  if (!eta) return std::nullopt;  // S - X must be satisfiable
  for (const auto& v : sys.vars())
    if (!eta->count(v)) (*eta)[v] = 0;
  out.eta = *eta;

  // z-pair per binary equation: z = a*x0 and z = -b*y0, inheriting softness
  for (std::size_t j = 0; j < binaries.size(); ++j) {
    const Equation& e = binaries[j];
    std::string z = "z#" + e.id;
    const Term& t1 = e.terms[0];
    const Term& t2 = e.terms[1];
    Equation e1;
    e1.terms = {{R.one(), z}, {R.neg(t1.coef), t1.var + "#0"}};
    e1.soft = e.soft;
    e1.id = e.id + "#1";
    Equation e2;
    e2.terms = {{R.one(), z}, {t2.coef, t2.var + "#0"}};
    e2.soft = e.soft;
    e2.id = e.id + "#2";
    out.sys.eqs.push_back(e1);
    out.sys.eqs.push_back(e2);
    out.provenance[e1.id] = origin[j];
    out.provenance[e2.id] = origin[j];
  }

  // pin the branched values on the compression variables
  std::set<std::string> xv;
  for (std::size_t i : X)
    for (const auto& t : sys.eqs[i].terms) xv.insert(t.var);
  for (const auto& x : xv) {
    auto itb = beta.find(x);
    Elem bv = itb == beta.end() ? 0 : itb->second;
    Elem ev = out.eta.count(x) ? out.eta[x] : 0;
    Equation be;
    be.terms = {{R.one(), x + "#0"}};
    be.rhs = R.sub(bv, ev);
    be.soft = false;
    be.id = "b#" + x;
    out.sys.eqs.push_back(be);
    out.provenance[be.id] = "";
  }
  return out;
}

// ---------------------------------------------------------------------------
// the class assignment graph

std::string ClassAssignmentGraph::vertex_name(uint32_t v) const {
  if (v == 0) return "s";
  if (v == 1) return "t";
  return var_of[v] + "@" + std::to_string(class_of[v]);
}

ClassAssignmentGraph build_graph(const EquationSystem& simple_sys,
                                 const MatchingPartition& part, uint64_t k) {
  const Ring& R = *simple_sys.ring;
  const uint32_t d = static_cast<uint32_t>(part.classes.size());
  ClassAssignmentGraph g;
  g.var_of = {"", ""};
  g.class_of = {0, 0};
  g.crisp_multiplicity = sat_mul(k, d > 0 ? d - 1 : 0) + 1;
  for (const auto& v : simple_sys.vars()) {
    for (uint32_t c = 1; c < d; ++c) {
      uint32_t id = static_cast<uint32_t>(g.var_of.size());
      g.var_of.push_back(v);
      g.class_of.push_back(c);
      g.vertex[{v, c}] = id;
    }
  }
  auto rep = [&](uint32_t c) { return part.classes[c][0]; };

  for (const auto& e : simple_sys.eqs) {
    if (e.terms.size() == 1) {
      if (e.terms[0].coef != R.one())
        throw std::invalid_argument("build_graph: unary coefficient not 1");
      if (e.soft)
        throw std::invalid_argument("build_graph: soft unary equation");
      const std::string& u = e.terms[0].var;
      if (e.rhs == 0) {
        for (uint32_t c = 1; c < d; ++c)
          g.edges.push_back({g.vertex[{u, c}], g.t(), true, e.id});
      } else {
        bool found = false;
        uint32_t bc = class_of_elem(part, e.rhs, &found);
        if (!found)
          throw std::invalid_argument("build_graph: constant outside ideal");
        g.edges.push_back({g.s(), g.vertex[{u, bc}], true, e.id});
      }
      continue;
    }
    if (e.terms.size() != 2 || e.terms[0].coef != R.one() || e.rhs != 0)
      throw std::invalid_argument("build_graph: equation not simple");
    const std::string& u = e.terms[0].var;
    Elem r = R.neg(e.terms[1].coef);
    const std::string& v = e.terms[1].var;
    std::vector<char> hit(d, 0);
    for (uint32_t c = 1; c < d; ++c) {
      Elem rc = R.mul(r, rep(c));
      if (rc == 0) continue;
      bool found = false;
      uint32_t dc = class_of_elem(part, rc, &found);
      if (!found || dc == 0)
        throw std::invalid_argument("build_graph: partition not matching");
      hit[dc] = 1;
      uint32_t a = g.vertex[{v, c}];
      uint32_t b = g.vertex[{u, dc}];
      if (a != b) g.edges.push_back({a, b, !e.soft, e.id});
    }
    for (uint32_t c = 1; c < d; ++c)
      if (!hit[c]) g.edges.push_back({g.vertex[{u, c}], g.t(), !e.soft, e.id});
  }
  return g;
}

// ---------------------------------------------------------------------------
// cuts

namespace {

std::vector<char> reach_avoiding(const ClassAssignmentGraph& g, uint32_t src,
                                 const std::vector<char>& cut_edge) {
  std::vector<char> seen(g.var_of.size(), 0);
  std::vector<uint32_t> stack = {src};
  seen[src] = 1;
  while (!stack.empty()) {
    uint32_t v = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if (cut_edge[i]) continue;
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
        stack.push_back(o);
      }
    }
  }
  return seen;
}

std::optional<ConformalCut> make_cut(const ClassAssignmentGraph& g,
                                     std::vector<uint32_t> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<char> mask(g.edges.size(), 0);
  for (uint32_t i : edges) mask[i] = 1;
  ConformalCut cut;
  cut.edges = std::move(edges);
  cut.reachable = reach_avoiding(g, g.s(), mask);
  if (cut.reachable[g.t()]) return std::nullopt;
  for (std::size_t v = 2; v < g.var_of.size(); ++v) {
    if (!cut.reachable[v]) continue;
    auto [it, fresh] = cut.tau.emplace(g.var_of[v], g.class_of[v]);
    if (!fresh && it->second != g.class_of[v]) {
      cut.conformal = false;
      return cut;  // caller decides; tau is unreliable
    }
  }
  return cut;
}

std::vector<char> crisp_closure(const ClassAssignmentGraph& g,
                                std::vector<char> in) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : g.edges) {
      if (!e.crisp) continue;
      if (in[e.a] != in[e.b]) {
        in[e.a] = in[e.b] = 1;
        changed = true;
      }
    }
  }
  return in;
}

}  // namespace

ConformalCut closest_mincut(const ClassAssignmentGraph& g,
                            const std::vector<uint32_t>& y) {
  std::vector<char> mask(g.edges.size(), 0);
  for (uint32_t i : y) {
    if (i >= g.edges.size())
      throw std::invalid_argument("closest_mincut: bad edge index");
    mask[i] = 1;
  }
  std::vector<char> reach = reach_avoiding(g, g.s(), mask);
  if (reach[g.t()]) throw std::invalid_argument("closest_mincut: not a cut");
  std::vector<uint32_t> sep;
  for (uint32_t i : y) {
    const auto& e = g.edges[i];
    if (reach[e.a] != reach[e.b]) sep.push_back(i);
  }
  auto cut = make_cut(g, sep);
  if (!cut) throw std::logic_error("closest_mincut: subcut not a cut");
  return *cut;
}

std::vector<std::vector<uint32_t>> minimal_cuts(const ClassAssignmentGraph& g,
                                                uint64_t b) {
  const std::size_t n = g.var_of.size();
  std::set<std::vector<uint32_t>> found;
  std::set<std::vector<char>> seen;
  std::vector<std::vector<char>> stack;
  std::vector<char> u0(n, 0);
  u0[g.s()] = 1;
  u0 = crisp_closure(g, u0);
  if (u0[g.t()]) return {};
  seen.insert(u0);
  stack.push_back(u0);
  uint64_t nodes = 0;
  const uint64_t kNodeCap = 200000;
  while (!stack.empty() && nodes < kNodeCap) {
    std::vector<char> u = stack.back();
    stack.pop_back();
    ++nodes;
    std::vector<uint32_t> boundary;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const auto& e = g.edges[i];
      if (u[e.a] != u[e.b]) boundary.push_back(static_cast<uint32_t>(i));
    }
    if (boundary.size() <= b) found.insert(boundary);
    for (uint32_t i : boundary) {
      const auto& e = g.edges[i];
      uint32_t far = u[e.a] ? e.b : e.a;
      std::vector<char> nu = u;
      nu[far] = 1;
      nu = crisp_closure(g, nu);
      if (nu[g.t()]) continue;
      if (seen.insert(nu).second) stack.push_back(nu);
    }
  }
  return {found.begin(), found.end()};
}

std::vector<std::vector<uint32_t>> shadow_candidates(
    const ClassAssignmentGraph& g, uint64_t b) {
  std::set<std::vector<uint32_t>> out;
  for (const auto& y : minimal_cuts(g, b)) {
    std::vector<char> mask(g.edges.size(), 0);
    for (uint32_t i : y) mask[i] = 1;
    auto reach = reach_avoiding(g, g.s(), mask);
    std::vector<uint32_t> w;
    for (uint32_t v = 0; v < reach.size(); ++v)
      if (!reach[v]) w.push_back(v);
    out.insert(w);
  }
  return {out.begin(), out.end()};
}

std::vector<uint32_t> shadow_cover(const ClassAssignmentGraph& g, uint64_t b,
                                   std::mt19937_64& rng) {
  auto cands = shadow_candidates(g, b);
  if (cands.empty()) return {};
  return cands[rng() % cands.size()];
}

// ---------------------------------------------------------------------------
// conformal-cut enumeration within delta(W)

namespace {

struct ConfEnum {
  const ClassAssignmentGraph& g;
  const EquationSystem& sys;
  const MatchingPartition& part;
  uint64_t b;  // edge budget
  uint64_t k;  // kept-unsatisfiable allowance
  std::vector<std::vector<uint32_t>> comps;  // component -> vertices
  std::vector<int> comp_of;                  // vertex -> component (-1)
  std::vector<char> removed;                 // per vertex: cut away from s
  std::vector<std::optional<bool>> comp_sat;
  std::set<std::vector<uint32_t>> cuts;
  const uint64_t kCutCap = 20000;

  // soft size of delta(removed); nullopt when a crisp edge crosses
  std::optional<uint64_t> delta_soft() const {
    uint64_t c = 0;
    for (const auto& e : g.edges) {
      if (removed[e.a] != removed[e.b]) {
        if (e.crisp) return std::nullopt;
        ++c;
      }
    }
    return c;
  }

  bool self_sat(std::size_t ci) {
    if (comp_sat[ci]) return *comp_sat[ci];
    std::map<std::string, std::vector<Elem>> tau;
    std::vector<std::string> vars;
    for (uint32_t v : comps[ci]) {
      const std::string& x = g.var_of[v];
      if (!tau.count(x)) vars.push_back(x);
      tau[x] = part.classes[g.class_of[v]];
    }
    bool sat = self_satisfiable(sys, vars, tau);
    comp_sat[ci] = sat;
    return sat;
  }

  void remove_comp(std::size_t ci) {
    for (uint32_t v : comps[ci]) removed[v] = 1;
  }
  void restore_comp(std::size_t ci) {
    for (uint32_t v : comps[ci]) removed[v] = 0;
  }

  void leaf(const std::vector<char>& alive) {
    if (cuts.size() >= kCutCap) return;
    auto ds = delta_soft();
    if (!ds || *ds > b) return;
    std::vector<uint32_t> cut;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
      if (removed[g.edges[i].a] != removed[g.edges[i].b])
        cut.push_back(static_cast<uint32_t>(i));
    (void)alive;
    cuts.insert(cut);
  }

  void branch_unsat(std::vector<char>& alive, const std::vector<std::size_t>& o,
                    std::size_t oi, uint64_t p) {
    if (cuts.size() >= kCutCap) return;
    auto ds = delta_soft();
    if (!ds || *ds > b) return;
    if (oi == o.size()) {
      leaf(alive);
      return;
    }
    std::size_t ci = o[oi];
    if (p < k) branch_unsat(alive, o, oi + 1, p + 1);  // keep it unsatisfied
    remove_comp(ci);
    alive[ci] = 0;
    branch_unsat(alive, o, oi + 1, p);
    alive[ci] = 1;
    restore_comp(ci);
  }

  void after_undecided(std::vector<char>& alive) {
    auto ds = delta_soft();
    if (!ds || *ds > b) return;
    std::vector<std::size_t> o;
    for (std::size_t ci = 0; ci < comps.size(); ++ci)
      if (alive[ci] && !self_sat(ci)) o.push_back(ci);
    if (o.size() > (b - *ds) + k) return;
    branch_unsat(alive, o, 0, 0);
  }

  void branch_undecided(std::vector<char>& alive,
                        const std::vector<std::string>& u, std::size_t ui) {
    if (cuts.size() >= kCutCap) return;
    auto ds = delta_soft();
    if (!ds || *ds > b) return;
    if (ui == u.size()) {
      after_undecided(alive);
      return;
    }
    std::vector<std::size_t> cu;  // alive components holding the variable
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      if (!alive[ci]) continue;
      for (uint32_t v : comps[ci])
        if (g.var_of[v] == u[ui]) {
          cu.push_back(ci);
          break;
        }
    }
    if (cu.empty()) {
      branch_undecided(alive, u, ui + 1);
      return;
    }
    // (a) cut every component of the variable
    for (std::size_t ci : cu) {
      remove_comp(ci);
      alive[ci] = 0;
    }
    branch_undecided(alive, u, ui + 1);
    for (std::size_t ci : cu) {
      restore_comp(ci);
      alive[ci] = 1;
    }
    // (b) keep exactly one of them reachable
    for (std::size_t keep : cu) {
      for (std::size_t ci : cu) {
        if (ci == keep) continue;
        remove_comp(ci);
        alive[ci] = 0;
      }
      branch_undecided(alive, u, ui + 1);
      for (std::size_t ci : cu) {
        if (ci == keep) continue;
        restore_comp(ci);
        alive[ci] = 1;
      }
    }
  }
};

}  // namespace

std::vector<ConformalCut> enumerate_conformal(const ClassAssignmentGraph& g,
                                              const EquationSystem& simple_sys,
                                              const MatchingPartition& part,
                                              const std::vector<uint32_t>& w,
                                              uint64_t b, uint64_t k) {
  const std::size_t n = g.var_of.size();
  std::vector<char> in_w(n, 0);
  for (uint32_t v : w)
    if (v < n && v != g.s()) in_w[v] = 1;

  std::vector<ConformalCut> out;
  auto push = [&](const std::vector<uint32_t>& edges) {
    auto cut = make_cut(g, edges);
    if (cut && cut->conformal) out.push_back(*cut);
  };

  if (!in_w[g.t()]) {
    // only the empty cut can comply: s and t already disconnected
    push({});
    return out;
  }

  // reject when some variable has two classes outside W
  std::map<std::string, uint32_t> outside;
  for (std::size_t v = 2; v < n; ++v)
    if (!in_w[v]) outside[g.var_of[v]]++;
  for (const auto& [x, c] : outside)
    if (c >= 2) return out;

  ConfEnum ce{g, simple_sys, part, b, k};
  ce.removed.assign(n, 0);
  ce.comp_of.assign(n, -1);

  // components of G[W]
  std::vector<uint32_t> dsu(n);
  for (std::size_t i = 0; i < n; ++i) dsu[i] = static_cast<uint32_t>(i);
  std::function<uint32_t(uint32_t)> find = [&](uint32_t a) -> uint32_t {
    while (dsu[a] != a) a = dsu[a] = dsu[dsu[a]];
    return a;
  };
  for (const auto& e : g.edges)
    if (in_w[e.a] && in_w[e.b]) dsu[find(e.a)] = find(e.b);
  std::map<uint32_t, std::size_t> root_id;
  for (uint32_t v = 0; v < n; ++v) {
    if (!in_w[v]) continue;
    uint32_t r = find(v);
    auto [it, fresh] = root_id.emplace(r, ce.comps.size());
    if (fresh) ce.comps.push_back({});
    ce.comps[it->second].push_back(v);
    ce.comp_of[v] = static_cast<int>(it->second);
  }
  ce.comp_sat.assign(ce.comps.size(), std::nullopt);

  // forced removals: t's component, duplicated variables, decided variables
  std::vector<char> alive(ce.comps.size(), 1);
  for (std::size_t ci = 0; ci < ce.comps.size(); ++ci) {
    bool minus = false;
    std::set<std::string> vars_seen;
    for (uint32_t v : ce.comps[ci]) {
      if (v == g.t()) minus = true;
      if (v >= 2) {
        if (!vars_seen.insert(g.var_of[v]).second) minus = true;
        if (outside.count(g.var_of[v])) minus = true;  // W-decided variable
      }
    }
    if (minus) {
      ce.remove_comp(ci);
      alive[ci] = 0;
    }
  }
  {
    auto ds = ce.delta_soft();
    if (!ds || *ds > b) return out;
  }

  // W-undecided variables: all classes inside W
  std::vector<std::string> undecided;
  {
    std::set<std::string> seen;
    for (std::size_t v = 2; v < n; ++v) {
      const std::string& x = g.var_of[v];
      if (!outside.count(x) && seen.insert(x).second) undecided.push_back(x);
    }
  }
  ce.branch_undecided(alive, undecided, 0);

  for (const auto& edges : ce.cuts) push(edges);
  return out;
}

// ---------------------------------------------------------------------------
// level descent

Equation nxt(const Ring& ring, const Equation& eq,
             const std::map<std::string, uint32_t>& tau,
             const MatchingPartition& part) {
  auto rep_of = [&](const std::string& v) -> Elem {
    auto it = tau.find(v);
    uint32_t c = it == tau.end() ? 0 : it->second;
    return part.classes[c][0];
  };
  if (eq.terms.empty() || eq.terms[0].coef != ring.one())
    throw std::invalid_argument("nxt: leading coefficient must be 1");
  Equation out;
  out.soft = eq.soft;
  out.id = eq.id;
  const std::string& u = eq.terms[0].var;
  Elem rep_u = rep_of(u);
  if (eq.terms.size() == 1) {
    out.terms = {{ring.one(), u + "'"}};
    out.rhs = ring.sub(eq.rhs, rep_u);
    return out;
  }
  Elem r = ring.neg(eq.terms[1].coef);
  const std::string& v = eq.terms[1].var;
  Elem rep_v = rep_of(v);
  out.terms = {{ring.one(), u + "'"}, {ring.neg(r), v + "'"}};
  out.rhs = ring.add(eq.rhs, ring.sub(ring.mul(r, rep_v), rep_u));
  return out;
}

// ---------------------------------------------------------------------------
// the per-level solver

namespace {

struct Ctx {
  const BergenWitness& w;
  const ApproxOptions& opts;
  std::mt19937_64* rng = nullptr;
  std::vector<uint64_t> gamma_suffix;  // product of class counts from level i
};

std::optional<Assignment> solve_level(Ctx& ctx, const EquationSystem& sys,
                                      uint64_t k, std::size_t level);

std::optional<Assignment> solve_simple(Ctx& ctx, const SimpleInstance& simp,
                                       std::size_t level) {
  const MatchingPartition& part = ctx.w.parts[level];
  const std::vector<Elem>& ideal = ctx.w.chain[level];
  const EquationSystem& sys = simp.sys;
  const Ring& R = *sys.ring;
  for (const auto& e : sys.eqs)
    if (e.terms.size() == 1 &&
        !std::binary_search(ideal.begin(), ideal.end(), e.rhs))
      return std::nullopt;  // pinned constant outside the current ideal

  const uint64_t d = part.classes.size();
  const uint64_t b = sat_mul(d - 1, simp.k);
  ClassAssignmentGraph g = build_graph(sys, part, simp.k);

  std::vector<std::vector<uint32_t>> wcands;
  if (ctx.opts.exhaustive_cuts)
    wcands = shadow_candidates(g, b);
  else
    wcands.push_back(shadow_cover(g, b, *ctx.rng));

  for (const auto& w : wcands) {
    auto ys = enumerate_conformal(g, sys, part, w, b, simp.k);
    if (ys.empty()) continue;
    std::vector<ConformalCut> picks;
    if (ctx.opts.exhaustive_cuts)
      picks = ys;
    else
      picks.push_back(ys[(*ctx.rng)() % ys.size()]);
    for (const auto& cut : picks) {
      if (ctx.opts.trace) {
        std::string line = "level " + std::to_string(level) + " cut {";
        for (std::size_t i = 0; i < cut.edges.size(); ++i) {
          if (i) line += ", ";
          const auto& e = g.edges[cut.edges[i]];
          line += g.vertex_name(e.a) + "-" + g.vertex_name(e.b);
        }
        line += "}";
        ctx.opts.trace->push_back(line);
      }
      EquationSystem next;
      next.ring = sys.ring;
      next.k = sat_mul(d, simp.k);
      next.ideal_gens = ctx.w.chain[level + 1];
      for (const auto& e : sys.eqs)
        next.eqs.push_back(nxt(R, e, cut.tau, part));
      auto rec = solve_level(ctx, next, next.k, level + 1);
      if (!rec) continue;
      Assignment phi;
      for (const auto& v : sys.vars()) {
        auto it = cut.tau.find(v);
        Elem rep = part.classes[it == cut.tau.end() ? 0 : it->second][0];
        auto jt = rec->find(v + "'");
        phi[v] = R.add(rep, jt == rec->end() ? 0 : jt->second);
      }
      return phi;
    }
  }
  return std::nullopt;
}

// Iterative compression: maintain a small deletion set X while scanning the
// equations; on overflow homogenize by branching over the values of the
// variables of X and run the class-assignment pipeline on each branch.
std::optional<Assignment> iterate_compress(Ctx& ctx, const EquationSystem& sys,
                                           uint64_t k, std::size_t level) {
  const std::vector<Elem>& ideal = ctx.w.chain[level];
  const uint64_t cap = sat_mul(ctx.gamma_suffix[level], k);
  uint64_t trigger = cap;
  if (ctx.opts.compress_cap) trigger = std::min(trigger, *ctx.opts.compress_cap);

  std::vector<std::size_t> X;
  EquationSystem prefix;
  prefix.ring = sys.ring;
  prefix.ideal_gens = sys.ideal_gens;
  prefix.k = sys.k;

  auto minus = [&](const std::vector<std::size_t>& del) {
    EquationSystem rest = prefix;
    for (std::size_t i = del.size(); i-- > 0;)
      rest.eqs.erase(rest.eqs.begin() + del[i]);
    return rest;
  };

  const uint64_t kBranchCap = 1 << 20;
  for (std::size_t i = 0; i < sys.eqs.size(); ++i) {
    prefix.eqs.push_back(sys.eqs[i]);
    if (feasible(minus(X))) continue;  // the current set still works
    if (sys.eqs[i].soft && X.size() + 1 <= trigger) {
      X.push_back(i);
      continue;
    }
    if (ctx.opts.trace)
      ctx.opts.trace->push_back("level " + std::to_string(level) +
                                " branching at equation " + std::to_string(i) +
                                " |X|=" + std::to_string(X.size()));
    std::vector<std::size_t> xb = X;
    xb.push_back(i);
    std::vector<std::string> xv;
    {
      std::set<std::string> s;
      for (std::size_t j : xb)
        for (const auto& t : prefix.eqs[j].terms) s.insert(t.var);
      xv.assign(s.begin(), s.end());
    }
    uint64_t nbranch = 1;
    for (std::size_t q = 0; q < xv.size(); ++q)
      nbranch = sat_mul(nbranch, ideal.size());
    if (nbranch > kBranchCap) return std::nullopt;  // out of branching budget

    bool rebuilt = false;
    std::vector<std::size_t> odo(xv.size(), 0);
    while (true) {
      Assignment beta;
      for (std::size_t q = 0; q < xv.size(); ++q) beta[xv[q]] = ideal[odo[q]];
      auto simp = simplify(prefix, xb, beta, ideal, k);
      if (simp) {
        auto phi0 = solve_simple(ctx, *simp, level);
        if (phi0) {
          Assignment phi;
          for (const auto& x : prefix.vars()) {
            auto it = phi0->find(x + "#0");
            Elem base = it == phi0->end() ? 0 : it->second;
            auto et = simp->eta.find(x);
            phi[x] = sys.ring->add(base,
                                   et == simp->eta.end() ? 0 : et->second);
          }
          std::vector<std::size_t> z;
          bool crisp_bad = false;
          for (std::size_t j = 0; j < prefix.eqs.size(); ++j)
            if (!satisfies(*sys.ring, prefix.eqs[j], phi)) {
              if (!prefix.eqs[j].soft) crisp_bad = true;
              z.push_back(j);
            }
          if (!crisp_bad && z.size() <= cap) {
            X = z;
            rebuilt = true;
            break;
          }
        }
      }
      std::size_t p = xv.size();
      bool done = true;
      while (p > 0) {
        --p;
        if (++odo[p] < ideal.size()) {
          done = false;
          break;
        }
        odo[p] = 0;
      }
      if (done || xv.empty()) break;
    }
    if (ctx.opts.trace)
      ctx.opts.trace->push_back(
          "level " + std::to_string(level) + " equation " + std::to_string(i) +
          (rebuilt ? " rebuilt X={" +
                         [&] {
                           std::string s;
                           for (std::size_t j : X)
                             s += (s.empty() ? "" : ",") + std::to_string(j);
                           return s;
                         }() +
                         "}"
                   : " no accepting branch"));
    if (!rebuilt) return std::nullopt;
  }

  auto a = feasible(minus(X));
  if (!a) return std::nullopt;
  for (const auto& v : sys.vars())
    if (!a->count(v)) (*a)[v] = 0;
  return a;
}

std::optional<Assignment> solve_level(Ctx& ctx, const EquationSystem& sys,
                                      uint64_t k, std::size_t level) {
  if (level + 1 == ctx.w.chain.size()) {
    // zero ideal: every variable is 0; count the broken soft equations
    Assignment zero;
    for (const auto& v : sys.vars()) zero[v] = 0;
    uint64_t c = 0;
    for (const auto& e : sys.eqs)
      if (!satisfies(*sys.ring, e, zero)) {
        if (!e.soft) return std::nullopt;
        ++c;
      }
    if (c > k) return std::nullopt;
    return zero;
  }
  return iterate_compress(ctx, sys, k, level);
}

}  // namespace

// ---------------------------------------------------------------------------
// the solvers

ApproxResult bergen_solve(const EquationSystem& sys, uint64_t k,
                          const BergenWitness& witness,
                          const ApproxOptions& opt) {
  if (!sys.restrictions.empty() || sys.ideal_gens)
    throw std::invalid_argument(
        "bergen_solve: coset restrictions and domain ideals are not "
        "supported");
  std::string why;
  if (!check_bergen_witness(*sys.ring, witness, &why))
    throw std::invalid_argument("bergen_solve: invalid witness: " + why);

  ApproxResult res;
  res.gamma = witness.gamma;
  for (const auto& p : witness.parts)
    res.class_counts.push_back(p.classes.size());

  Ctx ctx{witness, opt};
  ctx.gamma_suffix.assign(witness.parts.size() + 1, 1);
  for (std::size_t i = witness.parts.size(); i-- > 0;)
    ctx.gamma_suffix[i] =
        sat_mul(ctx.gamma_suffix[i + 1], witness.parts[i].classes.size());

  uint64_t gk = sat_mul(ctx.gamma_suffix[0], k);
  uint32_t trials =
      opt.exhaustive_cuts ? 1 : std::max<uint32_t>(1, opt.trials);
  for (uint32_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(opt.seed ^ (0x9E3779B97F4A7C15ULL * (t + 1)));
    ctx.rng = &rng;
    auto phi = solve_level(ctx, sys, k, 0);
    if (!phi) continue;
    Assignment a;
    for (const auto& v : sys.vars()) {
      auto it = phi->find(v);
      a[v] = it == phi->end() ? 0 : it->second;
    }
    auto c = cost(sys, a);
    if (!c || *c > gk) continue;  // deterministic acceptance gate
    res.accepted = true;
    res.assignment = a;
    res.measured_cost = *c;
    if (opt.trace)
      opt.trace->push_back("trial " + std::to_string(t) + " accepted cost " +
                           std::to_string(*c));
    return res;
  }
  return res;
}

ApproxResult sum_solve(const EquationSystem& sys, uint64_t k,
                       const ApproxOptions& opt,
                       const std::vector<FactorSolver>& solvers) {
  if (!sys.restrictions.empty() || sys.ideal_gens)
    throw std::invalid_argument(
        "sum_solve: coset restrictions and domain ideals are not supported");
  LocalDecomposition dec = decompose_local(sys.ring);
  ApproxResult res;
  res.gamma = 0;

  std::vector<Assignment> parts;
  for (std::size_t f = 0; f < dec.factors.size(); ++f) {
    EquationSystem fs;
    fs.ring = dec.factors[f];
    fs.k = k;
    for (const auto& e : sys.eqs) {
      Equation fe = e;
      for (auto& t : fe.terms) t.coef = dec.project(t.coef)[f];
      fe.rhs = dec.project(e.rhs)[f];
      fs.eqs.push_back(fe);
    }
    std::optional<Assignment> fa;
    Int fg = 1;
    if (f < solvers.size() && solvers[f]) {
      fa = solvers[f](fs, k);
    } else {
      BruteResult br = brute_min(fs);
      if (br.available) {
        if (br.cost && *br.cost <= k) fa = br.assignment;
      } else {
        Classification cl = classify(fs.ring);
        if (cl.witness) {
          ApproxResult r = bergen_solve(fs, k, *cl.witness, opt);
          fg = r.gamma;
          if (r.accepted) fa = r.assignment;
        }
      }
    }
    res.gamma += fg;
    if (!fa) return res;
    for (const auto& v : sys.vars())
      if (!fa->count(v)) (*fa)[v] = 0;
    parts.push_back(*fa);
  }

  Assignment a;
  for (const auto& v : sys.vars()) {
    std::vector<Elem> comps;
    for (std::size_t f = 0; f < dec.factors.size(); ++f)
      comps.push_back(parts[f][v]);
    a[v] = dec.lift(comps);
  }
  auto c = cost(sys, a);
  if (!c) return res;
  res.accepted = true;
  res.assignment = a;
  res.measured_cost = *c;
  return res;
}

}  // namespace ringlin
