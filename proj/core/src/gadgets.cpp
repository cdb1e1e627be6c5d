#include "ringlin/gadgets.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "ringlin/classify.hpp"

namespace ringlin {

std::vector<std::string> LongSystem::vars() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& e : eqs)
    for (const auto& t : e.terms)
      if (seen.insert(t.var).second) out.push_back(t.var);
  return out;
}

std::optional<uint64_t> long_cost(const LongSystem& sys, const Assignment& a) {
  const Ring& R = *sys.ring;
  uint64_t c = 0;
  for (const auto& e : sys.eqs) {
    Elem lhs = 0;
    for (const auto& t : e.terms) {
      auto it = a.find(t.var);
      Elem v = it == a.end() ? 0 : it->second;
      lhs = R.add(lhs, R.mul(t.coef, v));
    }
    if (lhs == e.rhs) continue;
    if (!e.soft) return std::nullopt;
    ++c;
  }
  return c;
}

LongBrute long_brute_min(const LongSystem& sys, uint64_t cap) {
  LongBrute res;
  if (!sys.ring->enumerable()) return res;
  std::vector<std::string> vars = sys.vars();
  uint64_t n = sys.ring->size(), total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (total > cap / n + 1) return res;
    total *= n;
    if (total > cap) return res;
  }
  res.available = true;
  std::vector<Elem> idx(vars.size(), 0);
  Assignment cur;
  for (const auto& v : vars) cur[v] = 0;
  while (true) {
    auto c = long_cost(sys, cur);
    if (c && (!res.cost || *c < *res.cost)) {
      res.cost = *c;
      res.assignment = cur;
      if (*res.cost == 0) break;
    }
    std::size_t p = vars.size();
    bool wrapped = true;
    while (p > 0) {
      --p;
      if (++idx[p] < n) {
        cur[vars[p]] = idx[p];
        wrapped = false;
        break;
      }
      idx[p] = 0;
      cur[vars[p]] = 0;
    }
    if (wrapped) break;
  }
  return res;
}

// ---------------------------------------------------------------------------
// ternarize

std::vector<LongEquation> ternarize(const RingPtr& ring, const LongEquation& eq,
                                    const std::string& prefix) {
  const Ring& R = *ring;
  // Expand coefficients into repeated unit terms.
  std::vector<std::string> s;  // summand variables, in order
  for (const auto& t : eq.terms) {
    if (t.coef == R.zero()) continue;
    // smallest m >= 1 with m * 1 == coef
    Elem acc = 0;
    uint64_t m = 0;
    bool found = false;
    for (uint64_t i = 1; i <= R.size(); ++i) {
      acc = R.add(acc, R.one());
      if (acc == t.coef) {
        m = i;
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument(
          "ternarize: coefficient is not an integer multiple of 1");
    for (uint64_t i = 0; i < m; ++i) s.push_back(t.var);
  }
  std::vector<LongEquation> out;
  uint32_t next = 1;
  auto fresh_id = [&] { return prefix + "_" + std::to_string(next++); };
  auto unit = [&](const std::string& v) { return Term{R.one(), v}; };

  if (s.size() == 3 && eq.rhs == R.zero()) {
    LongEquation e;
    e.terms = {unit(s[0]), unit(s[1]), unit(s[2])};
    e.rhs = R.zero();
    e.soft = false;
    e.id = fresh_id();
    out.push_back(std::move(e));
    return out;
  }

  const std::string z0 = prefix + "_z0";
  const std::string zc = prefix + "_zc";
  auto push = [&](std::vector<Term> terms, Elem rhs) {
    LongEquation e;
    e.terms = std::move(terms);
    e.rhs = rhs;
    e.soft = false;
    e.id = fresh_id();
    out.push_back(std::move(e));
  };
  push({unit(z0)}, R.zero());          // carrier z_0 = 0
  push({unit(zc)}, R.neg(eq.rhs));     // carrier z_{-y} = -y
  const std::size_t L = s.size();
  if (L == 0) {
    // constant equation: 0 = y expressed through the carriers
    push({unit(z0), unit(zc)}, R.neg(eq.rhs));
    return out;
  }
  if (L == 1) {
    push({unit(z0), unit(s[0]), unit(zc)}, R.zero());
    return out;
  }
  auto u = [&](std::size_t l) { return prefix + "_u" + std::to_string(l); };
  auto ubar = [&](std::size_t l) { return prefix + "_ub" + std::to_string(l); };
  for (std::size_t l = 1; l <= L - 1; ++l)
    push({unit(u(l)), unit(ubar(l)), unit(z0)}, R.zero());
  push({unit(z0), unit(s[0]), unit(u(1))}, R.zero());
  for (std::size_t l = 2; l <= L - 1; ++l)
    push({unit(ubar(l - 1)), unit(s[l - 1]), unit(u(l))}, R.zero());
  push({unit(ubar(L - 1)), unit(s[L - 1]), unit(zc)}, R.zero());
  return out;
}

// ---------------------------------------------------------------------------
// tangle gadget

EquationSystem tangle_gadget(const LongSystem& field_sys, const RingPtr& ring) {
  const Ring& R = *ring;
  if (!R.enumerable())
    throw std::invalid_argument("tangle_gadget: ring must be enumerable");
  std::vector<Elem> maximal;
  if (!is_local(R, &maximal))
    throw std::invalid_argument("tangle_gadget: ring must be local");
  std::optional<Tangle> tg;
  if (is_helly(R, &tg) || !tg)
    throw std::invalid_argument("tangle_gadget: ring must be non-Helly");
  const Elem a = tg->a, b = tg->b, c = tg->c, d = tg->d;
  // s in Ann(a) cap (Ann(c)+d), t in Ann(b) cap (Ann(c)+d)
  Elem s = 0, t = 0;
  bool have_s = false, have_t = false;
  for (Elem e = 0; e < R.size(); ++e) {
    bool inC = R.mul(c, R.sub(e, d)) == R.zero();
    if (!inC) continue;
    if (!have_s && R.mul(a, e) == R.zero()) {
      s = e;
      have_s = true;
    }
    if (!have_t && R.mul(b, e) == R.zero()) {
      t = e;
      have_t = true;
    }
  }
  if (!have_s || !have_t)
    throw std::invalid_argument("tangle_gadget: tangle intersection empty");

  const Ring& F = *field_sys.ring;
  uint64_t fsize = R.size() / (maximal.size());
  if (F.kind() != Ring::Kind::Zmod || F.size() != fsize)
    throw std::invalid_argument(
        "tangle_gadget: field instance must live over Z_p = R/M");

  EquationSystem out;
  out.ring = ring;
  out.k = field_sys.k;
  uint32_t next = 1;
  auto fresh_id = [&] { return "e" + std::to_string(next++); };
  for (const auto& fe : field_sys.eqs) {
    if (fe.terms.size() == 1 && fe.terms[0].coef == F.one()) {
      if (fe.soft && fe.rhs != F.zero())
        throw std::invalid_argument(
            "tangle_gadget: soft unary equations must be x = 0");
      Equation e;
      e.terms = {{R.one(), fe.terms[0].var}};
      e.rhs = R.of_int(static_cast<int64_t>(fe.rhs));
      e.soft = fe.soft;
      e.id = fresh_id();
      out.eqs.push_back(std::move(e));
      continue;
    }
    bool ternary = fe.terms.size() == 3 && fe.rhs == F.zero() && !fe.soft;
    for (const auto& tm : fe.terms)
      if (tm.coef != F.one()) ternary = false;
    if (!ternary)
      throw std::invalid_argument(
          "tangle_gadget: instance is not almost homogeneous");
    const std::string& x = fe.terms[0].var;
    const std::string& y = fe.terms[1].var;
    const std::string& z = fe.terms[2].var;
    std::string v = "v_" + (fe.id.empty() ? std::to_string(next) : fe.id);
    auto crisp = [&](Elem c1, const std::string& v1, Elem c2,
                     const std::string& v2) {
      Equation e;
      e.terms = {{c1, v1}, {c2, v2}};
      e.rhs = R.zero();
      e.soft = false;
      e.id = fresh_id();
      out.eqs.push_back(std::move(e));
    };
    crisp(a, v, R.neg(R.mul(a, t)), y);  // a*v = (a*t)*y
    crisp(b, v, R.neg(R.mul(b, s)), x);  // b*v = (b*s)*x
    crisp(c, v, R.mul(c, t), z);         // c*v = -(c*t)*z
  }
  return out;
}

// ---------------------------------------------------------------------------
// paired-cut gadget

EquationSystem paired_cut_gadget(const CutGraph& g, const RingPtr& ring) {
  const Ring& R = *ring;
  std::optional<LinealWitness> lw;
  if (is_lineal(R, &lw) || !lw)
    throw std::invalid_argument("paired_cut_gadget: ring must be non-lineal");
  const Elem a = lw->a, b = lw->b, f = lw->f, gg = lw->g;

  if (g.side.size() != g.n || g.s >= g.n || g.t >= g.n || g.s == g.t)
    throw std::invalid_argument("paired_cut_gadget: malformed graph");
  if (g.side[g.s] != 0 || g.side[g.t] != 0)
    throw std::invalid_argument("paired_cut_gadget: terminals must have side 0");
  std::vector<int> edge_pair(g.edges.size(), -1);
  for (std::size_t p = 0; p < g.pairs.size(); ++p) {
    auto [e1, e2] = g.pairs[p];
    if (e1 >= g.edges.size() || e2 >= g.edges.size() || e1 == e2 ||
        edge_pair[e1] != -1 || edge_pair[e2] != -1)
      throw std::invalid_argument("paired_cut_gadget: pairs must be disjoint");
    if (g.edges[e1].side == g.edges[e2].side)
      throw std::invalid_argument(
          "paired_cut_gadget: each pair needs one edge per side");
    edge_pair[e1] = static_cast<int>(p);
    edge_pair[e2] = static_cast<int>(p);
  }
  for (const auto& e : g.edges) {
    if (e.u >= g.n || e.v >= g.n || (e.side != 1 && e.side != 2))
      throw std::invalid_argument("paired_cut_gadget: malformed edge");
    for (uint32_t w : {e.u, e.v})
      if (g.side[w] != 0 && g.side[w] != e.side)
        throw std::invalid_argument(
            "paired_cut_gadget: edge crosses the split");
  }

  auto vname = [&](uint32_t v, int side) -> std::string {
    if (v == g.s) return side == 1 ? "s1" : "s2";
    if (v == g.t) return side == 1 ? "t1" : "t2";
    if (v < g.names.size() && !g.names[v].empty()) return g.names[v];
    return "u" + std::to_string(v);
  };

  EquationSystem out;
  out.ring = ring;
  out.k = g.k;
  uint32_t next = 1;
  auto add = [&](std::vector<Term> terms, Elem rhs, bool soft) {
    Equation e;
    e.terms = std::move(terms);
    e.rhs = rhs;
    e.soft = soft;
    e.id = "e" + std::to_string(next++);
    out.eqs.push_back(std::move(e));
  };
  add({{R.one(), "s1"}}, R.mul(a, gg), false);
  add({{R.one(), "s2"}}, R.mul(b, f), false);
  add({{R.one(), "t1"}}, R.zero(), false);
  add({{R.one(), "t2"}}, R.zero(), false);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (edge_pair[i] != -1) continue;
    const auto& e = g.edges[i];
    add({{R.one(), vname(e.u, e.side)}, {R.neg(R.one()), vname(e.v, e.side)}},
        R.zero(), false);
  }
  for (std::size_t p = 0; p < g.pairs.size(); ++p) {
    auto [i1, i2] = g.pairs[p];
    if (g.edges[i1].side == 2) std::swap(i1, i2);
    const auto& e1 = g.edges[i1];
    const auto& e2 = g.edges[i2];
    std::string xp = "x_p" + std::to_string(p);
    std::string yp = "y_p" + std::to_string(p);
    add({{R.one(), xp}, {R.neg(R.one()), yp}}, R.zero(), true);
    add({{R.one(), vname(e1.u, 1)}, {R.neg(a), xp}}, R.zero(), false);
    add({{R.one(), vname(e1.v, 1)}, {R.neg(a), yp}}, R.zero(), false);
    add({{R.one(), vname(e2.u, 2)}, {R.neg(b), xp}}, R.zero(), false);
    add({{R.one(), vname(e2.v, 2)}, {R.neg(b), yp}}, R.zero(), false);
  }
  return out;
}

// ---------------------------------------------------------------------------
// split paired paths

CutGraph split_paired_paths(const MdbsInstance& in) {
  CutGraph g;
  const uint32_t k = in.k;
  if (k == 0 || in.a_sizes.size() != k || in.b_sizes.size() != k)
    throw std::invalid_argument("split_paired_paths: need k class sizes");
  uint32_t n = 1;
  for (uint32_t sz : in.a_sizes) n = std::max(n, sz);
  for (uint32_t sz : in.b_sizes) n = std::max(n, sz);
  for (const auto& e : in.edges)
    if (e[0] >= k || e[2] >= k || e[1] >= in.a_sizes[e[0]] ||
        e[3] >= in.b_sizes[e[2]])
      throw std::invalid_argument("split_paired_paths: edge out of range");

  g.s = 0;
  g.t = 1;
  g.names = {"s", "t"};
  g.side = {0, 0};
  auto new_vertex = [&](const std::string& name, int side) {
    g.names.push_back(name);
    g.side.push_back(side);
    return static_cast<uint32_t>(g.names.size() - 1);
  };
  // chain vertices v^X_{i,j}, j in 0..n; j=0 -> s, j=n -> t
  std::vector<std::vector<uint32_t>> chain_a(k), chain_b(k);
  for (int sideB = 0; sideB < 2; ++sideB) {
    auto& chain = sideB ? chain_b : chain_a;
    for (uint32_t i = 0; i < k; ++i) {
      chain[i].assign(n + 1, 0);
      chain[i][0] = g.s;
      chain[i][n] = g.t;
      for (uint32_t j = 1; j < n; ++j)
        chain[i][j] = new_vertex(std::string(sideB ? "B" : "A") + "_" +
                                     std::to_string(i) + "_" +
                                     std::to_string(j),
                                 sideB ? 2 : 1);
    }
  }

  // canonical order of source edges
  std::vector<std::array<uint32_t, 4>> src = in.edges;
  std::sort(src.begin(), src.end());
  src.erase(std::unique(src.begin(), src.end()), src.end());
  std::map<std::array<uint32_t, 4>, std::vector<uint32_t>> preimage;

  auto add_edge = [&](uint32_t u, uint32_t v, int side) {
    g.edges.push_back({u, v, side});
    return static_cast<uint32_t>(g.edges.size() - 1);
  };
  uint32_t aux = 0;
  auto build_path = [&](uint32_t from, uint32_t to, int side,
                        const std::vector<std::array<uint32_t, 4>>& labels) {
    std::size_t len = std::max<std::size_t>(1, labels.size());
    uint32_t prev = from;
    for (std::size_t step = 0; step < len; ++step) {
      uint32_t nxt =
          step + 1 == len
              ? to
              : new_vertex("p" + std::to_string(aux++), side);
      uint32_t ei = add_edge(prev, nxt, side);
      if (step < labels.size()) preimage[labels[step]].push_back(ei);
      prev = nxt;
    }
  };

  for (int sideB = 0; sideB < 2; ++sideB) {
    auto& chain = sideB ? chain_b : chain_a;
    for (uint32_t i = 0; i < k; ++i)
      for (uint32_t j = 1; j <= n; ++j)
        for (uint32_t l = 0; l < k; ++l) {
          std::vector<std::array<uint32_t, 4>> labels;
          for (const auto& e : src) {
            bool mine = sideB ? (e[2] == i && e[3] == j - 1 && e[0] == l)
                              : (e[0] == i && e[1] == j - 1 && e[2] == l);
            if (mine) labels.push_back(e);
          }
          build_path(chain[i][j - 1], chain[i][j], sideB ? 2 : 1, labels);
        }
  }

  for (const auto& [label, eidx] : preimage) {
    (void)label;
    if (eidx.size() != 2)
      throw std::logic_error("split_paired_paths: label without two preimages");
    uint32_t e1 = eidx[0], e2 = eidx[1];
    if (g.edges[e1].side == 2) std::swap(e1, e2);
    g.pairs.emplace_back(e1, e2);
  }
  g.n = static_cast<uint32_t>(g.names.size());
  g.k = static_cast<uint64_t>(k) * k;
  return g;
}

}  // namespace ringlin
