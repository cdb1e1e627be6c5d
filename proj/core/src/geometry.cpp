#include "ringlin/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ringlin {

namespace {

// Enumerates all integer points 0 <= e <= box (inclusive) in odometer order.
template <typename F>
void for_box(const Expo& box, F&& fn) {
  Expo e(box.size(), 0);
  while (true) {
    fn(e);
    std::size_t i = 0;
    while (i < box.size() && e[i] == box[i]) e[i++] = 0;
    if (i == box.size()) break;
    ++e[i];
  }
}

Rat dot(const std::vector<Rat>& w, const Expo& e) {
  Rat s(0);
  for (std::size_t i = 0; i < e.size(); ++i) s += w[i] * Rat(Int(e[i]));
  return s;
}

}  // namespace

bool ExponentModel::in_z(const Expo& e) const {
  for (const auto& x : exceptions)
    if (x == e) return false;
  for (const auto& g : gens)
    if (expo_divides(g, e)) return true;
  return false;
}

ExponentModel exponent_model(const Ring& ring) {
  const MonomialBasis* mb = ring.monomials();
  // non-monomial quotients keep an empty basis around for printing only
  if (!mb || mb->mons.empty())
    throw std::invalid_argument(
        "exponent geometry requires a monomial quotient ring");
  ExponentModel m;
  m.n = mb->nvars;
  m.vars = mb->vars;
  m.gens = mb->gens;
  m.exceptions = mb->exceptions;
  m.nonzero = mb->mons;
  m.box.assign(m.n, 0);
  for (const auto& e : m.nonzero)
    for (std::size_t i = 0; i < m.n; ++i) m.box[i] = std::max(m.box[i], e[i]);
  for (std::size_t i = 0; i < m.n; ++i) m.box[i] = 2 * m.box[i] + 2;
  return m;
}

bool in_convex_hull(const std::vector<Expo>& points,
                    const std::vector<Expo>& rays, const Expo& q) {
  if (points.empty()) return false;
  std::size_t n = q.size();
  std::size_t nv = points.size() + rays.size();
  std::vector<LinCons> cons;
  for (std::size_t j = 0; j < nv; ++j) {
    LinCons c;
    c.a.assign(nv, Rat(0));
    c.a[j] = Rat(1);
    c.op = RelOp::GE;
    c.b = Rat(0);
    cons.push_back(std::move(c));
  }
  {
    LinCons c;
    c.a.assign(nv, Rat(0));
    for (std::size_t j = 0; j < points.size(); ++j) c.a[j] = Rat(1);
    c.op = RelOp::EQ;
    c.b = Rat(1);
    cons.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < n; ++i) {
    LinCons c;
    c.a.assign(nv, Rat(0));
    for (std::size_t j = 0; j < points.size(); ++j)
      c.a[j] = Rat(Int(points[j][i]));
    for (std::size_t j = 0; j < rays.size(); ++j)
      c.a[points.size() + j] = Rat(Int(rays[j][i]));
    c.op = RelOp::EQ;
    c.b = Rat(Int(q[i]));
    cons.push_back(std::move(c));
  }
  return lp_feasible_point(nv, cons).has_value();
}

bool condition_p(const ExponentModel& m,
                 std::optional<ConditionPWitness>* counter) {
  for (std::size_t i = 0; i < m.nonzero.size(); ++i) {
    for (std::size_t j = i; j < m.nonzero.size(); ++j) {
      Expo t = expo_add(m.nonzero[i], m.nonzero[j]);
      // look for z in Z with t - z in Z
      bool found = false;
      ConditionPWitness w;
      for_box(t, [&](const Expo& z) {
        if (found || !m.in_z(z)) return;
        Expo rest(m.n);
        for (std::size_t v = 0; v < m.n; ++v) rest[v] = t[v] - z[v];
        if (m.in_z(rest)) {
          found = true;
          w = {z, rest, m.nonzero[i], m.nonzero[j]};
        }
      });
      if (found) {
        if (counter) *counter = w;
        return false;
      }
    }
  }
  if (counter) counter->reset();
  return true;
}

bool is_z_hole_free(const ExponentModel& m, std::optional<Expo>* hole) {
  std::vector<Expo> rays;
  for (std::size_t i = 0; i < m.n; ++i) {
    Expo r(m.n, 0);
    r[i] = 1;
    rays.push_back(r);
  }
  std::optional<Expo> found;
  auto probe = [&](const Expo& e) {
    if (found || m.in_z(e)) return;
    if (in_convex_hull(m.gens, rays, e)) found = e;
  };
  for (const auto& e : m.exceptions) probe(e);
  for_box(m.box, probe);
  if (hole) *hole = found;
  return !found.has_value();
}

bool is_n_hole_free(const ExponentModel& m, std::optional<Expo>* hole) {
  Expo nbox(m.n, 0);
  for (const auto& e : m.nonzero)
    for (std::size_t i = 0; i < m.n; ++i) nbox[i] = std::max(nbox[i], e[i]);
  std::optional<Expo> found;
  for_box(nbox, [&](const Expo& e) {
    if (found) return;
    bool in_n = std::find(m.nonzero.begin(), m.nonzero.end(), e) !=
                m.nonzero.end();
    if (in_n) return;
    if (in_convex_hull(m.nonzero, {}, e)) found = e;
  });
  if (hole) *hole = found;
  return !found.has_value();
}

bool is_z_1convex(const ExponentModel& m,
                  std::optional<SegmentWitness>* counter) {
  std::vector<Expo> zpts;
  for_box(m.box, [&](const Expo& e) {
    if (m.in_z(e)) zpts.push_back(e);
  });
  for (std::size_t i = 0; i < zpts.size(); ++i) {
    for (std::size_t j = i + 1; j < zpts.size(); ++j) {
      const Expo &a = zpts[i], &b = zpts[j];
      int64_t g = 0;
      for (std::size_t v = 0; v < m.n; ++v) {
        int64_t d = static_cast<int64_t>(b[v]) - static_cast<int64_t>(a[v]);
        g = std::gcd(g, d < 0 ? -d : d);
      }
      for (int64_t s = 1; s < g; ++s) {
        Expo mid(m.n);
        bool integral = true;
        for (std::size_t v = 0; v < m.n; ++v) {
          int64_t d = static_cast<int64_t>(b[v]) - static_cast<int64_t>(a[v]);
          int64_t num = static_cast<int64_t>(a[v]) * g + s * d;
          if (num % g != 0) integral = false;
          mid[v] = static_cast<uint32_t>(num / g);
        }
        if (!integral) continue;
        if (!m.in_z(mid)) {
          if (counter) *counter = SegmentWitness{a, b, mid};
          return false;
        }
      }
    }
  }
  if (counter) counter->reset();
  return true;
}

std::optional<Separation> hyperplane_separation(const ExponentModel& m) {
  // variables: w_1..w_n, T
  std::size_t nv = m.n + 1;
  std::vector<LinCons> cons;
  auto row = [&](const Expo& e, Rat tcoef) {
    LinCons c;
    c.a.assign(nv, Rat(0));
    for (std::size_t i = 0; i < m.n; ++i) c.a[i] = Rat(Int(e[i]));
    c.a[m.n] = tcoef;
    return c;
  };
  for (std::size_t i = 0; i < m.n; ++i) {
    LinCons c;
    c.a.assign(nv, Rat(0));
    c.a[i] = Rat(1);
    c.op = RelOp::GT;
    c.b = Rat(0);
    cons.push_back(std::move(c));
  }
  for (const auto& q : m.nonzero) {
    LinCons c = row(q, Rat(-1));
    c.op = RelOp::LT;
    c.b = Rat(0);  // w.q - T < 0
    cons.push_back(std::move(c));
  }
  for (const auto& e : m.exceptions) {
    LinCons c = row(e, Rat(-1));
    c.op = RelOp::LT;
    c.b = Rat(0);
    cons.push_back(std::move(c));
  }
  for (const auto& g : m.gens) {
    LinCons c = row(g, Rat(-1));
    c.op = RelOp::GE;
    c.b = Rat(0);  // w.g - T >= 0
    cons.push_back(std::move(c));
  }
  auto sol = lp_feasible_point(nv, cons);
  if (!sol) return std::nullopt;
  Separation s;
  s.w.assign(sol->begin(), sol->begin() + m.n);
  s.threshold = (*sol)[m.n];
  return s;
}

TriState no_cancellations(const Ring& ring,
                          std::optional<CancellationWitness>* w) {
  if (w) w->reset();
  if (!ring.monomials() || ring.monomials()->mons.empty())
    throw std::invalid_argument("no_cancellations requires a monomial ring");
  ExponentModel m = exponent_model(ring);
  if (is_z_hole_free(m)) return TriState::Yes;   // hole-free implies NC
  if (condition_p(m)) return TriState::Yes;      // lineal monomial implies NC
  if (!ring.enumerable()) return TriState::Unknown;
  uint64_t sz = ring.size();
  if (sz * sz > 10000000ull) return TriState::Unknown;
  const MonomialBasis& mb = *ring.monomials();
  uint64_t q = ring.coeff_modulus();
  // monomial support of a dense element
  auto support = [&](Elem a) {
    std::vector<uint32_t> s;
    uint64_t v = a;
    std::size_t nm = mb.mons.size();
    for (std::size_t d = 0; d < nm; ++d) {
      uint64_t rest = 1;
      for (std::size_t t = d + 1; t < nm; ++t) rest *= q;
      uint64_t digit = (v / rest) % q;
      if (digit != 0) s.push_back(static_cast<uint32_t>(d));
    }
    return s;
  };
  for (Elem p = 1; p < sz; ++p) {
    auto sp = support(p);
    for (Elem r = p; r < sz; ++r) {
      if (ring.mul(p, r) != 0) continue;
      auto sr = support(r);
      for (uint32_t i : sp)
        for (uint32_t j : sr)
          if (mb.mul(i, j) >= 0) {
            if (w) *w = CancellationWitness{p, r};
            return TriState::No;
          }
    }
  }
  return TriState::Yes;
}

namespace {

using Mask = std::vector<uint64_t>;

Mask mask_and(const Mask& a, const Mask& b) {
  Mask r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}
Mask mask_or(const Mask& a, const Mask& b) {
  Mask r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] | b[i];
  return r;
}
bool mask_subset(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

LatticeReport lattice_from_family(std::vector<std::pair<Mask, std::string>> fam,
                                  std::size_t family_cap) {
  LatticeReport rep;
  // close under intersection
  std::sort(fam.begin(), fam.end());
  fam.erase(std::unique(fam.begin(), fam.end(),
                        [](const auto& a, const auto& b) {
                          return a.first == b.first;
                        }),
            fam.end());
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Mask m = mask_and(fam[i].first, fam[j].first);
      bool have = false;
      for (const auto& f : fam)
        if (f.first == m) have = true;
      if (!have) {
        fam.push_back({m, fam[j].second + " \xE2\x88\xA9 " + fam[i].second});
        if (fam.size() > family_cap) {
          rep.distributive = TriState::Unknown;
          return rep;
        }
      }
    }
  }
  rep.family_size = fam.size();
  std::size_t f = fam.size();
  std::map<Mask, std::size_t> index;
  for (std::size_t k = 0; k < f; ++k) index[fam[k].first] = k;
  // join = least family member containing the union; unique because the
  // family is closed under intersection and contains ann(0) = R
  std::vector<std::vector<std::size_t>> meet_tab(f, std::vector<std::size_t>(f)),
      join_tab(f, std::vector<std::size_t>(f));
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = i; j < f; ++j) {
      std::size_t mt = index.at(mask_and(fam[i].first, fam[j].first));
      meet_tab[i][j] = meet_tab[j][i] = mt;
      Mask u = mask_or(fam[i].first, fam[j].first);
      std::size_t best = f;
      for (std::size_t k = 0; k < f; ++k) {
        if (!mask_subset(u, fam[k].first)) continue;
        if (best == f || mask_subset(fam[k].first, fam[best].first)) best = k;
      }
      join_tab[i][j] = join_tab[j][i] = best;
    }
  for (std::size_t a = 0; a < f; ++a)
    for (std::size_t b = 0; b < f; ++b)
      for (std::size_t c = b + 1; c < f; ++c) {
        std::size_t lhs = meet_tab[a][join_tab[b][c]];
        std::size_t rhs = join_tab[meet_tab[a][b]][meet_tab[a][c]];
        if (lhs != rhs) {
          rep.distributive = TriState::No;
          rep.diamond = {fam[a].second, fam[b].second, fam[c].second};
          return rep;
        }
      }
  rep.distributive = TriState::Yes;
  return rep;
}

}  // namespace

LatticeReport annihilator_lattice_report(const Ring& ring,
                                         std::size_t family_cap) {
  std::vector<std::pair<Mask, std::string>> fam;
  if (ring.enumerable()) {
    uint64_t sz = ring.size();
    std::size_t words = (sz + 63) / 64;
    std::map<Mask, std::string> seen;
    for (Elem a = 0; a < sz; ++a) {
      Mask m(words, 0);
      for (Elem x = 0; x < sz; ++x)
        if (ring.mul(a, x) == 0) m[x / 64] |= 1ull << (x % 64);
      if (!seen.count(m)) seen[m] = "ann(" + ring.show(a) + ")";
    }
    for (auto& kv : seen) fam.push_back({kv.first, kv.second});
  } else if (ring.monomials()) {
    // Sparse monomial quotient: valid whenever annihilators are monomial
    // ideals, i.e. the ring has the no-cancellations property.
    if (no_cancellations(ring) != TriState::Yes) {
      LatticeReport rep;
      rep.distributive = TriState::Unknown;
      return rep;
    }
    const MonomialBasis& mb = *ring.monomials();
    std::size_t nm = mb.mons.size();
    std::size_t words = (nm + 63) / 64;
    std::map<Mask, std::string> seen;
    for (std::size_t a = 0; a <= nm; ++a) {
      // a == nm encodes the zero element, whose annihilator is everything
      Mask m(words, 0);
      for (std::size_t x = 0; x < nm; ++x) {
        bool zero = a == nm || mb.mul(static_cast<uint32_t>(a),
                                      static_cast<uint32_t>(x)) < 0;
        if (zero) m[x / 64] |= 1ull << (x % 64);
      }
      std::string label =
          a == nm ? "ann(0)" : "ann(" + mb.show_mono(static_cast<uint32_t>(a)) + ")";
      if (!seen.count(m)) seen[m] = label;
    }
    for (auto& kv : seen) fam.push_back({kv.first, kv.second});
  } else {
    LatticeReport rep;
    rep.distributive = TriState::Unknown;
    return rep;
  }
  return lattice_from_family(std::move(fam), family_cap);
}

}  // namespace ringlin
