#include "ringlin/levelmap.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ringlin {

namespace {
constexpr uint32_t kUndef = UINT32_MAX;
}

std::optional<WeakMonomialOrder> make_weak_order(
    const MonomialBasis& basis,
    const std::vector<std::vector<Expo>>& level_exponents, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return std::optional<WeakMonomialOrder>{};
  };
  WeakMonomialOrder w;
  std::size_t nm = basis.mons.size();
  w.level_of.assign(nm, kUndef);
  for (const auto& lvl : level_exponents) {
    std::vector<uint32_t> ids;
    for (const Expo& e : lvl) {
      auto it = basis.index.find(e);
      if (it == basis.index.end()) return fail("level lists a zero monomial");
      if (w.level_of[it->second] != kUndef)
        return fail("monomial listed twice");
      w.level_of[it->second] = static_cast<uint32_t>(w.levels.size());
      ids.push_back(it->second);
    }
    if (ids.empty()) return fail("empty level");
    w.levels.push_back(std::move(ids));
  }
  for (std::size_t i = 0; i < nm; ++i)
    if (w.level_of[i] == kUndef) return fail("monomial not assigned a level");
  if (w.levels[0] != std::vector<uint32_t>{0})
    return fail("level 0 must be {1}");
  uint32_t L = static_cast<uint32_t>(w.levels.size());
  uint32_t zl = L;
  w.g.assign(L + 1, std::vector<uint32_t>(L + 1, kUndef));
  for (uint32_t t = 0; t <= L; ++t) w.g[zl][t] = w.g[t][zl] = zl;
  for (uint32_t i = 0; i < nm; ++i)
    for (uint32_t j = 0; j < nm; ++j) {
      int32_t p = basis.mul(i, j);
      uint32_t lev = p < 0 ? zl : w.level_of[static_cast<uint32_t>(p)];
      uint32_t& cell = w.g[w.level_of[i]][w.level_of[j]];
      if (cell != kUndef && cell != lev)
        return fail("product level is not determined by factor levels (" +
                    basis.show_mono(i) + " * " + basis.show_mono(j) + ")");
      cell = lev;
    }
  // multiplication must never lower levels
  for (uint32_t j = 0; j <= L; ++j) {
    uint32_t running = 0;
    for (uint32_t i = 0; i <= L; ++i) {
      if (w.g[i][j] == kUndef) continue;
      if (w.g[i][j] < running)
        return fail("product level decreases along the order");
      running = w.g[i][j];
    }
  }
  return w;
}

namespace {

// per-level class data compiled from patterns
struct CompiledLevel {
  std::vector<uint32_t> care, ones;  // per class, bitmask over level monomials
  std::vector<int> owner;            // vector -> class id (-1 for none)
};

struct Verifier {
  const Ring& ring;
  const MonomialBasis& mb;
  const WeakMonomialOrder& ord;
  std::string* why;
  uint32_t L, zl;
  std::vector<std::vector<std::string>> pats;
  std::vector<CompiledLevel> comp;
  std::vector<uint32_t> pos_in_level;  // monomial -> position within its level

  bool fail(const std::string& m) {
    if (why) *why = m;
    return false;
  }

  bool compile(const LevelMapWitness& w) {
    pats.assign(L, {});
    for (uint32_t c = 0; c < L; ++c)
      if (ord.levels[c].size() == 1) pats[c] = {"1"};
    for (const auto& lc : w.classes) {
      if (lc.level >= L) return fail("class level out of range");
      pats[lc.level] = lc.patterns;
    }
    pos_in_level.assign(mb.mons.size(), 0);
    for (uint32_t c = 0; c < L; ++c)
      for (std::size_t b = 0; b < ord.levels[c].size(); ++b)
        pos_in_level[ord.levels[c][b]] = static_cast<uint32_t>(b);
    comp.assign(L, {});
    for (uint32_t c = 0; c < L; ++c) {
      std::size_t k = ord.levels[c].size();
      if (k > 16) return fail("level too wide");
      if (pats[c].empty())
        return fail("missing classes for level " + std::to_string(c));
      comp[c].owner.assign(1u << k, -1);
      for (std::size_t pi = 0; pi < pats[c].size(); ++pi) {
        const std::string& P = pats[c][pi];
        if (P.size() != k) return fail("pattern arity mismatch");
        uint32_t care = 0, ones = 0;
        for (std::size_t b = 0; b < k; ++b) {
          if (P[b] == '1') {
            care |= 1u << b;
            ones |= 1u << b;
          } else if (P[b] == '0') {
            care |= 1u << b;
          } else if (P[b] != '*') {
            return fail("bad pattern character");
          }
        }
        if (!ones) return fail("pattern forces no monomial");
        comp[c].care.push_back(care);
        comp[c].ones.push_back(ones);
        for (uint32_t v = 1; v < (1u << k); ++v)
          if ((v & care) == ones) {
            if (comp[c].owner[v] != -1)
              return fail("patterns overlap at level " + std::to_string(c));
            comp[c].owner[v] = static_cast<int>(pi);
          }
      }
      for (uint32_t v = 1; v < (1u << k); ++v)
        if (comp[c].owner[v] == -1)
          return fail("patterns do not cover level " + std::to_string(c));
    }
    return true;
  }

  // product level of monomial m times variable v; kUndef position if zero
  std::pair<uint32_t, uint32_t> bump(uint32_t m, std::size_t v) const {
    Expo e = mb.mons[m];
    e[v] += 1;
    auto it = mb.index.find(e);
    if (it == mb.index.end()) return {zl, kUndef};
    return {ord.level_of[it->second], it->second};
  }

  // classes must be cosets: a free monomial times a variable stays free
  bool check_cosets() {
    for (uint32_t c = 0; c < L; ++c) {
      std::size_t k = ord.levels[c].size();
      for (const auto& P : pats[c])
        for (std::size_t b = 0; b < k; ++b) {
          if (P[b] != '*') continue;
          for (std::size_t v = 0; v < mb.nvars; ++v) {
            auto [lev, pm] = bump(ord.levels[c][b], v);
            if (lev > c) continue;
            if (lev < c) return fail("free direction drops below its level");
            if (P[pos_in_level[pm]] != '*')
              return fail("free direction leaves its class at level " +
                          std::to_string(c));
          }
        }
    }
    return true;
  }

  struct Combo {
    uint32_t i;   // element level of p
    int cls;      // class index at level i
    // factorizations (m1, m2, target bit) feeding the cycle level
    const std::vector<std::array<uint32_t, 3>>* pairs;
  };

  // affine span {v0 ^ s : s in span-set} of level-c content for elements of
  // class (i, cls) multiplied by r (given by the bit assignment over W)
  std::pair<uint32_t, uint32_t> affine(const Combo& cb, uint32_t c,
                                       const std::vector<uint32_t>& W,
                                       uint32_t rbits) const {
    uint32_t v0 = 0;
    uint32_t span = 1;  // bitset over vectors in F_2^k, contains 0
    // group contributions per m1
    // (pair lists are small; recompute per call)
    std::map<uint32_t, uint32_t> vec;  // m1 -> produced vector
    for (const auto& pr : *cb.pairs) {
      uint32_t wi = 0;
      while (W[wi] != pr[1]) ++wi;
      if (rbits >> wi & 1) vec[pr[0]] ^= 1u << pr[2];
    }
    for (const auto& kv : vec) {
      uint32_t m1 = kv.first, val = kv.second;
      if (!val) continue;
      bool fixed1 = false, fixed0 = false;
      if (ord.level_of[m1] == cb.i) {
        uint32_t b = pos_in_level[m1];
        char ch = pats[cb.i][cb.cls][b];
        if (ch == '1') fixed1 = true;
        if (ch == '0') fixed0 = true;
      }
      if (fixed0) continue;
      if (fixed1) {
        v0 ^= val;
      } else {
        uint32_t ns = span;
        for (uint32_t v = 0; v < 16; ++v)
          if (span >> v & 1) ns |= 1u << (v ^ val);
        span = ns;
      }
    }
    return {v0, span};
  }

  bool check_cycle_level(uint32_t c) {
    const auto& mc = ord.levels[c];
    std::size_t k = mc.size();
    if (k > 4) return fail("cycle level too wide");
    std::map<uint32_t, uint32_t> bit_of;
    for (std::size_t b = 0; b < k; ++b) bit_of[mc[b]] = static_cast<uint32_t>(b);
    // all factorizations landing in M_c
    std::vector<std::array<uint32_t, 3>> all;
    for (uint32_t a = 0; a < mb.mons.size(); ++a)
      for (uint32_t b2 = 0; b2 < mb.mons.size(); ++b2) {
        int32_t p = mb.mul(a, b2);
        if (p >= 0 && bit_of.count(static_cast<uint32_t>(p)))
          all.push_back({a, b2, bit_of[static_cast<uint32_t>(p)]});
      }
    for (uint32_t j = 0; j < L; ++j) {
      // levels i with g(i, j) = c
      std::vector<uint32_t> is;
      for (uint32_t i = 0; i < L; ++i)
        if (ord.g[i][j] == c) is.push_back(i);
      if (is.empty()) continue;
      // per-i filtered factorizations
      std::map<uint32_t, std::vector<std::array<uint32_t, 3>>> fpairs;
      std::set<uint32_t> wset;
      for (uint32_t i : is) {
        auto& fp = fpairs[i];
        for (const auto& pr : all)
          if (ord.level_of[pr[0]] >= i && ord.level_of[pr[1]] >= j) {
            fp.push_back(pr);
            wset.insert(pr[1]);
          }
      }
      std::vector<uint32_t> W(wset.begin(), wset.end());
      if (W.size() > 22) return fail("factor support too large to enumerate");
      std::vector<Combo> combos;
      for (uint32_t i : is)
        for (std::size_t ci = 0; ci < pats[i].size(); ++ci)
          combos.push_back({i, static_cast<int>(ci), &fpairs[i]});
      const auto& owner = comp[c].owner;
      for (uint32_t rbits = 0; rbits < (1u << W.size()); ++rbits) {
        std::vector<std::pair<uint32_t, uint32_t>> aff(combos.size());
        for (std::size_t t = 0; t < combos.size(); ++t)
          aff[t] = affine(combos[t], c, W, rbits);
        // forward: the class of p*r may not depend on the free part of p
        for (std::size_t t = 0; t < combos.size(); ++t) {
          int seen = -2;
          for (uint32_t v = 0; v < 16; ++v) {
            if (!(aff[t].second >> v & 1)) continue;
            uint32_t vec = aff[t].first ^ v;
            int id = vec ? owner[vec] : -1;
            if (seen == -2) seen = id;
            if (seen != id)
              return fail("equivalent elements separate at level " +
                          std::to_string(c));
          }
        }
        // backward: distinct classes may not collide at level c
        for (std::size_t t = 0; t < combos.size(); ++t)
          for (std::size_t u = t + 1; u < combos.size(); ++u)
            for (uint32_t v = 0; v < 16; ++v) {
              if (!(aff[t].second >> v & 1)) continue;
              uint32_t a = aff[t].first ^ v;
              if (!a) continue;
              for (uint32_t v2 = 0; v2 < 16; ++v2) {
                if (!(aff[u].second >> v2 & 1)) continue;
                uint32_t b2 = aff[u].first ^ v2;
                if (!b2) continue;
                if (owner[a] == owner[b2])
                  return fail("distinct classes collide at level " +
                              std::to_string(c));
              }
            }
      }
    }
    return true;
  }

  bool run(const LevelMapWitness& w) {
    if (!compile(w)) return false;
    if (!check_cosets()) return false;
    // cycle levels: levels where products from different factor levels meet
    std::set<uint32_t> cycles;
    for (uint32_t j = 0; j <= L; ++j)
      for (uint32_t i1 = 0; i1 <= L; ++i1)
        for (uint32_t i2 = i1 + 1; i2 <= L; ++i2) {
          uint32_t a = ord.g[i1][j], b = ord.g[i2][j];
          if (a != kUndef && a == b && a < zl) cycles.insert(a);
        }
    for (uint32_t c : cycles)
      if (!check_cycle_level(c)) return false;
    return true;
  }
};

}  // namespace

bool verify_matching_via_levels(const Ring& ring, const LevelMapWitness& w,
                                std::string* why) {
  const MonomialBasis* mb = ring.monomials();
  if (!mb) {
    if (why) *why = "not a monomial quotient";
    return false;
  }
  if (ring.coeff_modulus() != 2) {
    if (why) *why = "level-map verification needs coefficient field F_2";
    return false;
  }
  if (w.order.level_of.size() != mb->mons.size()) {
    if (why) *why = "order does not cover the ring's monomials";
    return false;
  }
  Verifier v{ring, *mb, w.order, why,
             static_cast<uint32_t>(w.order.levels.size()),
             w.order.zero_level()};
  return v.run(w);
}

namespace {

const std::vector<std::vector<Expo>>& knt_levels() {
  static const std::vector<std::vector<Expo>> t = {
      {{0, 0, 0}}, {{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}, {{2, 0, 0}},
      {{1, 1, 0}}, {{0, 2, 0}}, {{1, 0, 1}}, {{3, 0, 0}}, {{0, 1, 1}},
      {{0, 0, 2}}, {{2, 1, 0}}, {{1, 2, 0}}, {{0, 3, 0}}, {{2, 0, 1}},
      {{4, 0, 0}}, {{1, 1, 1}},
      {{3, 1, 0}, {0, 2, 1}, {1, 0, 2}},
      {{2, 2, 0}, {0, 1, 2}, {3, 0, 1}, {1, 3, 0}},
      {{5, 0, 0}}, {{0, 4, 0}}, {{0, 0, 3}}};
  return t;
}

const std::vector<LevelClasses>& knt_classes() {
  static const std::vector<LevelClasses> t = {
      {17, {"01*", "1*0", "*01", "111"}},
      {18, {"10**", "00*1", "*10*", "0*10", "*111", "1110"}}};
  return t;
}

const std::vector<std::vector<Expo>>& r347_levels() {
  static const std::vector<std::vector<Expo>> t = {
      {{0, 0, 0}}, {{0, 0, 1}}, {{0, 1, 0}}, {{0, 0, 2}}, {{1, 0, 0}},
      {{0, 1, 1}}, {{0, 0, 3}}, {{1, 0, 1}}, {{0, 2, 0}}, {{0, 1, 2}},
      {{1, 1, 0}}, {{0, 0, 4}}, {{1, 0, 2}}, {{0, 2, 1}}, {{0, 1, 3}},
      {{2, 0, 0}}, {{1, 1, 1}}, {{0, 0, 5}}, {{1, 0, 3}}, {{0, 3, 0}},
      {{0, 2, 2}},
      {{0, 1, 4}, {1, 2, 0}, {2, 0, 1}},
      {{1, 1, 2}}, {{0, 0, 6}},
      {{0, 2, 3}, {0, 3, 1}, {1, 0, 4}, {2, 1, 0}},
      {{0, 1, 5}, {1, 2, 1}, {2, 0, 2}},
      {{1, 1, 3}}};
  return t;
}

const std::vector<LevelClasses>& r347_classes() {
  static const std::vector<LevelClasses> t = {
      {21, {"0*1", "*10", "10*", "111"}},
      {24, {"**10", "*10*", "100*", "00*1", "0111", "1011", "1111"}},
      {25, {"0*1", "*10", "10*", "111"}}};
  return t;
}

bool monomials_match(const MonomialBasis& mb,
                     const std::vector<std::vector<Expo>>& levels) {
  std::set<Expo> expect;
  for (const auto& lvl : levels)
    for (const Expo& e : lvl)
      if (!expect.insert(e).second) return false;
  if (expect.size() != mb.mons.size()) return false;
  for (const Expo& e : mb.mons)
    if (!expect.count(e)) return false;
  return true;
}

}  // namespace

std::optional<LevelMapWitness> builtin_levelmap(const Ring& ring) {
  const MonomialBasis* mb = ring.monomials();
  if (!mb || ring.coeff_modulus() != 2 || mb->nvars != 3) return std::nullopt;
  using Cand = std::pair<const std::vector<std::vector<Expo>>*,
                         const std::vector<LevelClasses>*>;
  const Cand cands[] = {{&knt_levels(), &knt_classes()},
                        {&r347_levels(), &r347_classes()}};
  for (const auto& [levels, classes] : cands) {
    if (!monomials_match(*mb, *levels)) continue;
    auto ord = make_weak_order(*mb, *levels);
    if (!ord) return std::nullopt;
    LevelMapWitness w;
    w.order = std::move(*ord);
    w.classes = *classes;
    return w;
  }
  return std::nullopt;
}

}  // namespace ringlin
