#include "ringlin/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ringlin/levelmap.hpp"

namespace ringlin {

namespace {

using Mask = std::vector<uint64_t>;

Mask make_mask(std::size_t bits) { return Mask((bits + 63) / 64, 0); }
void mask_set(Mask& m, Elem e) { m[e / 64] |= 1ull << (e % 64); }
bool mask_get(const Mask& m, Elem e) { return (m[e / 64] >> (e % 64)) & 1; }
bool mask_subset(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}
bool mask_disjoint3(const Mask& a, const Mask& b, const Mask& c) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i] & c[i]) return false;
  return true;
}
bool mask_meets(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

std::vector<Mask> all_ann_masks(const Ring& r) {
  uint64_t n = r.size();
  std::vector<Mask> ann(n, make_mask(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem x = 0; x < n; ++x)
      if (r.mul(a, x) == 0) mask_set(ann[a], x);
  return ann;
}

std::vector<Elem> mask_elems(const Mask& m, uint64_t n) {
  std::vector<Elem> v;
  for (Elem e = 0; e < n; ++e)
    if (mask_get(m, e)) v.push_back(e);
  return v;
}

}  // namespace

// ---------- locality, quotients, decomposition ----------

bool is_local(const Ring& ring, std::vector<Elem>* maximal) {
  if (!ring.enumerable()) {
    if (ring.kind() == Ring::Kind::Sum) return false;  // >= 2 nonzero factors
    return true;  // sparse monomial quotients are local
  }
  uint64_t n = ring.size();
  std::vector<Elem> nonunits;
  for (Elem a = 0; a < n; ++a)
    if (!ring.is_unit(a)) nonunits.push_back(a);
  for (Elem a : nonunits)
    for (Elem b : nonunits)
      if (ring.is_unit(ring.add(a, b))) return false;
  if (maximal) *maximal = nonunits;
  return true;
}

uint32_t QuotientRing::add(uint32_t a, uint32_t b) const {
  return proj[base->add(reps[a], reps[b])];
}
uint32_t QuotientRing::mul(uint32_t a, uint32_t b) const {
  return proj[base->mul(reps[a], reps[b])];
}
uint32_t QuotientRing::neg(uint32_t a) const { return proj[base->neg(reps[a])]; }

QuotientRing quotient_ring(const RingPtr& ring, const std::vector<Elem>& ideal) {
  if (!ring->enumerable())
    throw std::invalid_argument("quotient_ring requires an enumerable ring");
  uint64_t n = ring->size();
  if (ideal.size() == n)
    throw std::invalid_argument("quotient by the full ring is not a ring");
  QuotientRing q;
  q.base = ring;
  q.proj.assign(n, UINT32_MAX);
  for (Elem e = 0; e < n; ++e) {
    if (q.proj[e] != UINT32_MAX) continue;
    Elem lead = e;
    for (Elem h : ideal) lead = std::min(lead, ring->add(e, h));
    auto it = std::find(q.reps.begin(), q.reps.end(), lead);
    uint32_t idx;
    if (it == q.reps.end()) {
      idx = static_cast<uint32_t>(q.reps.size());
      q.reps.push_back(lead);
    } else {
      idx = static_cast<uint32_t>(it - q.reps.begin());
    }
    for (Elem h : ideal) q.proj[ring->add(e, h)] = idx;
  }
  return q;
}

std::vector<Elem> LocalDecomposition::project(Elem a) const {
  std::vector<Elem> out(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) out[i] = proj_[i][a];
  return out;
}

Elem LocalDecomposition::lift(const std::vector<Elem>& c) const {
  if (kind_ == 0) return c.at(0);
  if (kind_ == 1) {
    uint64_t m = ring->size();
    uint64_t x = 0;
    for (std::size_t i = 0; i < factors.size(); ++i)
      x = (x + static_cast<uint64_t>(c[i]) * weight_[i]) % m;
    return static_cast<Elem>(x);
  }
  // sum path: weight_[i] holds the positional radix weight of factor i
  uint64_t x = 0;
  for (std::size_t i = 0; i < factors.size(); ++i)
    x += static_cast<uint64_t>(c[i]) * weight_[i];
  return static_cast<Elem>(x);
}

LocalDecomposition decompose_local(const RingPtr& ring) {
  LocalDecomposition d;
  d.ring = ring;
  if (ring->kind() == Ring::Kind::Zmod && !is_local(*ring)) {
    uint64_t m = ring->zmod_modulus();
    d.kind_ = 1;
    uint64_t rest = m;
    for (uint64_t p = 2; p * p <= rest; ++p) {
      if (rest % p) continue;
      uint64_t pk = 1;
      while (rest % p == 0) {
        pk *= p;
        rest /= p;
      }
      d.factors.push_back(Ring::zmod(pk));
    }
    if (rest > 1) d.factors.push_back(Ring::zmod(rest));
    for (const auto& f : d.factors) {
      uint64_t pk = f->size();
      std::vector<Elem> pr(m);
      for (uint64_t a = 0; a < m; ++a) pr[a] = static_cast<Elem>(a % pk);
      d.proj_.push_back(std::move(pr));
      uint64_t q = m / pk, inv = 0;  // q * inv = 1 mod pk
      for (uint64_t t = 0; t < pk; ++t)
        if ((q % pk) * t % pk == 1) inv = t;
      d.weight_.push_back(q * inv % m);
    }
    return d;
  }
  if (ring->kind() == Ring::Kind::Sum && ring->enumerable()) {
    d.kind_ = 2;
    uint64_t radix = ring->size();
    for (const auto& part : ring->factors()) {
      radix /= part->size();
      LocalDecomposition sub = decompose_local(part);
      uint64_t sub_radix = part->size();
      for (std::size_t i = 0; i < sub.factors.size(); ++i) {
        d.factors.push_back(sub.factors[i]);
        std::vector<Elem> pr(ring->size());
        for (uint64_t a = 0; a < ring->size(); ++a) {
          Elem comp = static_cast<Elem>((a / radix) % part->size());
          pr[a] = sub.proj_[i][comp];
        }
        d.proj_.push_back(std::move(pr));
        // weight maps a factor value back into the component, then positions it
        d.weight_.push_back(0);  // patched below via lift table approach
      }
      (void)sub_radix;
    }
    // Rebuild weights by lifting unit vectors through the structure:
    // weight_[i] = lift of (0,..,1,..,0). Compute by brute scan since the
    // composed maps are not a plain radix product for nested zmod splits.
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
      for (uint64_t a = 0; a < ring->size(); ++a) {
        bool ok = true;
        for (std::size_t j = 0; j < d.factors.size(); ++j) {
          Elem want = (j == i) ? 1 : 0;
          if (d.proj_[j][a] != want) ok = false;
        }
        if (ok) {
          d.weight_[i] = a;
          break;
        }
      }
    }
    return d;
  }
  // local ring (or anything we treat as a single factor)
  d.kind_ = 0;
  d.factors.push_back(ring);
  std::vector<Elem> idmap(ring->enumerable() ? ring->size() : 0);
  std::iota(idmap.begin(), idmap.end(), 0);
  d.proj_.push_back(std::move(idmap));
  return d;
}

// ---------- matching partitions ----------

std::vector<Elem> MatchingPartition::domain() const {
  std::vector<Elem> d;
  for (const auto& c : classes) d.insert(d.end(), c.begin(), c.end());
  std::sort(d.begin(), d.end());
  return d;
}

bool matching_check(const Ring& ring, const MatchingPartition& part,
                    std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  uint64_t n = ring.size();
  std::vector<int32_t> cls(n, -1);
  for (std::size_t i = 0; i < part.classes.size(); ++i) {
    if (part.classes[i].empty()) return fail("empty class");
    for (Elem e : part.classes[i]) {
      if (e >= n || cls[e] != -1) return fail("classes do not partition");
      cls[e] = static_cast<int32_t>(i);
    }
  }
  std::vector<Elem> dom = part.domain();
  if (dom.empty() || dom[0] != 0) return fail("domain misses 0");
  // domain is an ideal
  for (Elem a : dom) {
    for (Elem b : dom)
      if (cls[ring.sub(a, b)] == -1) return fail("domain not closed under -");
    for (Elem r = 0; r < n; ++r)
      if (cls[ring.mul(r, a)] == -1) return fail("domain not closed under *");
  }
  if (part.classes[cls[0]].size() != 1) return fail("{0} is not a class");
  // every class is a coset of an ideal
  for (const auto& c : part.classes) {
    Elem m = c[0];
    std::set<Elem> k;
    for (Elem e : c) k.insert(ring.sub(e, m));
    for (Elem a : k) {
      for (Elem b : k)
        if (!k.count(ring.sub(a, b))) return fail("class is not a coset");
      for (Elem r = 0; r < n; ++r)
        if (!k.count(ring.mul(r, a)))
          return fail("class offset set is not an ideal");
    }
  }
  // matching conditions
  for (Elem p : dom)
    for (Elem q : dom) {
      if (p >= q) continue;
      for (Elem r = 0; r < n; ++r) {
        Elem rp = ring.mul(r, p), rq = ring.mul(r, q);
        if (cls[p] == cls[q]) {
          if (cls[rp] != cls[rq])
            return fail("p=q class but rp,rq split (p=" + ring.show(p) +
                        ", q=" + ring.show(q) + ", r=" + ring.show(r) + ")");
        } else {
          if (cls[rp] == cls[rq] && !(rp == 0 && rq == 0))
            return fail("p!=q class but rp,rq collide nonzero (p=" +
                        ring.show(p) + ", q=" + ring.show(q) +
                        ", r=" + ring.show(r) + ")");
        }
      }
    }
  return true;
}

bool check_bergen_witness(const Ring& ring, const BergenWitness& w,
                          std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (w.chain.size() < 2) return fail("chain too short");
  if (w.chain.front().size() != ring.size()) return fail("chain must start at R");
  if (w.chain.back() != std::vector<Elem>{0}) return fail("chain must end at {0}");
  for (std::size_t i = 0; i + 1 < w.chain.size(); ++i) {
    const auto& big = w.chain[i];
    const auto& small = w.chain[i + 1];
    if (small.size() >= big.size() ||
        !std::includes(big.begin(), big.end(), small.begin(), small.end()))
      return fail("chain not strictly descending at level " + std::to_string(i));
  }
  if (w.parts.size() + 1 != w.chain.size()) return fail("partition count");
  Int gamma = 1;
  for (std::size_t i = 0; i < w.parts.size(); ++i) {
    if (w.parts[i].domain() != w.chain[i])
      return fail("partition domain mismatch at level " + std::to_string(i));
    std::string sub;
    if (!matching_check(ring, w.parts[i], &sub))
      return fail("level " + std::to_string(i) + ": " + sub);
    // absorption
    const auto& nxt = w.chain[i + 1];
    for (const auto& c : w.parts[i].classes)
      for (Elem a : c)
        for (Elem b : c)
          if (!std::binary_search(nxt.begin(), nxt.end(), ring.sub(a, b)))
            return fail("absorption fails at level " + std::to_string(i));
    gamma *= Int(static_cast<uint64_t>(w.parts[i].classes.size()));
  }
  if (gamma != w.gamma) return fail("gamma mismatch");
  return true;
}

// ---------- predicates ----------

bool is_chain(const Ring& ring, std::pair<Elem, Elem>* counter) {
  if (!ring.enumerable()) {
    const MonomialBasis* mb = ring.monomials();
    if (!mb) return false;  // a non-enumerable sum is never a chain ring
    for (std::size_t i = 0; i < mb->mons.size(); ++i)
      for (std::size_t j = i + 1; j < mb->mons.size(); ++j)
        if (!expo_divides(mb->mons[i], mb->mons[j]) &&
            !expo_divides(mb->mons[j], mb->mons[i]))
          return false;
    return true;
  }
  uint64_t n = ring.size();
  std::vector<Mask> pr(n);
  for (Elem a = 0; a < n; ++a) {
    pr[a] = make_mask(n);
    for (Elem r = 0; r < n; ++r) mask_set(pr[a], ring.mul(r, a));
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = static_cast<Elem>(a + 1); b < n; ++b)
      if (!mask_subset(pr[a], pr[b]) && !mask_subset(pr[b], pr[a])) {
        if (counter) *counter = {a, b};
        return false;
      }
  return true;
}

bool is_lineal(const Ring& ring, std::optional<LinealWitness>* counter) {
  if (counter) counter->reset();
  if (!ring.enumerable())
    throw std::invalid_argument("is_lineal requires an enumerable ring");
  uint64_t n = ring.size();
  auto ann = all_ann_masks(ring);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = static_cast<Elem>(a + 1); b < n; ++b) {
      if (mask_subset(ann[a], ann[b]) || mask_subset(ann[b], ann[a])) continue;
      if (counter) {
        LinealWitness w;
        w.a = a;
        w.b = b;
        for (Elem f = 0; f < n; ++f)
          if (mask_get(ann[a], f) && !mask_get(ann[b], f)) {
            w.f = f;
            break;
          }
        for (Elem g = 0; g < n; ++g)
          if (mask_get(ann[b], g) && !mask_get(ann[a], g)) {
            w.g = g;
            break;
          }
        *counter = w;
      }
      return false;
    }
  return true;
}

bool magic_square_ok(const Ring& ring,
                     std::optional<std::array<Elem, 4>>* counter) {
  if (counter) counter->reset();
  uint64_t n = ring.size();
  auto ann = all_ann_masks(ring);
  // want a,b,c,d with ab=0, cd=0, ad!=0, bc!=0
  for (Elem a = 0; a < n; ++a)
    for (Elem d = 0; d < n; ++d) {
      if (ring.mul(a, d) == 0) continue;
      for (Elem b = 0; b < n; ++b) {
        if (!mask_get(ann[a], b)) continue;
        for (Elem c = 0; c < n; ++c) {
          if (!mask_get(ann[d], c)) continue;
          if (ring.mul(b, c) != 0) {
            if (counter) *counter = {a, b, c, d};
            return false;
          }
        }
      }
    }
  return true;
}

bool is_helly(const Ring& ring, std::optional<Tangle>* tangle) {
  if (tangle) tangle->reset();
  if (!ring.enumerable())
    throw std::invalid_argument("is_helly requires an enumerable ring");
  uint64_t n = ring.size();
  auto ann = all_ann_masks(ring);
  if (n <= 64) {
    // coset masks Ann(c)+d
    std::vector<std::vector<Mask>> coset(n, std::vector<Mask>(n));
    for (Elem c = 0; c < n; ++c)
      for (Elem d = 0; d < n; ++d) {
        coset[c][d] = make_mask(n);
        for (Elem e = 0; e < n; ++e)
          if (mask_get(ann[c], e)) mask_set(coset[c][d], ring.add(e, d));
      }
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          for (Elem d = 0; d < n; ++d) {
            const Mask& c3 = coset[c][d];
            if (!mask_meets(ann[a], c3) || !mask_meets(ann[b], c3)) continue;
            if (mask_disjoint3(ann[a], ann[b], c3)) {
              if (tangle) *tangle = Tangle{a, b, c, d};
              return false;
            }
          }
    return true;
  }
  // larger rings: iterate distinct annihilators and coset representatives
  std::vector<Elem> ann_reps;
  {
    std::set<Mask> seen;
    for (Elem a = 0; a < n; ++a)
      if (seen.insert(ann[a]).second) ann_reps.push_back(a);
  }
  for (Elem a : ann_reps)
    for (Elem b : ann_reps) {
      for (Elem c : ann_reps) {
        std::vector<char> done(n, 0);
        for (Elem d = 0; d < n; ++d) {
          if (done[d]) continue;
          Mask c3 = make_mask(n);
          for (Elem e = 0; e < n; ++e)
            if (mask_get(ann[c], e)) {
              Elem x = ring.add(e, d);
              c3[x / 64] |= 1ull << (x % 64);
              done[x] = 1;
            }
          if (!mask_meets(ann[a], c3) || !mask_meets(ann[b], c3)) continue;
          if (mask_disjoint3(ann[a], ann[b], c3)) {
            if (tangle) *tangle = Tangle{a, b, c, d};
            return false;
          }
        }
      }
    }
  return true;
}

// ---------- witness constructions ----------

namespace {

// All ideals of an enumerable ring as element bitmasks (closure of the
// principal ideals under ideal sum).
std::vector<Mask> all_ideals(const Ring& ring) {
  uint64_t n = ring.size();
  std::set<Mask> ideals;
  for (Elem a = 0; a < n; ++a) {
    Mask m = make_mask(n);
    for (Elem r = 0; r < n; ++r) mask_set(m, ring.mul(r, a));
    ideals.insert(m);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> cur(ideals.begin(), ideals.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        Mask s = make_mask(n);
        for (Elem a = 0; a < n; ++a) {
          if (!mask_get(cur[i], a)) continue;
          for (Elem b = 0; b < n; ++b)
            if (mask_get(cur[j], b)) mask_set(s, ring.add(a, b));
        }
        if (ideals.insert(s).second) grew = true;
      }
  }
  return {ideals.begin(), ideals.end()};
}

}  // namespace

BergenWitness chain_witness(const RingPtr& ring) {
  std::pair<Elem, Elem> cc;
  if (!ring->enumerable() || !is_chain(*ring, &cc))
    throw std::invalid_argument("chain_witness requires a chain ring");
  uint64_t n = ring->size();
  // in a chain ring every ideal is principal
  std::set<std::vector<Elem>> seen;
  std::vector<std::vector<Elem>> ideals;
  for (Elem a = 0; a < n; ++a) {
    auto p = ring->principal_ideal(a);
    if (seen.insert(p).second) ideals.push_back(p);
  }
  std::sort(ideals.begin(), ideals.end(),
            [](const auto& x, const auto& y) { return x.size() > y.size(); });
  BergenWitness w;
  w.chain = ideals;  // I_0 = R ... I_l = {0}
  std::size_t ell = ideals.size() - 1;
  for (std::size_t i = 0; i < ell; ++i) {
    MatchingPartition part;
    part.classes.push_back({0});
    for (std::size_t j = i; j < ell; ++j) {
      // cosets of I_{j+1} within I_j \ I_{j+1}
      const auto& big = ideals[j];
      const auto& small = ideals[j + 1];
      std::set<Elem> left(big.begin(), big.end());
      for (Elem e : small) left.erase(e);
      while (!left.empty()) {
        Elem m = *left.begin();
        std::vector<Elem> cls;
        for (Elem h : small) {
          Elem x = ring->add(m, h);
          cls.push_back(x);
          left.erase(x);
        }
        std::sort(cls.begin(), cls.end());
        part.classes.push_back(std::move(cls));
      }
    }
    std::sort(part.classes.begin(), part.classes.end());
    w.gamma *= Int(static_cast<uint64_t>(part.classes.size()));
    w.parts.push_back(std::move(part));
  }
  return w;
}

std::optional<ThresholdLabelling> threshold_labelling(const Ring& ring) {
  if (!ring.enumerable()) return std::nullopt;
  uint64_t n = ring.size();
  auto ann = all_ann_masks(ring);
  // distinct annihilators must form a chain
  std::map<Mask, std::size_t> rank_of;
  {
    std::set<Mask> distinct(ann.begin(), ann.end());
    std::vector<Mask> chain(distinct.begin(), distinct.end());
    std::sort(chain.begin(), chain.end(), [](const Mask& a, const Mask& b) {
      uint64_t pa = 0, pb = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        pa += __builtin_popcountll(a[i]);
        pb += __builtin_popcountll(b[i]);
      }
      return pa < pb;
    });
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      if (!mask_subset(chain[i], chain[i + 1])) return std::nullopt;
    for (std::size_t i = 0; i < chain.size(); ++i) rank_of[chain[i]] = i;
  }
  std::size_t m = rank_of.size() - 1;  // ranks 0..m, rank m = element 0
  std::vector<std::size_t> rank(n);
  std::vector<Elem> rep(m + 1, 0);
  for (Elem a = 0; a < n; ++a) {
    rank[a] = rank_of[ann[a]];
    rep[rank[a]] = a;  // any representative works
  }
  // staircase LP: labels L_0..L_m, threshold T; L_m = T
  std::size_t nv = m + 2;
  std::vector<LinCons> cons;
  auto var = [&](std::size_t i) {
    std::vector<Rat> a(nv, Rat(0));
    a[i] = Rat(1);
    return a;
  };
  cons.push_back({var(0), RelOp::EQ, Rat(0)});
  for (std::size_t i = 0; i + 1 <= m; ++i) {
    LinCons c{var(i), RelOp::LE, Rat(0)};
    c.a[i + 1] = Rat(-1);
    cons.push_back(std::move(c));  // L_i <= L_{i+1}
  }
  {
    LinCons c{var(m), RelOp::EQ, Rat(0)};
    c.a[m + 1] = Rat(-1);
    cons.push_back(std::move(c));  // L_m = T
  }
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = i; j <= m; ++j) {
      LinCons c{var(i), RelOp::GE, Rat(0)};
      c.a[j] += Rat(1);
      c.a[m + 1] = Rat(-1);  // L_i + L_j - T
      if (ring.mul(rep[i], rep[j]) == 0) {
        c.op = RelOp::GE;
      } else {
        c.op = RelOp::LT;
      }
      cons.push_back(std::move(c));
    }
  auto sol = lp_feasible_point(nv, cons);
  if (!sol) return std::nullopt;
  ThresholdLabelling lab;
  lab.threshold = (*sol)[m + 1];
  lab.label.resize(n);
  for (Elem a = 0; a < n; ++a) lab.label[a] = (*sol)[rank[a]];
  // flags
  if (const MonomialBasis* mb = ring.monomials()) {
    lab.monomial = true;
    std::size_t nm = mb->mons.size();
    uint64_t q = ring.coeff_modulus();
    std::vector<Rat> mono_label(nm);
    for (std::size_t d = 0; d < nm; ++d) {
      uint64_t w = 1;
      for (std::size_t t = d + 1; t < nm; ++t) w *= q;
      mono_label[d] = lab.label[static_cast<Elem>(w)];  // element = 1*mon_d
    }
    for (Elem a = 1; a < n && lab.monomial; ++a) {
      Rat mn = lab.threshold;
      uint64_t v = a;
      for (std::size_t d = 0; d < nm; ++d) {
        uint64_t w = 1;
        for (std::size_t t = d + 1; t < nm; ++t) w *= q;
        if ((v / w) % q != 0) mn = std::min(mn, mono_label[d]);
      }
      if (mn != lab.label[a]) lab.monomial = false;
    }
  }
  lab.linear = true;
  for (Elem u = 1; u < n && lab.linear; ++u)
    for (Elem v = 1; v < n; ++v) {
      Elem uv = ring.mul(u, v);
      if (uv == 0) continue;
      if (lab.label[uv] != lab.label[u] + lab.label[v]) {
        lab.linear = false;
        break;
      }
    }
  return lab;
}

ThresholdLabelling labelling_from_separation(const Ring& ring,
                                             const Separation& sep) {
  const MonomialBasis* mb = ring.monomials();
  if (!mb || !ring.enumerable())
    throw std::invalid_argument(
        "labelling_from_separation requires an enumerable monomial ring");
  uint64_t n = ring.size();
  uint64_t q = ring.coeff_modulus();
  std::size_t nm = mb->mons.size();
  std::vector<Rat> mono_label(nm, Rat(0));
  for (std::size_t d = 0; d < nm; ++d)
    for (std::size_t i = 0; i < mb->nvars; ++i)
      mono_label[d] += sep.w[i] * Rat(Int(mb->mons[d][i]));
  ThresholdLabelling lab;
  lab.threshold = sep.threshold;
  lab.monomial = true;
  lab.label.assign(n, sep.threshold);
  for (Elem a = 1; a < n; ++a) {
    Rat mn = sep.threshold;
    uint64_t v = a;
    for (std::size_t d = 0; d < nm; ++d) {
      uint64_t w = 1;
      for (std::size_t t = d + 1; t < nm; ++t) w *= q;
      if ((v / w) % q != 0) mn = std::min(mn, mono_label[d]);
    }
    lab.label[a] = mn;
  }
  lab.linear = true;
  for (Elem u = 1; u < n && lab.linear; ++u)
    for (Elem v = 1; v < n; ++v) {
      Elem uv = ring.mul(u, v);
      if (uv == 0) continue;
      if (lab.label[uv] != lab.label[u] + lab.label[v]) {
        lab.linear = false;
        break;
      }
    }
  return lab;
}

BergenWitness threshold_witness(const RingPtr& ring,
                                const ThresholdLabelling& lab) {
  if (!lab.linear)
    throw std::invalid_argument("threshold_witness needs a linear labelling");
  uint64_t n = ring->size();
  std::vector<Rat> labels;
  for (Elem a = 0; a < n; ++a) labels.push_back(lab.label[a]);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  // chain I_j = { v : L(v) >= labels[j] }
  BergenWitness w;
  for (const Rat& cut : labels) {
    std::vector<Elem> ideal;
    for (Elem a = 0; a < n; ++a)
      if (lab.label[a] >= cut) ideal.push_back(a);
    w.chain.push_back(std::move(ideal));
  }
  for (std::size_t j = 0; j + 1 < w.chain.size(); ++j) {
    // classes of ==_L restricted to I_j: same label, same coset of the
    // next sublevel ideal
    const auto& dom = w.chain[j];
    std::map<std::pair<std::size_t, Elem>, std::vector<Elem>> groups;
    for (Elem a : dom) {
      std::size_t li =
          std::lower_bound(labels.begin(), labels.end(), lab.label[a]) -
          labels.begin();
      // coset key: minimal element of a + L_{label(a)^+}
      Elem key = a;
      if (li + 1 < labels.size()) {
        for (Elem h = 0; h < n; ++h)
          if (lab.label[h] >= labels[li + 1])
            key = std::min(key, ring->add(a, h));
      }
      groups[{li, key}].push_back(a);
    }
    MatchingPartition part;
    for (auto& kv : groups) {
      std::sort(kv.second.begin(), kv.second.end());
      part.classes.push_back(std::move(kv.second));
    }
    std::sort(part.classes.begin(), part.classes.end());
    w.gamma *= Int(static_cast<uint64_t>(part.classes.size()));
    w.parts.push_back(std::move(part));
  }
  return w;
}

// ---------- bergen search ----------

namespace {

struct UnionFind {
  std::vector<int32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n, -1) {}
  int32_t find(int32_t x) {
    while (parent[x] >= 0) {
      if (parent[parent[x]] >= 0) parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // keep minimal element as root
    parent[b] = a;
    return true;
  }
};

struct PairSearch {
  const Ring& ring;
  std::vector<Elem> I, J;
  std::vector<char> inI, inJ;
  uint64_t* budget;

  PairSearch(const Ring& r, std::vector<Elem> i, std::vector<Elem> j,
             uint64_t* b)
      : ring(r), I(std::move(i)), J(std::move(j)), budget(b) {
    inI.assign(ring.size(), 0);
    inJ.assign(ring.size(), 0);
    for (Elem e : I) inI[e] = 1;
    for (Elem e : J) inJ[e] = 1;
  }

  // Applies all forced consequences; false = no valid partition refines uf.
  bool stabilize(UnionFind& uf) {
    if (*budget == 0) return false;
    --*budget;
    uint64_t n = ring.size();
    bool changed = true;
    while (changed) {
      changed = false;
      // absorption + zero class
      for (Elem p : I)
        for (Elem q : I) {
          if (p >= q || uf.find(p) != uf.find(q)) continue;
          if (!inJ[ring.sub(p, q)]) return false;
          if (uf.find(p) == uf.find(0)) return false;  // nonzero joined 0
        }
      // forward: p ~ q forces rp ~ rq (fails if exactly one lands on 0)
      for (Elem p : I)
        for (Elem q : I) {
          if (p >= q || uf.find(p) != uf.find(q)) continue;
          for (Elem r = 0; r < n; ++r) {
            Elem rp = ring.mul(r, p), rq = ring.mul(r, q);
            if (rp == rq) continue;
            if (rp == 0 || rq == 0) return false;
            if (uf.unite(rp, rq)) changed = true;
          }
        }
      // backward: rp ~ rq (not both 0) forces p ~ q
      for (Elem p : I)
        for (Elem q : I) {
          if (p >= q || uf.find(p) == uf.find(q)) continue;
          for (Elem r = 0; r < n; ++r) {
            Elem rp = ring.mul(r, p), rq = ring.mul(r, q);
            if (rp == 0 && rq == 0) continue;
            if (uf.find(rp) == uf.find(rq)) {
              if (uf.unite(p, q)) changed = true;
              break;
            }
          }
        }
      // coset repair: each class must be min-rep + ideal
      for (Elem m : I) {
        if (uf.find(m) != m) continue;  // class root = minimal member
        std::vector<Elem> offs;
        for (Elem e : I)
          if (uf.find(e) == m) offs.push_back(ring.sub(e, m));
        auto k = ring.ideal_generated(offs);
        for (Elem h : k) {
          Elem x = ring.add(m, h);
          if (!inI[x]) return false;
          if (uf.unite(m, x)) changed = true;
        }
      }
    }
    return true;
  }

  std::vector<std::vector<Elem>> classes_of(UnionFind& uf) {
    std::map<int32_t, std::vector<Elem>> g;
    for (Elem e : I) g[uf.find(e)].push_back(e);
    std::vector<std::vector<Elem>> out;
    for (auto& kv : g) out.push_back(std::move(kv.second));
    return out;
  }

  std::optional<MatchingPartition> best;
  std::set<std::vector<int32_t>> visited;

  void dfs(UnionFind uf) {
    std::vector<int32_t> sig;
    for (Elem e : I) sig.push_back(uf.find(e));
    if (!visited.insert(sig).second) return;
    auto cls = classes_of(uf);
    if (!best || cls.size() < best->classes.size()) {
      MatchingPartition p;
      p.classes = cls;
      std::sort(p.classes.begin(), p.classes.end());
      best = std::move(p);
    }
    if (*budget == 0) return;
    // try merging pairs of classes (never the {0} class)
    std::vector<Elem> roots;
    for (Elem e : I)
      if (uf.find(e) == static_cast<int32_t>(e) && e != 0) roots.push_back(e);
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        if (!inJ[ring.sub(roots[i], roots[j])]) continue;  // absorption
        UnionFind uf2 = uf;
        uf2.unite(roots[i], roots[j]);
        if (stabilize(uf2)) dfs(std::move(uf2));
        if (*budget == 0) return;
      }
  }

  std::optional<MatchingPartition> run() {
    UnionFind uf(ring.size());
    // direct forced merges: rp == rq != 0
    for (Elem p : I)
      for (Elem q : I) {
        if (p >= q) continue;
        for (Elem r = 0; r < ring.size(); ++r) {
          Elem rp = ring.mul(r, p), rq = ring.mul(r, q);
          if (rp == rq && rp != 0) {
            uf.unite(p, q);
            break;
          }
        }
      }
    if (!stabilize(uf)) return std::nullopt;
    dfs(std::move(uf));
    return best;
  }
};

}  // namespace

std::optional<BergenWitness> bergen_search(const RingPtr& ring,
                                           BergenSearchLimits limits) {
  if (!ring->enumerable() || ring->size() > limits.size_cap)
    return std::nullopt;
  const Ring& r = *ring;
  uint64_t n = r.size();
  uint64_t budget = limits.node_budget;
  std::vector<Mask> ideals = all_ideals(r);
  // sort ascending by (size, mask) for DP and lexicographic tie-breaks
  auto count = [](const Mask& m) {
    uint64_t c = 0;
    for (uint64_t w : m) c += __builtin_popcountll(w);
    return c;
  };
  std::sort(ideals.begin(), ideals.end(), [&](const Mask& a, const Mask& b) {
    uint64_t ca = count(a), cb = count(b);
    if (ca != cb) return ca < cb;
    return a < b;
  });
  struct Entry {
    Int gamma;
    std::vector<std::size_t> chain;  // indices into ideals, small to big
    std::vector<MatchingPartition> parts;
  };
  std::vector<std::optional<Entry>> dp(ideals.size());
  std::map<std::pair<std::size_t, std::size_t>,
           std::optional<MatchingPartition>>
      pair_cache;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    if (count(ideals[i]) == 1) {
      dp[i] = Entry{Int(1), {i}, {}};
      continue;
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!dp[j] || !mask_subset(ideals[j], ideals[i])) continue;
      auto key = std::make_pair(i, j);
      if (!pair_cache.count(key)) {
        PairSearch ps(r, mask_elems(ideals[i], n), mask_elems(ideals[j], n),
                      &budget);
        pair_cache[key] = ps.run();
      }
      const auto& part = pair_cache[key];
      if (!part) continue;
      Int g = Int(static_cast<uint64_t>(part->classes.size())) * dp[j]->gamma;
      std::vector<std::size_t> chain = dp[j]->chain;
      chain.push_back(i);
      bool better = !dp[i] || g < dp[i]->gamma;
      if (dp[i] && g == dp[i]->gamma) {
        // lexicographically smallest chain of ideal bitmasks, top-down
        std::vector<Mask> a, b;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
          a.push_back(ideals[*it]);
        for (auto it = dp[i]->chain.rbegin(); it != dp[i]->chain.rend(); ++it)
          b.push_back(ideals[*it]);
        better = a < b;
      }
      if (better) {
        Entry e;
        e.gamma = g;
        e.chain = std::move(chain);
        e.parts = dp[j]->parts;
        e.parts.push_back(*part);
        dp[i] = std::move(e);
      }
    }
  }
  std::size_t top = ideals.size() - 1;  // R has maximal size
  if (!dp[top]) return std::nullopt;
  BergenWitness w;
  w.gamma = dp[top]->gamma;
  for (auto it = dp[top]->chain.rbegin(); it != dp[top]->chain.rend(); ++it)
    w.chain.push_back(mask_elems(ideals[*it], n));
  for (auto it = dp[top]->parts.rbegin(); it != dp[top]->parts.rend(); ++it)
    w.parts.push_back(*it);
  return w;
}

// ---------- combined report ----------

Classification classify(const RingPtr& ring, BergenSearchLimits limits) {
  Classification out;
  const Ring& r = *ring;
  if (r.enumerable()) {
    std::pair<Elem, Elem> cc;
    out.chain = is_chain(r, &cc);
    if (!out.chain) out.chain_counter = {r.show(cc.first), r.show(cc.second)};
    out.local = is_local(r);
    std::optional<LinealWitness> lw;
    bool lin = is_lineal(r, &lw);
    out.lineal = lin ? TriState::Yes : TriState::No;
    if (lw)
      out.lineal_counter = {r.show(lw->a), r.show(lw->b), r.show(lw->f),
                            r.show(lw->g)};
    std::optional<Tangle> tg;
    out.helly = is_helly(r, &tg) ? TriState::Yes : TriState::No;
    if (tg)
      out.tangle_counter = {r.show(tg->a), r.show(tg->b), r.show(tg->c),
                            r.show(tg->d)};
    if (!lin) {
      out.bergen = BergenStatus::RefutedViaLineal;
      return out;
    }
    struct Cand {
      BergenWitness w;
      std::string route;
      int prio;
    };
    std::vector<Cand> cands;
    if (out.chain) cands.push_back({chain_witness(ring), "chain", 0});
    if (r.monomials() && !r.monomials()->mons.empty()) {
      auto sep = hyperplane_separation(exponent_model(r));
      if (sep) {
        auto lab = labelling_from_separation(r, *sep);
        if (lab.linear) {
          auto w = threshold_witness(ring, lab);
          if (check_bergen_witness(r, w))
            cands.push_back({std::move(w), "threshold", 1});
        }
      }
    }
    if (auto w = bergen_search(ring, limits))
      cands.push_back({std::move(*w), "search", 2});
    const Cand* bestc = nullptr;
    for (const auto& c : cands)
      if (!bestc || c.w.gamma < bestc->w.gamma ||
          (c.w.gamma == bestc->w.gamma && c.prio < bestc->prio))
        bestc = &c;
    if (bestc) {
      out.bergen = BergenStatus::Found;
      out.gamma = bestc->w.gamma;
      out.witness = bestc->w;
      out.bergen_route = bestc->route;
    } else {
      out.bergen = BergenStatus::NoneWithinLimits;
    }
    return out;
  }
  if (r.monomials()) {
    // sparse monomial quotient: geometric + level-map routes
    ExponentModel model = exponent_model(r);
    out.chain = is_chain(r);
    out.local = true;
    std::optional<ConditionPWitness> cw;
    bool lin = condition_p(model, &cw);
    out.lineal = lin ? TriState::Yes : TriState::No;
    if (cw) {
      auto show = [&](const Expo& e) {
        std::string s;
        for (std::size_t i = 0; i < model.n; ++i) {
          if (!e[i]) continue;
          if (!s.empty()) s += "*";
          s += model.vars[i];
          if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s.empty() ? std::string("1") : s;
      };
      out.lineal_counter = {show(cw->q1), show(cw->q2), show(cw->p1),
                            show(cw->p2)};
    }
    bool zhf = is_z_hole_free(model);
    if (!lin) {
      out.bergen = BergenStatus::RefutedViaLineal;
      out.helly = zhf ? TriState::Yes : TriState::Unknown;
      return out;
    }
    if (auto lm = builtin_levelmap(r)) {
      std::string why;
      if (verify_matching_via_levels(r, *lm, &why)) {
        out.bergen = BergenStatus::Found;
        out.bergen_route = "level-map";
      } else {
        out.bergen = BergenStatus::NoneWithinLimits;
      }
    } else {
      out.bergen = BergenStatus::NoneWithinLimits;
    }
    if (zhf || out.bergen == BergenStatus::Found)
      out.helly = TriState::Yes;  // hole-free or Bergen (hence lineal) rings
    else
      out.helly = TriState::Unknown;
    return out;
  }
  // non-enumerable direct sum: never local, hence not lineal / not Bergen
  out.chain = false;
  out.local = false;
  out.lineal = TriState::No;
  out.bergen = BergenStatus::RefutedViaLineal;
  TriState h = TriState::Yes;
  for (const auto& f : r.factors()) {
    Classification sub = classify(f, limits);
    if (sub.helly == TriState::No) {
      h = TriState::No;
      break;
    }
    if (sub.helly == TriState::Unknown) h = TriState::Unknown;
  }
  out.helly = h;
  return out;
}

}  // namespace ringlin
