#include "ringlin/ring.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ringlin {

uint32_t Poly::max_degree() const {
  uint32_t d = 0;
  for (const auto& [e, c] : terms) {
    uint32_t t = 0;
    for (auto x : e) t += x;
    d = std::max(d, t);
  }
  return d;
}

std::optional<std::pair<uint64_t, uint32_t>> prime_power(uint64_t n) {
  if (n < 2) return std::nullopt;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    uint32_t r = 0;
    uint64_t m = n;
    while (m % p == 0) {
      m /= p;
      ++r;
    }
    if (m != 1) return std::nullopt;
    return std::make_pair(p, r);
  }
  return std::make_pair(n, 1u);  // n itself is prime
}

// ---------------------------------------------------------------------------
// construction

RingPtr Ring::zmod(uint64_t m) {
  if (m < 2 || m > kDenseCap)
    throw std::invalid_argument("zmod modulus out of range");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = Kind::Zmod;
  r->mod_ = m;
  r->size_ = m;
  r->enumerable_ = true;
  r->pres_moduli_ = {m};
  r->maybe_build_tables();
  return r;
}

RingPtr Ring::monomial_quot(uint64_t q, MonomialBasis basis) {
  auto pp = prime_power(q);
  if (!pp) throw std::invalid_argument("coefficient modulus must be a prime power");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = Kind::PolyQuot;
  r->p_ = pp->first;
  r->r_ = pp->second;
  r->q_ = q;
  r->mono_ = std::make_unique<MonomialBasis>(std::move(basis));
  const std::size_t t = r->mono_->mons.size();
  // size q^t, detecting overflow of the dense cap
  uint64_t size = 1;
  bool dense = true;
  for (std::size_t i = 0; i < t; ++i) {
    size *= q;
    if (size > kDenseCap) {
      dense = false;
      break;
    }
  }
  r->enumerable_ = dense;
  r->size_ = dense ? size : 0;
  if (dense) {
    r->pres_moduli_.assign(t, q);
    r->maybe_build_tables();
  }
  return r;
}

namespace {

// enumerate all monomials over n variables with total degree <= d
std::vector<Expo> all_monomials(std::size_t n, uint32_t d) {
  std::vector<Expo> out;
  Expo e(n, 0);
  // iterate with degree cut: odometer with pruning
  while (true) {
    uint32_t deg = 0;
    for (auto x : e) deg += x;
    if (deg <= d) out.push_back(e);
    std::size_t v = 0;
    while (v < n) {
      if (++e[v] <= d) {
        uint32_t s = 0;
        for (auto x : e) s += x;
        if (s <= d) break;
      }
      e[v] = 0;
      ++v;
    }
    if (v == n) break;
  }
  std::sort(out.begin(), out.end(), grlex_less);
  return out;
}

// lattice membership structure: SNF of relation rows over given monomials
struct Lattice {
  std::map<Expo, std::size_t> idx;
  SmithForm f;
  std::size_t dim;

  bool contains(const std::vector<Int>& w) const {
    // The lattice is spanned by the relation rows; V^T maps it onto the
    // diagonal lattice, so (V^T w)_i must be divisible by s_i.
    for (std::size_t i = 0; i < dim; ++i) {
      Int c = 0;
      for (std::size_t j = 0; j < dim; ++j) c += f.v[j][i] * w[j];
      if (i < f.rank) {
        if (f.s[i][i] != 0 && c % f.s[i][i] != 0) return false;
        if (f.s[i][i] == 0 && c != 0) return false;
      } else if (c != 0) {
        return false;
      }
    }
    return true;
  }
};

Lattice build_lattice(uint64_t q, const std::vector<Expo>& mons,
                      const std::vector<Poly>& gens, uint32_t deg_cap) {
  Lattice lat;
  lat.dim = mons.size();
  for (std::size_t i = 0; i < mons.size(); ++i) lat.idx[mons[i]] = i;
  IntMat rows;
  const std::size_t n = mons.empty() ? 0 : mons[0].size();
  for (const auto& g : gens) {
    uint32_t gd = g.max_degree();
    for (const auto& m : mons) {
      uint32_t md = 0;
      for (auto x : m) md += x;
      if (md + gd > deg_cap) continue;
      std::vector<Int> row(lat.dim, 0);
      bool any = false;
      for (const auto& [e, c] : g.terms) {
        Expo pe = expo_add(m, e);
        auto it = lat.idx.find(pe);
        if (it != lat.idx.end()) {
          row[it->second] += c;
          any = true;
        }
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  for (std::size_t i = 0; i < lat.dim; ++i) {
    std::vector<Int> row(lat.dim, 0);
    row[i] = static_cast<int64_t>(q);
    rows.push_back(std::move(row));
  }
  (void)n;
  lat.f = smith_normal_form(std::move(rows));
  return lat;
}

}  // namespace

RingPtr Ring::poly_quot(uint64_t q, std::vector<std::string> vars,
                        const std::vector<Poly>& gens) {
  auto pp = prime_power(q);
  if (!pp) throw std::invalid_argument("coefficient modulus must be a prime power");
  const uint64_t p = pp->first;

  // monomial path: every generator is a single term with unit coefficient
  bool monomial = true;
  for (const auto& g : gens) {
    if (g.terms.size() != 1) monomial = false;
    else if (g.terms.begin()->second % static_cast<int64_t>(p) == 0) monomial = false;
  }
  if (monomial) {
    std::vector<Expo> ge;
    for (const auto& g : gens) ge.push_back(g.terms.begin()->first);
    return monomial_quot(q, make_monomial_basis(std::move(vars), std::move(ge)));
  }

  // non-monomial path: truncated linear algebra over Z_q
  const std::size_t n = vars.size();
  uint32_t maxdeg = 1;
  for (const auto& g : gens) maxdeg = std::max(maxdeg, g.max_degree());

  // find D*: least degree such that all monomials of degree >= D* lie in the
  // ideal; verified on a window of width maxdeg inside an enlarged module
  uint32_t dstar = 0;
  for (uint32_t cap = 2 * maxdeg + 2; cap <= 26 && !dstar; cap += 2) {
    auto mons = all_monomials(n, cap);
    Lattice lat = build_lattice(q, mons, gens, cap);
    uint32_t top = cap - maxdeg;
    for (uint32_t d = 1; d + maxdeg <= top; ++d) {
      bool all_in = true;
      for (const auto& m : mons) {
        uint32_t md = 0;
        for (auto x : m) md += x;
        if (md < d || md > d + maxdeg) continue;
        std::vector<Int> w(mons.size(), 0);
        w[lat.idx.at(m)] = 1;
        if (!lat.contains(w)) {
          all_in = false;
          break;
        }
      }
      if (all_in) {
        dstar = d;
        break;
      }
    }
  }
  if (!dstar)
    throw std::invalid_argument("quotient is not Artinian within degree limits");

  // working module: monomials of degree < D*
  auto wm = all_monomials(n, dstar - 1);
  std::map<Expo, std::size_t> widx;
  for (std::size_t i = 0; i < wm.size(); ++i) widx[wm[i]] = i;
  IntMat rows;
  for (const auto& g : gens) {
    for (const auto& m : wm) {
      std::vector<Int> row(wm.size(), 0);
      bool any = false;
      for (const auto& [e, c] : g.terms) {
        Expo pe = expo_add(m, e);
        auto it = widx.find(pe);
        if (it != widx.end()) {
          row[it->second] += c;
          any = true;
        }
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  for (std::size_t i = 0; i < wm.size(); ++i) {
    std::vector<Int> row(wm.size(), 0);
    row[i] = static_cast<int64_t>(q);
    rows.push_back(std::move(row));
  }
  SmithForm f = smith_normal_form(std::move(rows));
  if (f.rank != wm.size())
    throw std::logic_error("relation lattice unexpectedly rank-deficient");

  auto qd = std::make_unique<QuotientData>();
  for (const auto& g : gens) {
    std::string s;
    for (const auto& [e, c] : g.terms) {
      int64_t cv = c % static_cast<int64_t>(q);
      if (cv < 0) cv += static_cast<int64_t>(q);
      if (!cv) continue;
      if (!s.empty()) s += "+";
      std::string m;
      for (std::size_t v = 0; v < n; ++v) {
        if (!e[v]) continue;
        if (!m.empty()) m += "*";
        m += vars[v];
        if (e[v] > 1) m += "^" + std::to_string(e[v]);
      }
      if (m.empty())
        s += std::to_string(cv);
      else if (cv == 1)
        s += m;
      else
        s += std::to_string(cv) + "*" + m;
    }
    if (!s.empty()) qd->gens_text.push_back(std::move(s));
  }
  qd->work_mons = wm;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < wm.size(); ++i) {
    Int s = f.s[i][i];
    if (s < 0) s = -s;
    if (s > 1) {
      kept.push_back(i);
      qd->moduli.push_back(static_cast<uint64_t>(s));
    }
  }
  // The relation lattice is spanned by rows; the additive quotient is
  // w -> (V^T w)_i mod s_i with representative of coordinate i being
  // row i of V^{-1} (since V^T (V^{-1})^T e_i = e_i).
  std::vector<std::vector<Int>> proj, reps;
  for (auto i : kept) {
    std::vector<Int> row(wm.size());
    for (std::size_t j = 0; j < wm.size(); ++j) row[j] = f.v[j][i];
    proj.push_back(std::move(row));
    reps.push_back(f.vinv[i]);
  }
  qd->basis_rep = reps;
  qd->proj = proj;

  auto to_coords = [&](const std::vector<Int>& w) {
    std::vector<uint64_t> c(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      Int acc = 0;
      for (std::size_t j = 0; j < w.size(); ++j) acc += proj[i][j] * w[j];
      Int m = static_cast<int64_t>(qd->moduli[i]);
      acc %= m;
      if (acc < 0) acc += m;
      c[i] = static_cast<uint64_t>(acc);
    }
    return c;
  };

  // multiplication structure on basis coordinates
  const std::size_t t = kept.size();
  qd->basis_mul.assign(t, std::vector<std::vector<uint64_t>>(t));
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      std::vector<Int> prod(wm.size(), 0);
      for (std::size_t a = 0; a < wm.size(); ++a) {
        if (reps[i][a] == 0) continue;
        for (std::size_t b = 0; b < wm.size(); ++b) {
          if (reps[j][b] == 0) continue;
          Expo pe = expo_add(wm[a], wm[b]);
          auto it = widx.find(pe);
          if (it != widx.end()) prod[it->second] += reps[i][a] * reps[j][b];
        }
      }
      qd->basis_mul[i][j] = to_coords(prod);
    }

  uint64_t size = 1;
  for (auto d : qd->moduli) {
    size *= d;
    if (size > kDenseCap)
      throw std::invalid_argument("non-monomial quotient exceeds the dense cap");
  }

  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = Kind::PolyQuot;
  r->p_ = p;
  r->r_ = pp->second;
  r->q_ = q;
  r->size_ = size;
  r->enumerable_ = true;
  r->pres_moduli_ = qd->moduli;
  r->quot_ = std::move(qd);
  // keep variable names around for printing
  auto mb = std::make_unique<MonomialBasis>();
  mb->nvars = n;
  mb->vars = std::move(vars);
  r->mono_ = std::move(mb);
  r->maybe_build_tables();
  return r;
}

RingPtr Ring::direct_sum(std::vector<RingPtr> factors) {
  if (factors.size() < 2)
    throw std::invalid_argument("direct sum needs at least two factors");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = Kind::Sum;
  r->size_ = 1;
  r->enumerable_ = true;
  for (const auto& f : factors) {
    if (!f->enumerable())
      throw std::invalid_argument("direct sum factors must be enumerable");
    r->size_ *= f->size();
    if (r->size_ > kDenseCap)
      throw std::invalid_argument("direct sum exceeds the dense cap");
    for (auto m : f->pres_moduli_) r->pres_moduli_.push_back(m);
  }
  r->factors_ = std::move(factors);
  r->maybe_build_tables();
  return r;
}

uint64_t Ring::size() const {
  if (!enumerable_) throw std::logic_error("ring is not enumerable");
  return size_;
}

// ---------------------------------------------------------------------------
// mixed-radix element encoding

// Canonical order: zmod uses ascending residues; composite kinds are
// mixed-radix with the MOST significant digit on the earliest monomial
// (resp. earliest direct-sum factor), matching the pinned element order.
std::vector<uint64_t> Ring::digits(Elem a) const {
  switch (kind_) {
    case Kind::Zmod:
      return {a};
    case Kind::PolyQuot: {
      const auto& mods = pres_moduli_;
      std::vector<uint64_t> d(mods.size());
      uint64_t x = a;
      for (std::size_t i = mods.size(); i-- > 0;) {
        d[i] = x % mods[i];
        x /= mods[i];
      }
      return d;
    }
    case Kind::Sum: {
      std::vector<uint64_t> d(factors_.size());
      uint64_t x = a;
      for (std::size_t i = factors_.size(); i-- > 0;) {
        d[i] = x % factors_[i]->size();
        x /= factors_[i]->size();
      }
      return d;
    }
  }
  return {};
}

Elem Ring::undigits(const std::vector<uint64_t>& d) const {
  switch (kind_) {
    case Kind::Zmod:
      return static_cast<Elem>(d[0]);
    case Kind::PolyQuot: {
      uint64_t x = 0;
      for (std::size_t i = 0; i < pres_moduli_.size(); ++i)
        x = x * pres_moduli_[i] + d[i];
      return static_cast<Elem>(x);
    }
    case Kind::Sum: {
      uint64_t x = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i)
        x = x * factors_[i]->size() + d[i];
      return static_cast<Elem>(x);
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// arithmetic

void Ring::maybe_build_tables() {
  if (!enumerable_ || size_ > kTableCap) return;
  const std::size_t n = size_;
  add_tab_.resize(n * n);
  mul_tab_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      add_tab_[a * n + b] = add_raw(a, b);
      mul_tab_[a * n + b] = mul_raw(a, b);
    }
}

Elem Ring::add(Elem a, Elem b) const {
  if (!add_tab_.empty()) return add_tab_[uint64_t{a} * size_ + b];
  return add_raw(a, b);
}

Elem Ring::mul(Elem a, Elem b) const {
  if (!mul_tab_.empty()) return mul_tab_[uint64_t{a} * size_ + b];
  return mul_raw(a, b);
}

Elem Ring::add_raw(Elem a, Elem b) const {
  switch (kind_) {
    case Kind::Zmod:
      return static_cast<Elem>((uint64_t{a} + b) % mod_);
    case Kind::PolyQuot: {
      auto da = digits(a), db = digits(b);
      for (std::size_t i = 0; i < da.size(); ++i)
        da[i] = (da[i] + db[i]) % pres_moduli_[i];
      return undigits(da);
    }
    case Kind::Sum: {
      auto da = digits(a), db = digits(b);
      for (std::size_t i = 0; i < factors_.size(); ++i)
        da[i] = factors_[i]->add(static_cast<Elem>(da[i]), static_cast<Elem>(db[i]));
      return undigits(da);
    }
  }
  return 0;
}

Elem Ring::neg(Elem a) const {
  switch (kind_) {
    case Kind::Zmod:
      return static_cast<Elem>((mod_ - a) % mod_);
    case Kind::PolyQuot: {
      auto d = digits(a);
      for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = (pres_moduli_[i] - d[i]) % pres_moduli_[i];
      return undigits(d);
    }
    case Kind::Sum: {
      auto d = digits(a);
      for (std::size_t i = 0; i < factors_.size(); ++i)
        d[i] = factors_[i]->neg(static_cast<Elem>(d[i]));
      return undigits(d);
    }
  }
  return 0;
}

Elem Ring::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Ring::mul_raw(Elem a, Elem b) const {
  switch (kind_) {
    case Kind::Zmod:
      return static_cast<Elem>((uint64_t{a} * b) % mod_);
    case Kind::PolyQuot: {
      auto da = digits(a), db = digits(b);
      std::vector<uint64_t> acc(da.size(), 0);
      if (quot_) {
        for (std::size_t i = 0; i < da.size(); ++i) {
          if (!da[i]) continue;
          for (std::size_t j = 0; j < db.size(); ++j) {
            if (!db[j]) continue;
            const auto& c = quot_->basis_mul[i][j];
            for (std::size_t k = 0; k < acc.size(); ++k)
              acc[k] = (acc[k] + da[i] * db[j] % pres_moduli_[k] * c[k]) %
                       pres_moduli_[k];
          }
        }
      } else {
        for (std::size_t i = 0; i < da.size(); ++i) {
          if (!da[i]) continue;
          for (std::size_t j = 0; j < db.size(); ++j) {
            if (!db[j]) continue;
            int32_t k = mono_->mul(static_cast<uint32_t>(i),
                                   static_cast<uint32_t>(j));
            if (k >= 0) acc[k] = (acc[k] + da[i] * db[j]) % q_;
          }
        }
      }
      return undigits(acc);
    }
    case Kind::Sum: {
      auto da = digits(a), db = digits(b);
      for (std::size_t i = 0; i < factors_.size(); ++i)
        da[i] = factors_[i]->mul(static_cast<Elem>(da[i]), static_cast<Elem>(db[i]));
      return undigits(da);
    }
  }
  return 0;
}

Elem Ring::one() const {
  switch (kind_) {
    case Kind::Zmod:
      return 1;
    case Kind::PolyQuot: {
      if (quot_) {
        // coords of the monomial 1 under the projection
        std::vector<Int> w(quot_->work_mons.size(), 0);
        Expo e(mono_->nvars, 0);
        for (std::size_t i = 0; i < quot_->work_mons.size(); ++i)
          if (quot_->work_mons[i] == e) w[i] = 1;
        return from_work_vector(w);
      }
      std::vector<uint64_t> d(pres_moduli_.size(), 0);
      d[0] = 1;  // mons[0] is the monomial 1 in graded-lex order
      return undigits(d);
    }
    case Kind::Sum: {
      std::vector<uint64_t> d(factors_.size());
      for (std::size_t i = 0; i < factors_.size(); ++i) d[i] = factors_[i]->one();
      return undigits(d);
    }
  }
  return 0;
}

Elem Ring::of_int(int64_t n) const {
  switch (kind_) {
    case Kind::Zmod: {
      int64_t m = static_cast<int64_t>(mod_);
      int64_t v = ((n % m) + m) % m;
      return static_cast<Elem>(v);
    }
    case Kind::PolyQuot: {
      int64_t m = static_cast<int64_t>(q_);
      int64_t v = ((n % m) + m) % m;
      Elem e = zero();
      Elem o = one();
      for (int64_t i = 0; i < v; ++i) e = add(e, o);
      return e;
    }
    case Kind::Sum: {
      std::vector<uint64_t> d(factors_.size());
      for (std::size_t i = 0; i < factors_.size(); ++i)
        d[i] = factors_[i]->of_int(n);
      return undigits(d);
    }
  }
  return 0;
}

Elem Ring::from_poly(const Poly& poly) const {
  if (kind_ != Kind::PolyQuot)
    throw std::invalid_argument("polynomial literal on a non-polynomial ring");
  if (quot_) {
    std::vector<Int> w(quot_->work_mons.size(), 0);
    for (const auto& [e, c] : poly.terms)
      for (std::size_t j = 0; j < quot_->work_mons.size(); ++j)
        if (quot_->work_mons[j] == e) w[j] += c;
    return from_work_vector(w);
  }
  if (!enumerable_)
    throw std::logic_error("ring is not enumerable");
  std::vector<uint64_t> d(pres_moduli_.size(), 0);
  for (const auto& [e, c] : poly.terms) {
    auto it = mono_->index.find(e);
    if (it == mono_->index.end()) continue;  // monomial lies in the ideal
    int64_t m = static_cast<int64_t>(q_);
    int64_t v = ((c % m) + m) % m;
    d[it->second] = (d[it->second] + static_cast<uint64_t>(v)) % q_;
  }
  return undigits(d);
}

SparseElem Ring::sparse_from_poly(const Poly& poly) const {
  SparseElem s;
  for (const auto& [e, c] : poly.terms) {
    auto it = mono_->index.find(e);
    if (it == mono_->index.end()) continue;
    int64_t m = static_cast<int64_t>(q_);
    int64_t v = ((c % m) + m) % m;
    uint32_t acc = ((s.count(it->second) ? s[it->second] : 0) +
                    static_cast<uint32_t>(v)) % static_cast<uint32_t>(q_);
    if (acc)
      s[it->second] = acc;
    else
      s.erase(it->second);
  }
  return s;
}

bool Ring::is_unit(Elem a) const {
  Elem o = one();
  for (uint64_t b = 0; b < size(); ++b)
    if (mul(a, static_cast<Elem>(b)) == o) return true;
  return false;
}

// ---------------------------------------------------------------------------
// presentation

std::vector<uint64_t> Ring::pres_coords(Elem a) const {
  if (kind_ != Kind::Sum) return digits(a);
  auto d = digits(a);
  std::vector<uint64_t> out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    auto c = factors_[i]->pres_coords(static_cast<Elem>(d[i]));
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

Elem Ring::pres_from_coords(const std::vector<Int>& c) const {
  if (kind_ != Kind::Sum) {
    std::vector<uint64_t> d(pres_moduli_.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      Int m = static_cast<int64_t>(pres_moduli_[i]);
      Int v = c[i] % m;
      if (v < 0) v += m;
      d[i] = static_cast<uint64_t>(v);
    }
    return undigits(d);
  }
  std::vector<uint64_t> d(factors_.size());
  std::size_t off = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::size_t t = factors_[i]->pres_moduli_.size();
    std::vector<Int> sub(c.begin() + off, c.begin() + off + t);
    d[i] = factors_[i]->pres_from_coords(sub);
    off += t;
  }
  return undigits(d);
}

Elem Ring::pres_basis_elem(std::size_t j) const {
  std::vector<Int> c(pres_moduli_.size(), 0);
  c[j] = 1;
  return pres_from_coords(c);
}

IntMat Ring::mult_matrix(Elem a) const {
  const std::size_t t = pres_moduli_.size();
  IntMat m(t, std::vector<Int>(t, 0));
  for (std::size_t j = 0; j < t; ++j) {
    auto col = pres_coords(mul(a, pres_basis_elem(j)));
    for (std::size_t i = 0; i < t; ++i) m[i][j] = static_cast<int64_t>(col[i]);
  }
  return m;
}

// ---------------------------------------------------------------------------
// ideal helpers

std::vector<Elem> Ring::elements() const {
  std::vector<Elem> v(size());
  for (uint64_t i = 0; i < size(); ++i) v[i] = static_cast<Elem>(i);
  return v;
}

std::vector<Elem> Ring::principal_ideal(Elem a) const {
  std::set<Elem> s;
  for (uint64_t r = 0; r < size(); ++r) s.insert(mul(static_cast<Elem>(r), a));
  return {s.begin(), s.end()};
}

std::vector<Elem> Ring::ideal_generated(const std::vector<Elem>& gens) const {
  std::set<Elem> s = {0};
  for (auto g : gens) {
    auto p = principal_ideal(g);
    s.insert(p.begin(), p.end());
  }
  // additive closure
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Elem> cur(s.begin(), s.end());
    for (auto a : cur)
      for (auto b : cur)
        if (s.insert(add(a, b)).second) changed = true;
  }
  return {s.begin(), s.end()};
}

std::vector<Elem> Ring::ann(Elem a) const {
  std::vector<Elem> out;
  for (uint64_t x = 0; x < size(); ++x)
    if (mul(a, static_cast<Elem>(x)) == 0) out.push_back(static_cast<Elem>(x));
  return out;
}

// ---------------------------------------------------------------------------
// sparse arithmetic

SparseElem Ring::sparse_add(const SparseElem& a, const SparseElem& b) const {
  SparseElem out = a;
  for (const auto& [m, c] : b) {
    uint32_t v = (out.count(m) ? out[m] : 0) + c;
    v %= static_cast<uint32_t>(q_);
    if (v)
      out[m] = v;
    else
      out.erase(m);
  }
  return out;
}

SparseElem Ring::sparse_mul(const SparseElem& a, const SparseElem& b) const {
  SparseElem out;
  for (const auto& [m1, c1] : a)
    for (const auto& [m2, c2] : b) {
      int32_t k = mono_->mul(m1, m2);
      if (k < 0) continue;
      uint32_t v = (out.count(k) ? out[k] : 0) + c1 * c2 % static_cast<uint32_t>(q_);
      v %= static_cast<uint32_t>(q_);
      if (v)
        out[k] = v;
      else
        out.erase(k);
    }
  return out;
}

Elem Ring::from_work_vector(const std::vector<Int>& w) const {
  std::vector<Int> c(quot_->moduli.size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) c[i] += quot_->proj[i][j] * w[j];
  return pres_from_coords(c);
}

std::string Ring::show_work_mono(const Expo& e) const {
  std::string out;
  for (std::size_t v = 0; v < mono_->nvars; ++v) {
    if (!e[v]) continue;
    if (!out.empty()) out += "*";
    out += mono_->vars[v];
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// printing

std::string Ring::show(Elem a) const {
  switch (kind_) {
    case Kind::Zmod:
      return std::to_string(a);
    case Kind::PolyQuot: {
      auto d = digits(a);
      std::string out;
      if (quot_) {
        // print the representative polynomial of the element
        std::vector<Int> w(quot_->work_mons.size(), 0);
        for (std::size_t i = 0; i < d.size(); ++i)
          if (d[i])
            for (std::size_t j = 0; j < w.size(); ++j)
              w[j] += static_cast<int64_t>(d[i]) * quot_->basis_rep[i][j];
        for (std::size_t j = 0; j < w.size(); ++j) {
          Int m = static_cast<int64_t>(q_);
          Int v = w[j] % m;
          if (v < 0) v += m;
          if (v == 0) continue;
          if (!out.empty()) out += "+";
          uint64_t c = static_cast<uint64_t>(v);
          std::string mono = show_work_mono(quot_->work_mons[j]);
          if (c != 1 || mono == "1") {
            out += std::to_string(c);
            if (mono != "1") out += "*";
          }
          if (mono != "1") out += mono;
        }
      } else {
        for (std::size_t i = 0; i < d.size(); ++i) {
          if (!d[i]) continue;
          if (!out.empty()) out += "+";
          std::string mono = mono_->show_mono(static_cast<uint32_t>(i));
          if (d[i] != 1 || mono == "1") {
            out += std::to_string(d[i]);
            if (mono != "1") out += "*";
          }
          if (mono != "1") out += mono;
        }
      }
      return out.empty() ? "0" : out;
    }
    case Kind::Sum: {
      auto d = digits(a);
      std::string out = "(";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += " | ";
        out += factors_[i]->show(static_cast<Elem>(d[i]));
      }
      return out + ")";
    }
  }
  return "?";
}

std::string Ring::describe() const {
  switch (kind_) {
    case Kind::Zmod:
      return "(zmod " + std::to_string(mod_) + ")";
    case Kind::PolyQuot: {
      std::string out = "(poly " + std::to_string(q_) + " (";
      for (std::size_t i = 0; i < mono_->vars.size(); ++i) {
        if (i) out += " ";
        out += mono_->vars[i];
      }
      out += ") (";
      if (quot_) {
        for (std::size_t i = 0; i < quot_->gens_text.size(); ++i) {
          if (i) out += " ";
          out += quot_->gens_text[i];
        }
      } else {
        for (std::size_t i = 0; i < mono_->gens.size(); ++i) {
          if (i) out += " ";
          // print generator exponent as a monomial
          const Expo& e = mono_->gens[i];
          std::string m;
          for (std::size_t v = 0; v < mono_->nvars; ++v) {
            if (!e[v]) continue;
            if (!m.empty()) m += "*";
            m += mono_->vars[v];
            if (e[v] > 1) m += "^" + std::to_string(e[v]);
          }
          out += m.empty() ? "1" : m;
        }
      }
      out += "))";
      return out;
    }
    case Kind::Sum: {
      std::string out = "(sum";
      for (const auto& f : factors_) out += " " + f->describe();
      return out + ")";
    }
  }
  return "?";
}

}  // namespace ringlin
