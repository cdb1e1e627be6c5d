#include "ringlin/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "ringlin/snf.hpp"

namespace ringlin {

std::vector<Int> AbelianPresentation::coords(Elem a) const {
  auto c = ring->pres_coords(a);
  std::vector<Int> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = static_cast<int64_t>(c[i]);
  return out;
}

Elem AbelianPresentation::decode(const std::vector<Int>& c) const {
  return ring->pres_from_coords(c);
}

IntMat AbelianPresentation::mult(Elem a) const { return ring->mult_matrix(a); }

AbelianPresentation abelian_presentation(const RingPtr& ring) {
  AbelianPresentation p;
  p.ring = ring;
  p.moduli = ring->pres_moduli();
  return p;
}

// ---------------------------------------------------------------------------
// feasibility

namespace {

// Additive generators of the ideal (gens): products basis_j * g generate it
// as a subgroup of (R, +).
std::vector<Elem> additive_generators(const Ring& ring,
                                      const std::vector<Elem>& gens) {
  std::vector<Elem> out;
  for (Elem g : gens)
    for (std::size_t j = 0; j < ring.pres_moduli().size(); ++j)
      out.push_back(ring.mul(ring.pres_basis_elem(j), g));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!out.empty() && out[0] == 0) out.erase(out.begin());
  return out;
}

}  // namespace

std::optional<Assignment> feasible(const EquationSystem& sys) {
  const RingPtr& R = sys.ring;
  AbelianPresentation pres = abelian_presentation(R);
  const std::size_t t = pres.dim();
  std::vector<std::string> vars = sys.vars();
  std::map<std::string, std::size_t> col0;  // variable -> first column
  for (std::size_t i = 0; i < vars.size(); ++i) col0[vars[i]] = i * t;
  std::size_t ncols = vars.size() * t;

  IntMat a;
  std::vector<Int> b;
  std::vector<Int> mods;

  auto add_rows = [&](std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      a.emplace_back(ncols, 0);
      b.emplace_back(0);
      mods.emplace_back(static_cast<int64_t>(pres.moduli[i]));
    }
  };
  auto grow_cols = [&](std::size_t extra) {
    ncols += extra;
    for (auto& row : a) row.resize(ncols, 0);
  };

  // Equation rows: sum of mult-matrix blocks applied to variable coords.
  for (const auto& e : sys.eqs) {
    std::size_t base = a.size();
    add_rows(t);
    auto rhs = pres.coords(e.rhs);
    for (std::size_t i = 0; i < t; ++i) b[base + i] = rhs[i];
    for (const auto& term : e.terms) {
      IntMat m = pres.mult(term.coef);
      std::size_t c0 = col0[term.var];
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) a[base + i][c0 + j] += m[i][j];
    }
  }

  // Coset rows: x - (slack combination of the ideal's additive generators)
  // = base point, one slack column per generator.
  auto add_coset = [&](const std::string& var, Elem base_pt,
                       const std::vector<Elem>& gens) {
    std::vector<Elem> agens = additive_generators(*R, gens);
    std::size_t slack0 = ncols;
    grow_cols(agens.size());
    std::size_t base = a.size();
    add_rows(t);
    auto rhs = pres.coords(base_pt);
    std::size_t c0 = col0[var];
    for (std::size_t i = 0; i < t; ++i) {
      b[base + i] = rhs[i];
      a[base + i][c0 + i] = 1;
    }
    for (std::size_t s = 0; s < agens.size(); ++s) {
      auto gc = pres.coords(agens[s]);
      for (std::size_t i = 0; i < t; ++i) a[base + i][slack0 + s] = -gc[i];
    }
  };

  if (sys.ideal_gens)
    for (const auto& v : vars) add_coset(v, 0, *sys.ideal_gens);
  for (const auto& [v, r] : sys.restrictions) add_coset(v, r.base, r.gens);

  auto sol = solve_congruences(a, b, mods);
  if (!sol) return std::nullopt;
  Assignment out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::vector<Int> c(sol->begin() + i * t, sol->begin() + (i + 1) * t);
    out[vars[i]] = pres.decode(c);
  }
  return out;
}

bool self_satisfiable(const EquationSystem& sys,
                      const std::vector<std::string>& component,
                      const std::map<std::string, std::vector<Elem>>& tau) {
  std::set<std::string> comp(component.begin(), component.end());
  EquationSystem sub;
  sub.ring = sys.ring;
  sub.ideal_gens = sys.ideal_gens;
  for (const auto& e : sys.eqs) {
    bool inside = true;
    for (const auto& t : e.terms)
      if (!comp.count(t.var)) inside = false;
    if (inside) sub.eqs.push_back(e);
  }
  for (const auto& v : component) {
    auto it = tau.find(v);
    if (it == tau.end() || it->second.empty()) continue;
    const std::vector<Elem>& coset = it->second;
    Restriction r;
    r.base = coset[0];
    for (Elem c : coset) r.gens.push_back(sys.ring->sub(c, coset[0]));
    sub.restrictions[v] = r;
  }
  return feasible(sub).has_value();
}

// ---------------------------------------------------------------------------
// brute-force oracle

BruteResult brute_min(const EquationSystem& sys) {
  BruteResult res;
  const RingPtr& R = sys.ring;
  if (!R->enumerable()) return res;
  std::vector<std::string> vars = sys.vars();
  std::vector<Elem> domain = sys.domain_ideal();

  // Per-variable candidate lists: domain ideal intersected with the coset
  // restriction when present.
  std::vector<std::vector<Elem>> cands(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = sys.restrictions.find(vars[i]);
    if (it == sys.restrictions.end()) {
      cands[i] = domain;
    } else {
      auto ideal = R->ideal_generated(it->second.gens);
      for (Elem d : domain)
        if (std::binary_search(ideal.begin(), ideal.end(),
                               R->sub(d, it->second.base)))
          cands[i].push_back(d);
    }
    if (cands[i].empty()) {  // no admissible value at all
      res.available = true;
      return res;
    }
  }

  uint64_t total = 1;
  bool overflow = false;
  for (const auto& c : cands) {
    if (total > kAssignmentCap / c.size() + 1) overflow = true;
    total *= c.size();
    if (overflow || total > kAssignmentCap) {
      overflow = true;
      break;
    }
  }

  if (!overflow) {
    res.available = true;
    std::vector<std::size_t> idx(vars.size(), 0);
    Assignment cur;
    for (std::size_t i = 0; i < vars.size(); ++i) cur[vars[i]] = cands[i][0];
    std::optional<uint64_t> best;
    Assignment best_a;
    while (true) {
      auto c = cost(sys, cur);
      if (c && (!best || *c < *best)) {
        best = *c;
        best_a = cur;
        if (*best == 0) break;
      }
      std::size_t p = vars.size();
      while (p > 0) {
        --p;
        if (++idx[p] < cands[p].size()) {
          cur[vars[p]] = cands[p][idx[p]];
          break;
        }
        idx[p] = 0;
        cur[vars[p]] = cands[p][0];
        if (p == 0) {
          p = SIZE_MAX;
          break;
        }
      }
      if (p == SIZE_MAX || vars.empty()) break;
    }
    res.cost = best;
    if (best) {
      res.assignment = best_a;
      for (const auto& e : sys.eqs)
        if (e.soft && !satisfies(*R, e, best_a)) res.deleted.push_back(e.id);
    }
    return res;
  }

  // Deletion-subset strategy: smallest subset of soft equations whose
  // removal leaves a feasible all-crisp system.
  std::vector<std::size_t> soft;
  for (std::size_t i = 0; i < sys.eqs.size(); ++i)
    if (sys.eqs[i].soft) soft.push_back(i);
  if (soft.size() >= 63 || (1ull << soft.size()) > kSubsetCap) return res;
  res.available = true;
  for (std::size_t size = 0; size <= soft.size(); ++size) {
    // lexicographic combinations of `size` soft indices
    std::vector<std::size_t> comb(size);
    for (std::size_t i = 0; i < size; ++i) comb[i] = i;
    while (true) {
      EquationSystem sub = sys;
      // delete in descending index order
      for (std::size_t i = size; i-- > 0;)
        sub.eqs.erase(sub.eqs.begin() + soft[comb[i]]);
      if (auto a = feasible(sub)) {
        res.cost = size;
        res.assignment = *a;
        for (std::size_t i = 0; i < size; ++i)
          res.deleted.push_back(sys.eqs[soft[comb[i]]].id);
        return res;
      }
      // next combination
      std::size_t p = size;
      while (p > 0) {
        --p;
        if (comb[p] + 1 <= soft.size() - (size - p)) {
          ++comb[p];
          for (std::size_t q = p + 1; q < size; ++q) comb[q] = comb[q - 1] + 1;
          break;
        }
        if (p == 0) {
          p = SIZE_MAX;
          break;
        }
      }
      if (size == 0 || p == SIZE_MAX) break;
    }
  }
  res.cost = std::nullopt;  // infeasible no matter what is deleted
  return res;
}

}  // namespace ringlin
