#include "ringlin/monomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ringlin {

bool expo_divides(const Expo& p1, const Expo& p2) {
  for (std::size_t i = 0; i < p1.size(); ++i)
    if (p1[i] > p2[i]) return false;
  return true;
}

Expo expo_add(const Expo& a, const Expo& b) {
  Expo r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool grlex_less(const Expo& a, const Expo& b) {
  uint64_t da = std::accumulate(a.begin(), a.end(), uint64_t{0});
  uint64_t db = std::accumulate(b.begin(), b.end(), uint64_t{0});
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

bool MonomialBasis::zero_mono(const Expo& e) const {
  for (const auto& x : exceptions)
    if (x == e) return false;
  for (const auto& g : gens)
    if (expo_divides(g, e)) return true;
  return false;
}

int32_t MonomialBasis::mul(uint32_t i, uint32_t j) const {
  Expo e = expo_add(mons[i], mons[j]);
  auto it = index.find(e);
  return it == index.end() ? -1 : static_cast<int32_t>(it->second);
}

std::string MonomialBasis::show_mono(uint32_t i) const {
  const Expo& e = mons[i];
  std::string out;
  for (std::size_t v = 0; v < nvars; ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[v];
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out.empty() ? "1" : out;
}

MonomialBasis make_monomial_basis(std::vector<std::string> vars,
                                  std::vector<Expo> gens,
                                  std::vector<Expo> exceptions) {
  MonomialBasis b;
  b.nvars = vars.size();
  b.vars = std::move(vars);
  b.exceptions = std::move(exceptions);

  // drop non-minimal generators
  std::sort(gens.begin(), gens.end(), grlex_less);
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : b.gens)
      if (expo_divides(h, g)) {
        redundant = true;
        break;
      }
    if (!redundant) b.gens.push_back(g);
  }

  // Artinian check: every variable needs a pure power among the generators
  Expo box(b.nvars, 0);
  for (std::size_t v = 0; v < b.nvars; ++v) {
    bool found = false;
    for (const auto& g : b.gens) {
      bool pure = g[v] > 0;
      for (std::size_t w = 0; w < b.nvars && pure; ++w)
        if (w != v && g[w] > 0) pure = false;
      if (pure) {
        box[v] = std::max(box[v], g[v]);
        found = true;
      }
    }
    if (!found)
      throw std::invalid_argument(
          "quotient is not Artinian: no pure power of variable " + b.vars[v]);
  }
  // exceptional points may stick out beyond the pure-power box
  for (const auto& x : b.exceptions)
    for (std::size_t v = 0; v < b.nvars; ++v)
      box[v] = std::max(box[v], x[v] + 1);

  // enumerate nonzero monomials within the box
  Expo e(b.nvars, 0);
  while (true) {
    if (!b.zero_mono(e)) b.mons.push_back(e);
    std::size_t v = 0;
    while (v < b.nvars) {
      if (++e[v] < box[v] + 1) break;
      e[v] = 0;
      ++v;
    }
    if (v == b.nvars) break;
  }
  std::sort(b.mons.begin(), b.mons.end(), grlex_less);
  for (uint32_t i = 0; i < b.mons.size(); ++i) b.index[b.mons[i]] = i;
  return b;
}

ExponentScan scan_zero_set(const Expo& box,
                           const std::function<bool(const Expo&)>& nonzero) {
  std::size_t n = box.size();
  ExponentScan out;

  // first pass: collect all zero points and all nonzero points
  std::vector<Expo> zeros, nonzeros;
  Expo e(n, 0);
  while (true) {
    (nonzero(e) ? nonzeros : zeros).push_back(e);
    std::size_t v = 0;
    while (v < n) {
      if (++e[v] <= box[v]) break;
      e[v] = 0;
      ++v;
    }
    if (v == n) break;
  }

  // minimal zero points become generators
  std::sort(zeros.begin(), zeros.end(), grlex_less);
  for (const auto& z : zeros) {
    bool redundant = false;
    for (const auto& g : out.gens)
      if (expo_divides(g, z)) {
        redundant = true;
        break;
      }
    if (!redundant) out.gens.push_back(z);
  }

  // nonzero points dominating a generator are exceptional
  for (const auto& m : nonzeros)
    for (const auto& g : out.gens)
      if (expo_divides(g, m)) {
        out.exceptions.push_back(m);
        break;
      }
  return out;
}

}  // namespace ringlin
