#include "ringlin/eqsys.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ringlin/parse.hpp"

namespace ringlin {

std::vector<std::string> EquationSystem::vars() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& e : eqs)
    for (const auto& t : e.terms)
      if (seen.insert(t.var).second) out.push_back(t.var);
  for (const auto& [v, r] : restrictions)
    if (seen.insert(v).second) out.push_back(v);
  return out;
}

std::vector<Elem> EquationSystem::domain_ideal() const {
  if (!ideal_gens) return ring->elements();
  return ring->ideal_generated(*ideal_gens);
}

bool satisfies(const Ring& ring, const Equation& eq, const Assignment& a) {
  Elem lhs = 0;
  for (const auto& t : eq.terms) {
    auto it = a.find(t.var);
    Elem v = it == a.end() ? 0 : it->second;
    lhs = ring.add(lhs, ring.mul(t.coef, v));
  }
  return lhs == eq.rhs;
}

std::optional<uint64_t> cost(const EquationSystem& sys, const Assignment& a) {
  const Ring& R = *sys.ring;
  for (const auto& v : sys.vars())
    if (!a.count(v)) return std::nullopt;
  if (sys.ideal_gens) {
    auto ideal = sys.domain_ideal();
    for (const auto& [v, val] : a) {
      (void)v;
      if (!std::binary_search(ideal.begin(), ideal.end(), val))
        return std::nullopt;
    }
  }
  for (const auto& [v, r] : sys.restrictions) {
    auto it = a.find(v);
    if (it == a.end()) return std::nullopt;
    Elem off = R.sub(it->second, r.base);
    auto ideal = R.ideal_generated(r.gens);
    if (!std::binary_search(ideal.begin(), ideal.end(), off))
      return std::nullopt;
  }
  uint64_t c = 0;
  for (const auto& e : sys.eqs) {
    if (satisfies(R, e, a)) continue;
    if (!e.soft) return std::nullopt;
    ++c;
  }
  return c;
}

// ---------------------------------------------------------------------------
// text format

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_on(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t nxt = s.find(sep, pos);
    if (nxt == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, nxt - pos));
    pos = nxt + sep.size();
  }
}

Term parse_term(const Ring& ring, const std::string& raw) {
  std::size_t star = raw.rfind('*');
  if (star == std::string::npos || star + 1 >= raw.size())
    throw ParseError("equation term must be <coef>*<var>: " + raw);
  Term t;
  t.coef = parse_element(ring, raw.substr(0, star));
  t.var = raw.substr(star + 1);
  if (t.var.empty()) throw ParseError("empty variable name in term: " + raw);
  return t;
}

std::vector<Elem> parse_gen_list(const Ring& ring, const std::string& raw) {
  std::string body = trim(raw);
  if (body.size() < 2 || body.front() != '(' || body.back() != ')')
    throw ParseError("generator list must be parenthesized: " + raw);
  body = trim(body.substr(1, body.size() - 2));
  std::vector<Elem> gens;
  if (body.empty()) return gens;
  for (const auto& part : split_on(body, ", "))
    gens.push_back(parse_element(ring, trim(part)));
  return gens;
}

std::string show_gen_list(const Ring& ring, const std::vector<Elem>& gens) {
  std::string out = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ", ";
    out += ring.show(gens[i]);
  }
  return out + ")";
}

}  // namespace

EquationSystem parse_instance(const std::string& text) {
  EquationSystem sys;
  std::istringstream in(text);
  std::string line;
  uint32_t next_id = 1;
  while (std::getline(in, line)) {
    std::size_t comment = line.find(';');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("ring ", 0) == 0) {
      sys.ring = parse_ring(line.substr(5));
      continue;
    }
    if (!sys.ring) throw ParseError("instance must start with a ring line");
    if (line.rfind("param k ", 0) == 0) {
      sys.k = std::stoull(line.substr(8));
      continue;
    }
    if (line.rfind("ideal ", 0) == 0) {
      sys.ideal_gens = parse_gen_list(*sys.ring, line.substr(6));
      continue;
    }
    if (line.rfind("restrict ", 0) == 0) {
      std::string rest = line.substr(9);
      std::size_t in_pos = rest.find(" in ");
      if (in_pos == std::string::npos)
        throw ParseError("restrict line missing ' in ': " + line);
      std::string var = trim(rest.substr(0, in_pos));
      std::string coset = rest.substr(in_pos + 4);
      std::size_t plus = coset.rfind(" + (");
      if (plus == std::string::npos)
        throw ParseError("restrict coset must be <elem> + (<gens>): " + line);
      Restriction r;
      r.base = parse_element(*sys.ring, trim(coset.substr(0, plus)));
      r.gens = parse_gen_list(*sys.ring, coset.substr(plus + 3));
      sys.restrictions[var] = r;
      continue;
    }
    bool soft;
    std::string body;
    if (line.rfind("soft ", 0) == 0) {
      soft = true;
      body = line.substr(5);
    } else if (line.rfind("crisp ", 0) == 0) {
      soft = false;
      body = line.substr(6);
    } else {
      throw ParseError("unrecognized instance line: " + line);
    }
    std::size_t eq_pos = body.find(" = ");
    if (eq_pos == std::string::npos)
      throw ParseError("equation missing ' = ': " + line);
    Equation e;
    e.soft = soft;
    e.rhs = parse_element(*sys.ring, trim(body.substr(eq_pos + 3)));
    std::string lhs = trim(body.substr(0, eq_pos));
    auto parts = split_on(lhs, " + ");
    if (parts.empty() || parts.size() > 2)
      throw ParseError("equation must have one or two terms: " + line);
    for (const auto& p : parts) e.terms.push_back(parse_term(*sys.ring, trim(p)));
    if (e.terms.size() == 2 && e.terms[0].var == e.terms[1].var)
      throw ParseError("equation terms must use distinct variables: " + line);
    e.id = "e" + std::to_string(next_id++);
    sys.eqs.push_back(std::move(e));
  }
  if (!sys.ring) throw ParseError("instance has no ring line");
  return sys;
}

std::string serialize_instance(const EquationSystem& sys) {
  const Ring& R = *sys.ring;
  std::string out = "ring " + R.describe() + "\n";
  out += "param k " + std::to_string(sys.k) + "\n";
  if (sys.ideal_gens) out += "ideal " + show_gen_list(R, *sys.ideal_gens) + "\n";
  for (const auto& e : sys.eqs) {
    out += e.soft ? "soft " : "crisp ";
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
      if (i) out += " + ";
      out += R.show(e.terms[i].coef) + "*" + e.terms[i].var;
    }
    out += " = " + R.show(e.rhs) + "\n";
  }
  for (const auto& [v, r] : sys.restrictions)
    out += "restrict " + v + " in " + R.show(r.base) + " + " +
           show_gen_list(R, r.gens) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// random instances

namespace {

// Bounded draw that is reproducible independently of the standard library's
// distribution implementations.
uint64_t draw(std::mt19937_64& rng, uint64_t bound) {
  return bound ? rng() % bound : 0;
}

}  // namespace

EquationSystem random_instance(const RingPtr& ring, uint32_t n_vars,
                               uint32_t n_eqs, double soft_fraction,
                               std::optional<uint32_t> planted_opt,
                               uint64_t seed, bool with_restrictions,
                               std::optional<std::vector<Elem>> ideal_gens) {
  if (!ring->enumerable())
    throw std::invalid_argument("random_instance needs an enumerable ring");
  EquationSystem sys;
  sys.ring = ring;
  sys.ideal_gens = std::move(ideal_gens);
  std::mt19937_64 rng(seed);
  std::vector<Elem> domain = sys.domain_ideal();
  std::vector<std::string> names;
  for (uint32_t i = 0; i < n_vars; ++i) names.push_back("v" + std::to_string(i));

  Assignment planted;
  for (const auto& v : names)
    planted[v] = domain[draw(rng, domain.size())];

  uint64_t n = ring->size();
  for (uint32_t i = 0; i < n_eqs; ++i) {
    Equation e;
    e.id = "e" + std::to_string(i + 1);
    bool binary = n_vars >= 2 && draw(rng, 4) != 0;
    uint32_t x = static_cast<uint32_t>(draw(rng, n_vars));
    e.terms.push_back({static_cast<Elem>(draw(rng, n)), names[x]});
    if (binary) {
      uint32_t y = static_cast<uint32_t>(draw(rng, n_vars - 1));
      if (y >= x) ++y;
      e.terms.push_back({static_cast<Elem>(draw(rng, n)), names[y]});
    }
    Elem lhs = 0;
    for (const auto& t : e.terms)
      lhs = ring->add(lhs, ring->mul(t.coef, planted[t.var]));
    e.rhs = lhs;
    e.soft = draw(rng, 1000000) < static_cast<uint64_t>(soft_fraction * 1e6);
    sys.eqs.push_back(std::move(e));
  }

  if (planted_opt && *planted_opt > 0) {
    // All corrupted equations must be soft; promote if necessary.
    std::vector<std::size_t> soft_idx;
    for (std::size_t i = 0; i < sys.eqs.size(); ++i)
      if (sys.eqs[i].soft) soft_idx.push_back(i);
    while (soft_idx.size() < *planted_opt && soft_idx.size() < sys.eqs.size()) {
      std::size_t i = draw(rng, sys.eqs.size());
      if (!sys.eqs[i].soft) {
        sys.eqs[i].soft = true;
        soft_idx.push_back(i);
      }
    }
    if (soft_idx.size() < *planted_opt)
      throw std::invalid_argument("not enough equations to plant the optimum");
    std::sort(soft_idx.begin(), soft_idx.end());
    for (uint32_t c = 0; c < *planted_opt; ++c) {
      std::size_t pick = draw(rng, soft_idx.size() - c);
      std::swap(soft_idx[pick], soft_idx[soft_idx.size() - 1 - c]);
      Equation& e = sys.eqs[soft_idx[soft_idx.size() - 1 - c]];
      // Shift the right-hand side so the planted assignment violates it.
      Elem delta = static_cast<Elem>(1 + draw(rng, n - 1));
      e.rhs = ring->add(e.rhs, delta);
    }
  }

  if (with_restrictions) {
    for (const auto& v : names) {
      if (draw(rng, 2) == 0) continue;
      Restriction r;
      Elem g = static_cast<Elem>(draw(rng, n));
      r.gens = {g};
      auto ideal = ring->ideal_generated(r.gens);
      // Base compatible with the planted assignment.
      Elem off = ideal[draw(rng, ideal.size())];
      r.base = ring->sub(planted[v], off);
      sys.restrictions[v] = r;
    }
  }
  sys.k = planted_opt ? *planted_opt : 0;
  return sys;
}

}  // namespace ringlin
