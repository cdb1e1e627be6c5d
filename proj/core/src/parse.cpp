#include "ringlin/parse.hpp"

#include <cctype>
#include <memory>
#include <variant>

namespace ringlin {

namespace {

// --- s-expression reader ---

struct Sexp {
  std::string atom;           // set when leaf
  std::vector<Sexp> list;     // set when node
  bool is_atom = false;
};

struct Reader {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[pos]))) {
        ++pos;
      } else if (s[pos] == ';') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  Sexp read() {
    skip_ws();
    if (pos >= s.size()) throw ParseError("unexpected end of input");
    if (s[pos] == '(') {
      ++pos;
      Sexp node;
      while (true) {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unbalanced parenthesis");
        if (s[pos] == ')') {
          ++pos;
          return node;
        }
        node.list.push_back(read());
      }
    }
    Sexp leaf;
    leaf.is_atom = true;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != '(' && s[pos] != ')' && s[pos] != ';')
      leaf.atom += s[pos++];
    if (leaf.atom.empty()) throw ParseError("empty token");
    return leaf;
  }
};

uint64_t parse_uint(const std::string& a) {
  if (a.empty() || a.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected a non-negative integer, got '" + a + "'");
  return std::stoull(a);
}

RingPtr ring_from_sexp(const Sexp& e) {
  if (e.is_atom || e.list.empty() || !e.list[0].is_atom)
    throw ParseError("expected a ring form");
  const std::string& head = e.list[0].atom;
  if (head == "zmod") {
    if (e.list.size() != 2 || !e.list[1].is_atom)
      throw ParseError("usage: (zmod M)");
    return Ring::zmod(parse_uint(e.list[1].atom));
  }
  if (head == "poly") {
    if (e.list.size() != 4 || !e.list[1].is_atom || e.list[2].is_atom ||
        e.list[3].is_atom)
      throw ParseError("usage: (poly CHAR (VARS...) (GENS...))");
    uint64_t q = parse_uint(e.list[1].atom);
    std::vector<std::string> vars;
    for (const auto& v : e.list[2].list) {
      if (!v.is_atom) throw ParseError("variable names must be identifiers");
      vars.push_back(v.atom);
    }
    std::vector<Poly> gens;
    for (const auto& g : e.list[3].list) {
      if (!g.is_atom) throw ParseError("generators must be polynomial tokens");
      gens.push_back(parse_poly(g.atom, vars, static_cast<int64_t>(q)));
    }
    return Ring::poly_quot(q, vars, gens);
  }
  if (head == "sum") {
    if (e.list.size() < 3) throw ParseError("usage: (sum RING RING ...)");
    std::vector<RingPtr> factors;
    for (std::size_t i = 1; i < e.list.size(); ++i)
      factors.push_back(ring_from_sexp(e.list[i]));
    return Ring::direct_sum(std::move(factors));
  }
  throw ParseError("unknown ring form '" + head + "'");
}

}  // namespace

RingPtr parse_ring(const std::string& text) {
  Reader r{text};
  Sexp e = r.read();
  r.skip_ws();
  if (r.pos != text.size()) throw ParseError("trailing input after ring form");
  return ring_from_sexp(e);
}

Poly parse_poly(const std::string& text, const std::vector<std::string>& vars,
                int64_t q) {
  auto var_index = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return i;
    throw ParseError("unknown variable '" + name + "'");
  };

  Poly out;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  skip_ws();
  if (pos >= text.size()) throw ParseError("empty polynomial");
  while (pos < text.size()) {
    // one term: [coef][*var[^exp]]*
    int64_t coef = 1;
    bool saw_coef = false, saw_var = false;
    Expo e(vars.size(), 0);
    bool first_factor = true;
    while (true) {
      skip_ws();
      if (pos >= text.size()) break;
      char c = text[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
        int64_t v = std::stoll(text.substr(start, pos - start));
        if (v < 0 || v >= q)
          throw ParseError("coefficient " + std::to_string(v) +
                           " out of range [0, " + std::to_string(q) + ")");
        if (saw_coef) throw ParseError("repeated coefficient in term");
        coef = v;
        saw_coef = true;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                text[pos] == '_'))
          ++pos;
        std::size_t vi = var_index(text.substr(start, pos - start));
        uint32_t exp = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          std::size_t s2 = pos;
          while (pos < text.size() &&
                 std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
          if (s2 == pos) throw ParseError("missing exponent after '^'");
          exp = static_cast<uint32_t>(std::stoul(text.substr(s2, pos - s2)));
        }
        e[vi] += exp;
        saw_var = true;
      } else {
        throw ParseError(std::string("unexpected character '") + c +
                         "' in polynomial");
      }
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        first_factor = false;
        continue;
      }
      break;
    }
    (void)first_factor;
    if (!saw_coef && !saw_var) throw ParseError("empty term in polynomial");
    if (coef != 0) {
      out.terms[e] = (out.terms.count(e) ? out.terms[e] : 0) + coef;
      if (out.terms[e] % q == 0) out.terms.erase(e);
    }
    skip_ws();
    if (pos < text.size()) {
      if (text[pos] != '+')
        throw ParseError("expected '+' between polynomial terms");
      ++pos;
      skip_ws();
      if (pos >= text.size()) throw ParseError("dangling '+' in polynomial");
    }
  }
  return out;
}

Elem parse_element(const Ring& ring, const std::string& text) {
  switch (ring.kind()) {
    case Ring::Kind::Zmod: {
      std::string t;
      for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
      uint64_t v = parse_uint(t);
      if (v >= ring.size())
        throw ParseError("residue " + t + " out of range for " + ring.describe());
      return static_cast<Elem>(v);
    }
    case Ring::Kind::PolyQuot: {
      const auto* mb = ring.monomials();
      Poly p = parse_poly(text, mb->vars, static_cast<int64_t>(ring.coeff_modulus()));
      return ring.from_poly(p);
    }
    case Ring::Kind::Sum: {
      // (ELEM | ELEM | ...)
      std::size_t a = text.find('(');
      std::size_t b = text.rfind(')');
      if (a == std::string::npos || b == std::string::npos || b <= a)
        throw ParseError("sum element literal must be (E | E | ...)");
      std::string body = text.substr(a + 1, b - a - 1);
      // split on top-level '|'
      std::vector<std::string> parts;
      int depth = 0;
      std::string cur;
      for (char c : body) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '|' && depth == 0) {
          parts.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      parts.push_back(cur);
      const auto& factors = ring.factors();
      if (parts.size() != factors.size())
        throw ParseError("sum element has wrong number of components");
      std::vector<uint64_t> digits(factors.size());
      for (std::size_t i = 0; i < factors.size(); ++i)
        digits[i] = parse_element(*factors[i], parts[i]);
      // recompose most-significant-first
      uint64_t x = 0;
      for (std::size_t i = 0; i < factors.size(); ++i)
        x = x * factors[i]->size() + digits[i];
      return static_cast<Elem>(x);
    }
  }
  throw ParseError("unreachable");
}

}  // namespace ringlin
