// ringlin: verb-style command line front end.
//
// Reports are line-delimited `key value...` records with a stable key order,
// byte-identical across runs for fixed inputs and seeds.
//
// Exit codes: 0 completed, 1 catalog/verification mismatch, 2 domain error
// (bad input or unsupported ring), 3 incomplete search, 64 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ringlin/approx.hpp"
#include "ringlin/catalog.hpp"
#include "ringlin/classify.hpp"
#include "ringlin/eqsys.hpp"
#include "ringlin/exact.hpp"
#include "ringlin/gadgets.hpp"
#include "ringlin/geometry.hpp"
#include "ringlin/parse.hpp"

namespace {

using namespace ringlin;

// ---------------------------------------------------------------------------
// small helpers

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return static_cast<bool>(in);
}

// A ring argument is a file containing a ring s-expression, a catalog name,
// or an inline s-expression.
RingPtr load_ring(const std::string& arg) {
  if (file_exists(arg)) return parse_ring(slurp(arg));
  if (!arg.empty() && arg[0] == '(') return parse_ring(arg);
  return catalog_ring(arg);
}

const char* show_bool(bool b) { return b ? "true" : "false"; }

const char* show_tri(TriState t) {
  switch (t) {
    case TriState::Yes:
      return "true";
    case TriState::No:
      return "false";
    default:
      return "unknown";
  }
}

const char* show_bergen(BergenStatus s) {
  switch (s) {
    case BergenStatus::Found:
      return "found";
    case BergenStatus::RefutedViaLineal:
      return "refuted-via-lineal";
    default:
      return "none-within-limits";
  }
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

std::string show_expo(const Expo& e) {
  std::string out = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(e[i]);
  }
  return out + ")";
}

std::string show_rat(const Rat& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

std::string show_elems(const Ring& ring, const std::vector<Elem>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += ring.show(xs[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// multi-term systems (ternarize / tangle inputs) share the instance grammar
// but allow more than two terms per equation

std::string ltrim_copy(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_plus(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t nxt = s.find(" + ", pos);
    if (nxt == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, nxt - pos));
    pos = nxt + 3;
  }
}

Term parse_long_term(const Ring& ring, const std::string& raw) {
  std::size_t star = raw.rfind('*');
  if (star == std::string::npos || star + 1 >= raw.size())
    throw ParseError("equation term must be <coef>*<var>: " + raw);
  Term t;
  t.coef = parse_element(ring, raw.substr(0, star));
  t.var = raw.substr(star + 1);
  return t;
}

LongSystem parse_long_instance(const std::string& text) {
  LongSystem sys;
  std::istringstream in(text);
  std::string line;
  uint32_t next_id = 1;
  while (std::getline(in, line)) {
    std::size_t comment = line.find(';');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = ltrim_copy(line);
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
    LongEquation e;
    e.soft = soft;
    e.rhs = parse_element(*sys.ring, ltrim_copy(body.substr(eq_pos + 3)));
    for (const auto& part : split_plus(ltrim_copy(body.substr(0, eq_pos))))
      e.terms.push_back(parse_long_term(*sys.ring, ltrim_copy(part)));
    e.id = "e" + std::to_string(next_id++);
    sys.eqs.push_back(std::move(e));
  }
  if (!sys.ring) throw ParseError("instance has no ring line");
  return sys;
}

std::string serialize_long(const LongSystem& sys) {
  const Ring& R = *sys.ring;
  std::string out = "ring " + R.describe() + "\n";
  out += "param k " + std::to_string(sys.k) + "\n";
  for (const auto& e : sys.eqs) {
    out += e.soft ? "soft " : "crisp ";
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
      if (i) out += " + ";
      out += R.show(e.terms[i].coef) + "*" + e.terms[i].var;
    }
    out += " = " + R.show(e.rhs) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// verbs

void print_classification(const Ring& ring, const Classification& cl) {
  std::cout << "ring " << ring.describe() << "\n";
  std::cout << "chain " << show_bool(cl.chain) << "\n";
  std::cout << "local " << show_bool(cl.local) << "\n";
  std::cout << "lineal " << show_tri(cl.lineal) << "\n";
  std::cout << "helly " << show_tri(cl.helly) << "\n";
  std::cout << "bergen " << show_bergen(cl.bergen) << "\n";
  if (!cl.bergen_route.empty())
    std::cout << "route " << cl.bergen_route << "\n";
  if (cl.gamma) std::cout << "gamma " << cl.gamma->str() << "\n";
  if (!cl.chain_counter.empty())
    std::cout << "chain-counter " << join(cl.chain_counter, ", ") << "\n";
  if (!cl.lineal_counter.empty())
    std::cout << "lineal-counter " << join(cl.lineal_counter, ", ") << "\n";
  if (!cl.tangle_counter.empty())
    std::cout << "tangle " << join(cl.tangle_counter, ", ") << "\n";
}

int cmd_classify(const std::string& ring_arg) {
  auto ring = load_ring(ring_arg);
  print_classification(*ring, classify(ring));
  return 0;
}

int cmd_geometry(const std::string& ring_arg) {
  auto ring = load_ring(ring_arg);
  auto m = exponent_model(*ring);
  std::cout << "ring " << ring->describe() << "\n";
  std::cout << "vars";
  for (const auto& v : m.vars) std::cout << " " << v;
  std::cout << "\nzero-gens";
  for (const auto& g : m.gens) std::cout << " " << show_expo(g);
  std::cout << "\n";
  if (!m.exceptions.empty()) {
    std::cout << "exceptions";
    for (const auto& g : m.exceptions) std::cout << " " << show_expo(g);
    std::cout << "\n";
  }
  std::cout << "nonzero-count " << m.nonzero.size() << "\n";

  std::optional<ConditionPWitness> cw;
  std::cout << "condition-p " << show_bool(condition_p(m, &cw)) << "\n";
  if (cw)
    std::cout << "condition-p-counter " << show_expo(cw->p1) << "+"
              << show_expo(cw->p2) << " = " << show_expo(cw->q1) << "+"
              << show_expo(cw->q2) << "\n";

  std::optional<Expo> zh;
  std::cout << "z-hole-free " << show_bool(is_z_hole_free(m, &zh)) << "\n";
  if (zh) std::cout << "z-hole " << show_expo(*zh) << "\n";
  std::optional<Expo> nh;
  std::cout << "n-hole-free " << show_bool(is_n_hole_free(m, &nh)) << "\n";
  if (nh) std::cout << "n-hole " << show_expo(*nh) << "\n";

  std::optional<SegmentWitness> sw;
  std::cout << "z-1convex " << show_bool(is_z_1convex(m, &sw)) << "\n";
  if (sw)
    std::cout << "z-1convex-counter " << show_expo(sw->a) << " "
              << show_expo(sw->b) << " mid " << show_expo(sw->mid) << "\n";

  auto sep = hyperplane_separation(m);
  std::cout << "fully-convex " << show_bool(sep.has_value()) << "\n";
  if (sep) {
    std::cout << "weights";
    for (const auto& w : sep->w) std::cout << " " << show_rat(w);
    std::cout << " threshold " << show_rat(sep->threshold) << "\n";
  }

  std::optional<CancellationWitness> cnw;
  std::cout << "no-cancellations " << show_tri(no_cancellations(*ring, &cnw))
            << "\n";
  if (cnw)
    std::cout << "cancellation-counter " << ring->show(cnw->p) << ", "
              << ring->show(cnw->q) << "\n";

  auto lat = annihilator_lattice_report(*ring);
  std::cout << "lattice-distributive " << show_tri(lat.distributive) << "\n";
  std::cout << "lattice-family " << lat.family_size << "\n";
  if (lat.diamond)
    std::cout << "lattice-diamond " << (*lat.diamond)[0] << " | "
              << (*lat.diamond)[1] << " | " << (*lat.diamond)[2] << "\n";
  return 0;
}

int cmd_witness(const std::string& ring_arg, uint64_t search_cap) {
  auto ring = load_ring(ring_arg);
  BergenSearchLimits limits;
  if (search_cap) limits.size_cap = search_cap;
  auto cl = classify(ring, limits);
  std::cout << "ring " << ring->describe() << "\n";
  std::cout << "status " << show_bergen(cl.bergen) << "\n";
  if (!cl.bergen_route.empty())
    std::cout << "route " << cl.bergen_route << "\n";
  if (cl.gamma) std::cout << "gamma " << cl.gamma->str() << "\n";
  if (cl.witness) {
    const auto& w = *cl.witness;
    std::cout << "levels " << w.parts.size() << "\n";
    for (std::size_t i = 0; i < w.chain.size(); ++i)
      std::cout << "ideal " << i << " " << show_elems(*ring, w.chain[i])
                << "\n";
    for (std::size_t i = 0; i < w.parts.size(); ++i) {
      std::cout << "classes " << i;
      for (const auto& c : w.parts[i].classes)
        std::cout << " " << show_elems(*ring, c);
      std::cout << "\n";
    }
  }
  if (cl.bergen == BergenStatus::NoneWithinLimits) return 3;
  return 0;
}

void print_assignment(const Ring& ring, const Assignment& a) {
  for (const auto& [v, val] : a)
    std::cout << "assign " << v << " " << ring.show(val) << "\n";
}

int cmd_solve_exact(const std::string& path) {
  auto sys = parse_instance(slurp(path));
  auto a = feasible(sys);
  if (a) {
    std::cout << "verdict sat\n";
    print_assignment(*sys.ring, *a);
  } else {
    std::cout << "verdict unsat\n";
  }
  return 0;
}

int cmd_solve_brute(const std::string& path) {
  auto sys = parse_instance(slurp(path));
  auto br = brute_min(sys);
  if (!br.available) {
    std::cout << "verdict unavailable\n";
    return 3;
  }
  if (!br.cost) {
    std::cout << "verdict infeasible\n";
    return 0;
  }
  std::cout << "verdict cost\n";
  std::cout << "cost " << *br.cost << "\n";
  print_assignment(*sys.ring, br.assignment);
  std::cout << "deleted";
  for (const auto& id : br.deleted) std::cout << " " << id;
  std::cout << "\n";
  return 0;
}

void print_approx(const Ring& ring, const ApproxResult& res,
                  const std::vector<std::string>& trace) {
  std::cout << "verdict " << (res.accepted ? "accepted" : "rejected") << "\n";
  std::cout << "gamma " << res.gamma.str() << "\n";
  std::cout << "class-counts";
  for (auto d : res.class_counts) std::cout << " " << d;
  std::cout << "\n";
  if (res.accepted) {
    std::cout << "cost " << res.measured_cost << "\n";
    print_assignment(ring, res.assignment);
  }
  for (const auto& line : trace) std::cout << "trace " << line << "\n";
}

int cmd_solve_approx(const std::string& path, uint64_t seed, uint32_t trials,
                     bool exhaustive) {
  auto sys = parse_instance(slurp(path));
  ApproxOptions opt;
  opt.seed = seed;
  opt.trials = trials;
  opt.exhaustive_cuts = exhaustive;
  std::vector<std::string> trace;
  opt.trace = &trace;

  auto dec = decompose_local(sys.ring);
  if (dec.factors.size() > 1) {
    auto res = sum_solve(sys, sys.k, opt);
    print_approx(*sys.ring, res, trace);
    return 0;
  }
  auto cl = classify(sys.ring);
  if (cl.bergen == BergenStatus::RefutedViaLineal)
    throw std::invalid_argument(
        "ring admits no approximation witness (not lineal)");
  if (!cl.witness) {
    std::cerr << "error: no approximation witness found within limits\n";
    return 3;
  }
  auto res = bergen_solve(sys, sys.k, *cl.witness, opt);
  print_approx(*sys.ring, res, trace);
  return 0;
}

int cmd_verify(const std::string& inst_path, const std::string& asg_path) {
  auto sys = parse_instance(slurp(inst_path));
  Assignment a;
  std::istringstream in(slurp(asg_path));
  std::string line;
  while (std::getline(in, line)) {
    std::size_t comment = line.find(';');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = ltrim_copy(line);
    if (line.empty()) continue;
    if (line.rfind("assign ", 0) == 0) line = ltrim_copy(line.substr(7));
    std::size_t eq = line.find(" = ");
    std::string var, val;
    if (eq != std::string::npos) {
      var = ltrim_copy(line.substr(0, eq));
      val = ltrim_copy(line.substr(eq + 3));
    } else {
      std::size_t sp = line.find(' ');
      if (sp == std::string::npos)
        throw ParseError("assignment line must be '<var> = <elem>': " + line);
      var = line.substr(0, sp);
      val = ltrim_copy(line.substr(sp + 1));
    }
    a[var] = parse_element(*sys.ring, val);
  }
  auto c = cost(sys, a);
  if (!c) {
    std::cout << "verdict infeasible\n";
  } else {
    std::cout << "verdict cost\n";
    std::cout << "cost " << *c << "\n";
  }
  return 0;
}

// --- generators -----------------------------------------------------------

struct GenRandomArgs {
  std::string ring = "z4";
  uint32_t vars = 4, eqs = 6;
  double soft = 1.0;
  int64_t planted = -1;  // <0 = none
  uint64_t seed = 0;
  bool restrictions = false;
  int64_t k = -1;  // <0 = keep the generator's default
};

int cmd_gen_random(const GenRandomArgs& g) {
  auto ring = load_ring(g.ring);
  std::optional<uint32_t> planted;
  if (g.planted >= 0) planted = static_cast<uint32_t>(g.planted);
  auto sys = random_instance(ring, g.vars, g.eqs, g.soft, planted, g.seed,
                             g.restrictions);
  if (g.k >= 0) sys.k = static_cast<uint64_t>(g.k);
  std::cout << serialize_instance(sys);
  return 0;
}

int cmd_gen_ternarize(const std::string& path) {
  auto sys = parse_long_instance(slurp(path));
  LongSystem out;
  out.ring = sys.ring;
  out.k = sys.k;
  for (std::size_t i = 0; i < sys.eqs.size(); ++i) {
    auto chain =
        ternarize(sys.ring, sys.eqs[i], "t" + std::to_string(i) + "#");
    for (auto& e : chain) out.eqs.push_back(std::move(e));
  }
  std::cout << serialize_long(out);
  return 0;
}

int cmd_gen_tangle(const std::string& path, const std::string& ring_arg) {
  auto field_sys = parse_long_instance(slurp(path));
  auto ring = load_ring(ring_arg);
  std::cout << serialize_instance(tangle_gadget(field_sys, ring));
  return 0;
}

struct GenPairedArgs {
  std::string ring = "tangle16";
  uint32_t classes = 2;
  uint32_t size = 2;
  uint32_t edges = 4;
  uint64_t seed = 0;
};

int cmd_gen_paired(const GenPairedArgs& g) {
  auto ring = load_ring(g.ring);
  MdbsInstance in;
  in.k = g.classes;
  in.a_sizes.assign(g.classes, g.size);
  in.b_sizes.assign(g.classes, g.size);
  std::mt19937_64 rng(g.seed);
  for (uint32_t e = 0; e < g.edges; ++e) {
    uint32_t i = static_cast<uint32_t>(rng() % g.classes);
    uint32_t j = static_cast<uint32_t>(rng() % g.size);
    uint32_t i2 = static_cast<uint32_t>(rng() % g.classes);
    uint32_t j2 = static_cast<uint32_t>(rng() % g.size);
    in.edges.push_back({i, j, i2, j2});
  }
  auto cut = split_paired_paths(in);
  std::cout << serialize_instance(paired_cut_gadget(cut, ring));
  return 0;
}

// --- catalog --------------------------------------------------------------

// Pinned expectations; -1 = unconstrained, 0 = false, 1 = true.
struct CatalogExpect {
  const char* name;
  int chain, local, lineal, helly;
  const char* bergen;  // nullptr = unconstrained
  const char* route;   // nullptr = unconstrained
};

const CatalogExpect kExpected[] = {
    {"z2", 1, 1, 1, 1, "found", "chain"},
    {"z3", 1, 1, 1, 1, "found", "chain"},
    {"z4", 1, 1, 1, 1, "found", "chain"},
    {"z5", 1, 1, 1, 1, "found", "chain"},
    {"z6", 0, 0, 0, 1, "refuted-via-lineal", nullptr},
    {"z8", 1, 1, 1, 1, "found", "chain"},
    {"z9", 1, 1, 1, 1, "found", "chain"},
    {"z27", 1, 1, 1, 1, "found", "chain"},
    {"table1", 0, 1, 1, 1, "found", nullptr},
    {"tangle16", 0, 1, 0, 0, "refuted-via-lineal", nullptr},
    {"helly32", 0, 1, 0, 1, "refuted-via-lineal", nullptr},
    {"hole_ring", 0, 1, 0, 0, "refuted-via-lineal", nullptr},
    {"oneconvex_ring", 0, 1, 0, 0, "refuted-via-lineal", nullptr},
    {"r_knt", 0, 1, 1, 1, "found", "level-map"},
    {"r_347", 0, 1, 1, 1, "found", "level-map"},
    {"double_hole_free", 0, 1, 0, 1, "refuted-via-lineal", nullptr},
    {"huneke_swanson", 0, 1, 1, 1, nullptr, nullptr},
    {"diamond", 0, 1, 0, 1, "refuted-via-lineal", nullptr},
};

const CatalogExpect* find_expect(const std::string& name) {
  for (const auto& e : kExpected)
    if (name == e.name) return &e;
  return nullptr;
}

bool tri_is(TriState t, int v) {
  if (v < 0) return true;
  return t == (v ? TriState::Yes : TriState::No);
}

int cmd_catalog(const std::string& only) {
  int checked = 0;
  for (const auto& entry : catalog()) {
    if (!only.empty() && entry.name != only) continue;
    ++checked;
    std::cout << "name " << entry.name << "\n";
    auto cl = classify(entry.ring);
    print_classification(*entry.ring, cl);

    auto mismatch = [&](const std::string& field, const std::string& expect,
                        const std::string& got) {
      std::cout << "mismatch " << entry.name << " " << field << " expected "
                << expect << " got " << got << "\n";
      return 1;
    };
    if (const CatalogExpect* e = find_expect(entry.name)) {
      if (e->chain >= 0 && cl.chain != (e->chain != 0))
        return mismatch("chain", show_bool(e->chain), show_bool(cl.chain));
      if (e->local >= 0 && cl.local != (e->local != 0))
        return mismatch("local", show_bool(e->local), show_bool(cl.local));
      if (!tri_is(cl.lineal, e->lineal))
        return mismatch("lineal", show_bool(e->lineal), show_tri(cl.lineal));
      if (!tri_is(cl.helly, e->helly))
        return mismatch("helly", show_bool(e->helly), show_tri(cl.helly));
      if (e->bergen && std::string(show_bergen(cl.bergen)) != e->bergen)
        return mismatch("bergen", e->bergen, show_bergen(cl.bergen));
      if (e->route && cl.bergen_route != e->route)
        return mismatch("route", e->route, cl.bergen_route);
    }

    // geometry cross-checks on monomial quotients
    bool monomial =
        entry.ring->monomials() && !entry.ring->monomials()->mons.empty();
    if (monomial) {
      auto m = exponent_model(*entry.ring);
      bool cp = condition_p(m);
      std::cout << "condition-p " << show_bool(cp) << "\n";
      if (cl.lineal != TriState::Unknown &&
          cp != (cl.lineal == TriState::Yes))
        return mismatch("condition-p", show_tri(cl.lineal), show_bool(cp));
      bool zhf = is_z_hole_free(m);
      bool z1c = is_z_1convex(m);
      auto nc = no_cancellations(*entry.ring);
      std::cout << "z-hole-free " << show_bool(zhf) << "\n";
      std::cout << "z-1convex " << show_bool(z1c) << "\n";
      std::cout << "no-cancellations " << show_tri(nc) << "\n";
      // implication suite: Z-hole-free => no-canc => Helly => Z-1-convex
      if (zhf && nc == TriState::No)
        return mismatch("no-cancellations", "true (Z-hole-free)",
                        show_tri(nc));
      if (nc == TriState::Yes && cl.helly == TriState::No)
        return mismatch("helly", "true (no cancellations)",
                        show_tri(cl.helly));
      if (cl.helly == TriState::Yes && !z1c)
        return mismatch("z-1convex", "true (Helly)", show_bool(z1c));
    }
    std::cout << "expected ok\n";
  }
  if (!only.empty() && checked == 0)
    throw std::invalid_argument("unknown catalog ring '" + only + "'");
  std::cout << "catalog ok " << checked << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // RINGLIN_THREADS caps module parallelism; all verbs are deterministic
  // regardless, so the value is validated and stored only.
  if (const char* t = std::getenv("RINGLIN_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(t, &end, 10);
    if (!end || *end != '\0' || v < 1) {
      std::cerr << "error: RINGLIN_THREADS must be a positive integer\n";
      return 64;
    }
  }

  CLI::App app{
      "ringlin: Min-2-Lin over finite commutative rings.\n"
      "Reports are line-delimited 'key value' records with stable key order.\n"
      "Exit codes: 0 completed, 1 mismatch, 2 domain error, 3 incomplete "
      "search, 64 usage error."};
  app.require_subcommand(1);
  argv = app.ensure_utf8(argv);

  std::string ring_arg, inst_arg, asg_arg, only_name;
  uint64_t search_cap = 0, seed = 0;
  uint32_t trials = 8;
  bool exhaustive = false;
  GenRandomArgs grand;
  GenPairedArgs gpair;
  std::string gen_in, gen_ring;

  auto* c_classify = app.add_subcommand(
      "classify", "Classify a ring (chain/local/lineal/Helly/Bergen)");
  c_classify->add_option("ring", ring_arg, "ring file, catalog name or s-expr")
      ->required();

  auto* c_geometry = app.add_subcommand(
      "geometry", "Exponent-set geometry report of a monomial quotient");
  c_geometry->add_option("ring", ring_arg, "ring file, catalog name or s-expr")
      ->required();

  auto* c_witness =
      app.add_subcommand("witness", "Produce an approximation witness");
  c_witness->add_option("ring", ring_arg, "ring file, catalog name or s-expr")
      ->required();
  c_witness->add_option("--search-cap", search_cap,
                        "ring-size cap for the witness search");

  auto* c_solve = app.add_subcommand("solve", "Solve an instance");
  c_solve->require_subcommand(1);
  auto* c_exact =
      c_solve->add_subcommand("exact", "Crisp feasibility (all equations hard)");
  c_exact->add_option("instance", inst_arg, "instance file")->required();
  auto* c_brute = c_solve->add_subcommand("brute", "Brute-force minimum cost");
  c_brute->add_option("instance", inst_arg, "instance file")->required();
  auto* c_approx =
      c_solve->add_subcommand("approx", "Randomized FPT approximation");
  c_approx->add_option("instance", inst_arg, "instance file")->required();
  c_approx->add_option("--seed", seed, "64-bit random seed");
  c_approx->add_option("--trials", trials, "number of randomized trials");
  c_approx->add_flag("--exhaustive-cuts", exhaustive,
                     "enumerate all shadows and cuts deterministically");

  auto* c_gen = app.add_subcommand("gen", "Generate instances");
  c_gen->require_subcommand(1);
  auto* g_random = c_gen->add_subcommand("random", "Random (optionally planted)");
  g_random->add_option("--ring", grand.ring, "ring file, catalog name or s-expr");
  g_random->add_option("--vars", grand.vars, "number of variables");
  g_random->add_option("--eqs", grand.eqs, "number of equations");
  g_random->add_option("--soft", grand.soft, "soft fraction in [0,1]");
  g_random->add_option("--planted", grand.planted, "planted optimum");
  g_random->add_option("--seed", grand.seed, "64-bit random seed");
  g_random->add_flag("--restrictions", grand.restrictions,
                     "add random coset restrictions");
  g_random->add_option("--k", grand.k, "override the parameter k");
  auto* g_tern = c_gen->add_subcommand(
      "ternarize", "Rewrite long equations into unit-coefficient chains");
  g_tern->add_option("instance", gen_in, "multi-term instance file")->required();
  auto* g_tangle = c_gen->add_subcommand(
      "tangle", "Field Min-3-Lin to Min-2-Lin over a non-Helly local ring");
  g_tangle->add_option("instance", gen_in, "field instance file")->required();
  g_tangle->add_option("--ring", gen_ring, "target non-Helly local ring")
      ->required();
  auto* g_paired = c_gen->add_subcommand(
      "paired", "Split paired min cut gadget over a non-lineal ring");
  g_paired->add_option("--ring", gpair.ring, "target non-lineal ring");
  g_paired->add_option("--classes", gpair.classes, "classes per side");
  g_paired->add_option("--size", gpair.size, "vertices per class");
  g_paired->add_option("--edges", gpair.edges, "number of random edges");
  g_paired->add_option("--seed", gpair.seed, "64-bit random seed");

  auto* c_verify =
      app.add_subcommand("verify", "Cost of an assignment on an instance");
  c_verify->add_option("instance", inst_arg, "instance file")->required();
  c_verify->add_option("assignment", asg_arg, "assignment file")->required();

  auto* c_catalog =
      app.add_subcommand("catalog", "Check the built-in ring catalog");
  c_catalog->add_option("--name", only_name, "check a single entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  try {
    if (c_classify->parsed()) return cmd_classify(ring_arg);
    if (c_geometry->parsed()) return cmd_geometry(ring_arg);
    if (c_witness->parsed()) return cmd_witness(ring_arg, search_cap);
    if (c_exact->parsed()) return cmd_solve_exact(inst_arg);
    if (c_brute->parsed()) return cmd_solve_brute(inst_arg);
    if (c_approx->parsed())
      return cmd_solve_approx(inst_arg, seed, trials, exhaustive);
    if (g_random->parsed()) return cmd_gen_random(grand);
    if (g_tern->parsed()) return cmd_gen_ternarize(gen_in);
    if (g_tangle->parsed()) return cmd_gen_tangle(gen_in, gen_ring);
    if (g_paired->parsed()) return cmd_gen_paired(gpair);
    if (c_verify->parsed()) return cmd_verify(inst_arg, asg_arg);
    if (c_catalog->parsed()) return cmd_catalog(only_name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 64;
}
