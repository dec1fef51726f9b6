// cover2: command-line front end for the cover2 library.
// Exit codes: 0 success, 1 a check failed, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cover2/acceptance.hpp"
#include "cover2/audit.hpp"
#include "cover2/constructor.hpp"
#include "cover2/cover.hpp"
#include "cover2/ffpoly.hpp"
#include "cover2/generators.hpp"
#include "cover2/numtheory.hpp"
#include "cover2/torus.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace cover2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A finished report: JSON body, table text and exit status. Emitted only once complete.
struct Report {
  json body = json::object();
  std::ostringstream table;
  int code = 0;
};

struct Config {
  std::string format = "table";
  unsigned threads = 0;
  std::size_t cap = kDefaultEnumerationCap;
  std::string family = "Sp";
  unsigned n = 0;
  std::uint64_t q = 0;
};

std::string big(const BigInt& v) { return to_string(v); }

GroupId group_of(const Config& c) {
  auto f = parse_family(c.family);
  if (!f) throw UsageError("unknown family " + c.family);
  if (c.n == 0 || c.q == 0) throw UsageError("--n and --q are required");
  return GroupId::make(*f, c.n, c.q);
}

json parts_json(const ActionType& a) {
  json j = json::array();
  for (auto it = a.parts.rbegin(); it != a.parts.rend(); ++it) j.push_back({it->first, it->second});
  return j;
}

std::string join(const std::vector<BigInt>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + big(x);
  return s;
}

// ---------------------------------------------------------------- subcommands

Report cmd_field(std::uint32_t p, std::uint32_t f, unsigned degree, const std::string& order) {
  Report r;
  FieldPtr F = field_make(p, f);
  r.body["p"] = p;
  r.body["f"] = f;
  r.body["q"] = F->q();
  r.body["modulus"] = Poly(prime_field(p), std::vector<Elem>(F->modulus().begin(), F->modulus().end())).serialize();
  r.body["primitive"] = F->primitive();
  r.table << "GF(" << F->q() << ") = GF(" << p << ")[x]/(" << r.body["modulus"].get<std::string>() << ")\n"
          << "primitive element index: " << F->primitive() << "\n";
  if (degree) {
    Extension ext(F, degree);
    const BigInt m = order.empty() ? ext.order() - 1 : BigInt(order);
    auto e = element_of_order(ext, m);
    r.body["extension"] = {{"degree", degree},
                           {"order", big(m)},
                           {"element", e.element.serialize()},
                           {"minimal_polynomial", e.minimal_polynomial.serialize()},
                           {"minimal_polynomial_degree", e.minimal_polynomial.degree()}};
    r.table << "GF(" << F->q() << "^" << degree << "): element of order " << m << " = [" << e.element.serialize()
            << "], minimal polynomial [" << e.minimal_polynomial.serialize() << "] of degree "
            << e.minimal_polynomial.degree() << "\n";
  }
  return r;
}

Report cmd_zsigmondy(std::uint64_t q, unsigned t) {
  if (!is_prime_power(q)) throw UsageError("q must be a prime power");
  if (t < 2) throw UsageError("t must be at least 2");
  Report r;
  const auto s = zsigmondy_set(q, t);
  r.body["q"] = q;
  r.body["t"] = t;
  json arr = json::array();
  for (const auto& x : s) arr.push_back(big(x));
  r.body["primes"] = arr;
  r.table << "P_" << t << "(" << q << ") = {" << join(s) << "}\n";
  if (s.empty()) {
    const std::string note = q == 2 && t == 6 ? "(q,t) = (2,6): 2^6 - 1 = 63 = 3^2 * 7 has no primitive prime divisor"
                                              : "t = 2 and q + 1 is a power of 2";
    r.body["note"] = note;
    r.table << "note: " << note << "\n";
  }
  return r;
}

Report cmd_gcd_identities(std::uint64_t q, long long a, long long b) {
  if (!is_prime_power(q)) throw UsageError("q must be a prime power");
  if (a < 1 || b < 1) throw UsageError("a and b must be positive");
  Report r;
  json items = json::array();
  r.table << std::left << std::setw(6) << "item" << std::setw(12) << "status" << "lhs | rhs\n";
  for (const auto& it : gcd_identity_audit(q, a, b)) {
    const std::string st = !it.applicable ? "n/a" : it.holds ? "holds" : "FAILS";
    items.push_back({{"item", it.item}, {"applicable", it.applicable}, {"holds", it.holds}, {"lhs", it.lhs}, {"rhs", it.rhs}});
    r.table << std::setw(6) << it.item << std::setw(12) << st << it.lhs << (it.applicable ? " | " : "") << it.rhs << "\n";
    if (it.applicable && !it.holds) r.code = 1;
  }
  r.body["q"] = q;
  r.body["a"] = a;
  r.body["b"] = b;
  r.body["items"] = items;
  return r;
}

Report cmd_bertrand(const Config& c, std::optional<unsigned> t) {
  if (c.n < 5 && !t) throw UsageError("--n must be at least 5 (or give --t)");
  Report r;
  r.body["n"] = c.n;
  if (c.n >= 5) {
    r.body["bertrand_number"] = bertrand_number(c.n);
    r.table << "Bertrand number for n = " << c.n << ": " << bertrand_number(c.n) << "\n";
  }
  if (c.q) {
    const GroupId g = group_of(c);
    const BertrandOrder bo = bertrand_order(g, t);
    const bool ppd = is_ppd_order(bo.d, g.q, bo.e, bo.order);
    r.body["group"] = g.str();
    r.body["t"] = bo.t;
    r.body["order"] = big(bo.order);
    r.body["d"] = bo.d;
    r.body["e"] = bo.e;
    r.body["ppd"] = ppd;
    r.table << g.str() << ": t = " << bo.t << ", order " << bo.order << ", ppd(" << bo.d << "," << g.q << ";" << bo.e
            << ") " << (ppd ? "yes" : "no") << "\n";
  }
  return r;
}

Report cmd_singer(const Config& c) {
  const GroupId g = group_of(c);
  const SingerOrder so = singer_order(g);
  Report r;
  r.body["group"] = g.str();
  r.body["general"] = big(so.general);
  r.body["derived"] = big(so.derived);
  r.table << g.str() << ": Singer order " << so.general << " (derived group " << so.derived << ")\n";
  return r;
}

Report cmd_construct(const Config& c, const std::string& element, std::optional<unsigned> rank, bool show_matrix) {
  const GroupId g = group_of(c);
  SpecialElement e;
  if (element == "singer") e = singer_cycle(g);
  else if (element == "low_singer") {
    if (!rank) throw UsageError("low_singer needs --rank");
    e = low_singer(g, *rank);
  } else if (element == "linear_singer") e = linear_singer(g);
  else if (element == "bertrand") e = bertrand_element(g, rank);
  else if (element == "omega2minus") e = omega2minus_generator(g.q);
  else if (element == "xi") {
    if (!rank) throw UsageError("xi needs --rank m");
    e = xi_element(g, *rank);
  } else {
    throw UsageError("unknown element " + element);
  }
  const Certificate cert = certify(e);
  Report r;
  r.body["group"] = e.group.str();
  r.body["element"] = e.label;
  r.body["decomposition"] = e.decomposition;
  if (e.rank) r.body["rank"] = e.rank;
  r.body["declared_order"] = big(e.declared_order);
  r.body["order"] = big(cert.order);
  r.body["declared_action"] = e.declared_action.str();
  r.body["action"] = cert.action.str();
  r.body["action_parts"] = parts_json(cert.action);
  r.body["squarefree"] = cert.action.squarefree;
  r.body["order_ok"] = cert.order_ok;
  r.body["action_ok"] = cert.action_ok;
  r.body["form_ok"] = cert.form_ok;
  if (e.form) r.body["form"] = to_string(e.form->kind);
  if (cert.form_type) r.body["form_type"] = cert.form_type > 0 ? "+" : "-";
  if (e.label == "bertrand") r.body["critical"] = e.critical;
  r.body["certified"] = cert.ok();
  r.table << e.label << " in " << e.group.str() << " (blocks " << e.decomposition << ")\n"
          << "  order  " << cert.order << " (declared " << e.declared_order << ") " << (cert.order_ok ? "ok" : "MISMATCH") << "\n"
          << "  action " << cert.action.str() << (cert.action.squarefree ? "" : " (char poly not squarefree)") << " (declared "
          << e.declared_action.str() << ") " << (cert.action_ok ? "ok" : "MISMATCH") << "\n"
          << "  form   " << (e.form ? to_string(e.form->kind) : std::string("none"))
          << (cert.form_type ? (cert.form_type > 0 ? " plus type" : " minus type") : "") << " " << (cert.form_ok ? "ok" : "FAILS")
          << "\n";
  if (e.label == "bertrand" && e.critical) r.table << "  critical: P_2(n-t)(q) is empty\n";
  if (show_matrix) {
    r.body["matrix"] = e.matrix.to_fixture();
    r.table << e.matrix.to_fixture();
  }
  if (!cert.ok()) r.code = 1;
  return r;
}

Report cmd_torus(const Config& c, const std::string& order, bool spectrum) {
  const GroupId g = group_of(c);
  Report r;
  r.body["group"] = g.str();
  if (!order.empty()) {
    const BigInt m(order);
    const TorusWitness w = has_semisimple_of_order(g, m);
    r.body["order"] = big(m);
    r.body["exists"] = w.exists;
    r.body["exact"] = w.exact;
    if (w.exists) r.body["partition"] = w.partitions.at(0);
    r.table << g.str() << ": semisimple element of order " << m << ": " << (w.exists ? "yes" : "no");
    if (w.exists) r.table << " (torus " << w.partitions.at(0) << ")";
    if (!w.exact) r.table << " [catalog describes an overgroup; only 'no' is conclusive]";
    r.table << "\n";
    return r;
  }
  if (spectrum) {
    json arr = json::array();
    std::string s;
    for (const auto& x : semisimple_order_spectrum(g)) {
      arr.push_back(big(x));
      s += (s.empty() ? "" : ",") + big(x);
    }
    r.body["spectrum"] = arr;
    r.table << g.str() << " semisimple orders: {" << s << "}\n";
    return r;
  }
  const auto cat = torus_catalog(g);
  r.body["exact"] = cat->exact;
  json arr = json::array();
  r.table << std::left << std::setw(24) << "partition" << std::setw(28) << "order" << "exponent\n";
  for (const auto& e : cat->entries) {
    const std::string p = partition_string(e.parts, has_signed_parts(g.family));
    arr.push_back({{"partition", p}, {"order", big(e.order)}, {"exponent", big(e.exponent)}});
    r.table << std::setw(24) << p << std::setw(28) << big(e.order) << big(e.exponent) << "\n";
  }
  r.body["tori"] = arr;
  return r;
}

Report cmd_enumerate(const Config& c, const std::string& gens_out) {
  const GroupId g = group_of(c);
  const EnumeratedGroup eg = enumerate_group(g, c.cap);
  Report r;
  r.body["group"] = g.str();
  r.body["order"] = eg.store.size();
  r.body["expected"] = big(group_order(g));
  r.body["generators"] = eg.gens.generators.size();
  r.table << g.str() << ": " << eg.store.size() << " elements (formula " << group_order(g) << "), "
          << eg.gens.generators.size() << " generators\n";
  if (!gens_out.empty()) {
    std::ofstream out(gens_out);
    if (!out) throw UsageError("cannot write " + gens_out);
    for (const auto& m : eg.gens.generators) out << m.to_fixture();
  }
  if (BigInt(eg.store.size()) != group_order(g)) r.code = 1;
  return r;
}

ClassTable classes_of(const GroupId& g, std::size_t cap) { return conjugacy_classes(enumerate_group(g, cap).store); }

Report cmd_classes(const Config& c) {
  const GroupId g = group_of(c);
  const ClassTable ct = classes_of(g, c.cap);
  Report r;
  r.body["group"] = g.str();
  r.body["order"] = ct.group_order();
  r.body["num_classes"] = ct.num_classes();
  json arr = json::array();
  r.table << g.str() << ": " << ct.group_order() << " elements, " << ct.num_classes() << " classes\n";
  r.table << std::left << std::setw(7) << "class" << std::setw(10) << "size" << std::setw(10) << "order" << "action\n";
  for (std::size_t k = 0; k < ct.num_classes(); ++k) {
    const auto& cl = ct.classes[k];
    arr.push_back({{"class", k}, {"size", cl.size}, {"order", big(cl.order)}, {"action", cl.action.str()},
                   {"squarefree", cl.action.squarefree}});
    r.table << std::setw(7) << k << std::setw(10) << cl.size << std::setw(10) << big(cl.order) << cl.action.str()
            << (cl.action.squarefree ? "" : " *") << "\n";
  }
  r.body["classes"] = arr;
  return r;
}

ElementStore store_from_file(const std::string& path, std::size_t cap) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  auto gens = read_generator_file(in);
  if (gens.empty()) throw UsageError(path + " holds no matrices");
  ElementStore s = enumerate(gens, cap);
  if (!s.complete()) throw BudgetExceeded(path + ": enumeration cap exceeded");
  return s;
}

void cover_table(Report& r, const CoverReport& cr) {
  json comps = json::array();
  for (const auto& c : cr.components) {
    comps.push_back({{"label", c.label}, {"fused_classes", c.fused_classes}, {"fused_fraction", c.fused_fraction}});
    r.table << "  " << c.label << ": meets " << c.fused_classes << " classes, " << std::fixed << std::setprecision(4)
            << c.fused_fraction << " of the group\n";
  }
  json unc = json::array();
  for (const auto& u : cr.uncovered) {
    unc.push_back({{"class", u.index}, {"order", big(u.order)}, {"action", u.action.str()}, {"size", u.size}});
    r.table << "  uncovered class " << u.index << ": order " << u.order << ", action " << u.action.str() << "\n";
  }
  for (const auto& w : cr.warnings) r.table << "  warning: " << w << "\n";
  r.body["covered"] = cr.covered;
  r.body["components"] = comps;
  r.body["uncovered"] = unc;
  r.body["warnings"] = cr.warnings;
  if (!cr.covered) r.code = 1;
}

Report cmd_cover(const Config& c, const std::string& hfile, const std::string& kfile) {
  const GroupId g = group_of(c);
  EnumeratedGroup eg = enumerate_group(g, c.cap);
  const ClassTable ct = conjugacy_classes(std::move(eg.store));
  ElementStore h(ct.store->field(), ct.store->dim()), k = h;
  std::string hl = "H", kl = "K";
  if (hfile.empty() != kfile.empty()) throw UsageError("give both --h-gens and --k-gens, or neither");
  if (hfile.empty()) {
    if (g.family != Family::Sp || g.q % 2) throw UsageError("default subgroups GO+ and GO- need Sp with q even");
    h = enumerate_group(GroupId::make(Family::GOPlus, g.n, g.q), c.cap).store;
    k = enumerate_group(GroupId::make(Family::GOMinus, g.n, g.q), c.cap).store;
    hl = "GO+";
    kl = "GO-";
  } else {
    h = store_from_file(hfile, c.cap);
    k = store_from_file(kfile, c.cap);
  }
  Report r;
  r.body["group"] = g.str();
  r.body["order"] = ct.group_order();
  r.body["num_classes"] = ct.num_classes();
  r.table << g.str() << ": " << ct.group_order() << " elements, " << ct.num_classes() << " classes; " << hl << " order "
          << h.size() << ", " << kl << " order " << k.size() << "\n";
  const CoverReport cr = is_2_covering(ct, h, k, hl, kl);
  r.table << "covered: " << (cr.covered ? "true" : "false") << "\n";
  cover_table(r, cr);
  return r;
}

Report cmd_dye(const Config& c, bool cross_check) {
  if (c.q % 2) throw UsageError("dye needs q even");
  const GroupId g = GroupId::make(Family::Sp, c.n, c.q);
  const ClassTable ct = classes_of(g, c.cap);
  const DyeReport d = dye_check_by_forms(ct, standard_alternating(ct.store->field(), c.n).gram);
  Report r;
  r.body["group"] = g.str();
  r.body["order"] = ct.group_order();
  r.body["num_classes"] = ct.num_classes();
  r.table << g.str() << ": " << ct.group_order() << " elements, " << ct.num_classes() << " classes\n";
  r.table << "covered: " << (d.cover.covered ? "true" : "false") << "\n";
  r.table << std::left << std::setw(7) << "class" << std::setw(10) << "size" << std::setw(8) << "order" << std::setw(12)
          << "action" << "types\n";
  json arr = json::array();
  const BigInt singer = ipow(BigInt(c.q), c.n) + 1;
  for (std::size_t k = 0; k < ct.num_classes(); ++k) {
    const auto& cl = ct.classes[k];
    const auto& ty = d.types[k];
    const bool is_singer = cl.order == singer && cl.action.parts == std::map<unsigned, unsigned>{{2 * c.n, 1}};
    std::string types = std::string(ty.plus ? "+" : "") + (ty.minus ? "-" : "");
    arr.push_back({{"class", k}, {"size", cl.size}, {"order", big(cl.order)}, {"action", cl.action.str()},
                   {"plus", ty.plus}, {"minus", ty.minus}, {"singer", is_singer}});
    r.table << std::setw(7) << k << std::setw(10) << cl.size << std::setw(8) << big(cl.order) << std::setw(12)
            << cl.action.str() << (types.empty() ? "none" : types) << (is_singer ? "  (Singer)" : "") << "\n";
  }
  r.body["classes"] = arr;
  r.body["covered"] = d.cover.covered;
  if (!d.cover.covered) r.code = 1;
  if (cross_check) {
    bool agree = true;
    for (Family f : {Family::GOPlus, Family::GOMinus}) {
      const auto h = enumerate_group(GroupId::make(f, c.n, c.q), c.cap).store;
      const Fusion fu = class_fusion(h, ct);
      for (std::size_t k = 0; k < ct.num_classes(); ++k)
        agree = agree && fu[k] == (f == Family::GOPlus ? d.types[k].plus : d.types[k].minus);
    }
    r.body["cross_check"] = agree;
    r.table << "subgroup fusion agrees with form types: " << (agree ? "yes" : "NO") << "\n";
    if (!agree) r.code = 1;
  }
  return r;
}

json verdict_json(const CheckVerdict& v) {
  json j = {{"check", v.source}, {"type", to_string(v.type)}, {"lhs", v.lhs}, {"rhs", v.rhs},
            {"pass", v.pass},    {"advisory", v.advisory}};
  if (!v.binding.empty()) j["binding"] = v.binding;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

const ScenarioCatalog& catalog_for(const std::string& path, ScenarioCatalog& storage) {
  if (!path.empty()) {
    storage = load_scenarios(path);
    return storage;
  }
#ifdef COVER2_HAVE_EMBEDDED_SCENARIOS
  return builtin_scenarios();
#else
  throw UsageError("no built-in scenario catalog; pass --scenarios");
#endif
}

struct AuditArgs {
  std::string scenarios, id, ids, qs = "2,3,4,5,7,8,9";
  bool list = false, all = false, verbose = false;
  unsigned nmin = 5, nmax = 0;
  std::optional<unsigned> t;
};

std::vector<std::uint64_t> parse_qs(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoull(tok));
  if (out.empty()) throw UsageError("empty --qs");
  return out;
}

Report cmd_audit(const Config& c, const AuditArgs& a) {
  ScenarioCatalog storage;
  const ScenarioCatalog& cat = catalog_for(a.scenarios, storage);
  Report r;
  if (a.list) {
    json arr = json::array();
    for (const auto& s : list_scenarios(cat)) {
      arr.push_back({{"id", s.id}, {"citation", s.citation}, {"applies", s.applies}, {"checks", s.checks}, {"manual", s.manual}});
      r.table << std::left << std::setw(30) << s.id << s.citation << "\n"
              << std::setw(30) << "" << "applies: " << s.applies << "; " << s.checks << " checks, " << s.manual
              << " manual steps\n";
    }
    r.body["scenarios"] = arr;
    return r;
  }
  if (a.all) {
    if (a.nmax < a.nmin) throw UsageError("--all needs --nmax >= --nmin");
    std::vector<std::string> ids = all_ids(cat);
    if (!a.ids.empty()) {
      ids.clear();
      std::stringstream ss(a.ids);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) ids.push_back(tok);
    }
    const GridSummary g = run_grid(cat, ids, a.nmin, a.nmax, parse_qs(a.qs), c.threads);
    const auto qs = parse_qs(a.qs);
    r.table << "n in [" << a.nmin << "," << a.nmax << "], q in {" << a.qs << "}; P pass, F fail, . inapplicable\n";
    r.table << std::left << std::setw(30) << "scenario";
    for (unsigned n = a.nmin; n <= a.nmax; ++n) r.table << std::setw(static_cast<int>(qs.size()) + 1) << n;
    r.table << "\n";
    json cells = json::array();
    std::size_t i = 0;
    for (const auto& id : ids) {
      r.table << std::setw(30) << id;
      for (unsigned n = a.nmin; n <= a.nmax; ++n) {
        std::string row;
        for (std::size_t k = 0; k < qs.size(); ++k, ++i) {
          const GridCell& cell = g.cells[i];
          row += cell.status == CellStatus::Pass ? 'P' : cell.status == CellStatus::Fail ? 'F' : '.';
          if (cell.report) {
            json cj = {{"id", cell.id}, {"n", cell.n}, {"q", cell.q}, {"pass", cell.report->pass},
                       {"checks", cell.report->checks.size()}, {"advisories", cell.report->advisories},
                       {"failures", cell.report->failures}};
            if (a.verbose || !cell.report->pass) {
              json fails = json::array();
              for (const auto& v : cell.report->checks)
                if (a.verbose || (!v.pass && !v.advisory)) fails.push_back(verdict_json(v));
              cj["details"] = fails;
            }
            cells.push_back(cj);
          }
        }
        r.table << std::setw(static_cast<int>(qs.size()) + 1) << row;
      }
      r.table << "\n";
    }
    for (const auto& cell : g.cells)
      if (cell.report && !cell.report->pass)
        for (const auto& v : cell.report->checks)
          if (!v.pass && !v.advisory)
            r.table << "FAIL " << cell.id << " n=" << cell.n << " q=" << cell.q << (v.binding.empty() ? "" : " [" + v.binding + "]")
                    << ": " << v.source << " (" << v.lhs << " | " << v.rhs << ")" << (v.note.empty() ? "" : " " + v.note) << "\n";
    r.table << "cells: " << g.passed << " passed, " << g.failed << " failed, " << g.inapplicable << " inapplicable; "
            << g.checks << " checks, " << g.advisories << " advisory\n";
    r.body["summary"] = {{"passed", g.passed}, {"failed", g.failed}, {"inapplicable", g.inapplicable},
                         {"checks", g.checks}, {"advisories", g.advisories}};
    r.body["cells"] = cells;
    if (g.failed) r.code = 1;
    return r;
  }
  if (a.id.empty() || !c.n || !c.q) throw UsageError("audit needs --list, --all, or --id with --n and --q");
  AuditOverrides ov;
  ov.t = a.t;
  const AuditScenario* s = cat.find(a.id);
  if (!s) throw UsageError("unknown scenario id " + a.id);
  AuditReport rep;
  try {
    rep = run_scenario(*s, c.n, c.q, ov);
  } catch (const ScenarioInapplicable& e) {
    throw UsageError(e.what());
  }
  r.body["id"] = rep.id;
  r.body["citation"] = rep.citation;
  r.body["n"] = rep.n;
  r.body["q"] = rep.q;
  if (rep.t) r.body["t"] = *rep.t;
  json checks = json::array();
  r.table << rep.id << " (" << rep.citation << "), n = " << rep.n << ", q = " << rep.q;
  if (rep.t) r.table << ", t = " << *rep.t;
  r.table << "\n";
  for (const auto& v : rep.checks) {
    checks.push_back(verdict_json(v));
    const std::string st = v.advisory ? (v.pass ? "adv-ok" : "adv") : (v.pass ? "pass" : "FAIL");
    r.table << "  " << std::left << std::setw(7) << st << v.source << (v.binding.empty() ? "" : "  [" + v.binding + "]")
            << "\n         " << v.lhs << " | " << v.rhs << (v.note.empty() ? "" : "  " + v.note) << "\n";
  }
  for (const auto& m : rep.manual) r.table << "  manual " << m << "\n";
  r.table << (rep.pass ? "PASS" : "FAIL") << ": " << rep.checks.size() << " checks, " << rep.failures << " failed, "
          << rep.advisories << " advisory, " << rep.skipped << " guarded out\n";
  r.body["checks"] = checks;
  r.body["manual"] = rep.manual;
  r.body["skipped"] = rep.skipped;
  r.body["advisories"] = rep.advisories;
  r.body["failures"] = rep.failures;
  r.body["pass"] = rep.pass;
  if (!rep.pass) r.code = 1;
  return r;
}

Report cmd_acceptance(const Config& c, const std::string& only, const std::string& scenarios, bool timing) {
  ScenarioCatalog storage;
  AcceptanceOptions opt;
  opt.threads = c.threads;
  opt.catalog = &catalog_for(scenarios, storage);
  std::stringstream ss(only);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) opt.only.insert(std::stoi(tok));
  Report r;
  json arr = json::array();
  bool all = true;
  for (const auto& res : run_acceptance(opt)) {
    json j = {{"criterion", res.id}, {"name", res.name}, {"pass", res.pass}, {"detail", res.detail}};
    if (timing) j["seconds"] = res.seconds;
    arr.push_back(j);
    r.table << (res.pass ? "[PASS] " : "[FAIL] ") << res.id << ". " << res.name;
    if (timing) r.table << " (" << std::fixed << std::setprecision(2) << res.seconds << " s)";
    r.table << "\n       " << res.detail << "\n";
    all = all && res.pass;
  }
  r.body["criteria"] = arr;
  r.body["pass"] = all;
  if (!all) r.code = 1;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cover2: classical groups, special elements, tori, coverings and proof-step audits"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();
  app.add_option("--cap", cfg.cap, "Enumeration cap (elements)")->capture_default_str();

  auto group_opts = [&](CLI::App* s, bool family = true) {
    if (family) s->add_option("--family", cfg.family, "Group family (GL SL GU SU Sp OmegaOdd OPlus ... GOOdd)")->capture_default_str();
    s->add_option("--n", cfg.n, "Rank parameter (dimension for GL/SL/GU/SU, half-dimension otherwise)");
    s->add_option("--q", cfg.q, "Field size (q0^2 for unitary families)");
  };

  std::uint32_t fp = 0, ff = 1;
  unsigned fdeg = 0;
  std::string forder;
  auto* field = app.add_subcommand("field", "Finite field GF(p^f) and elements of given order in extensions");
  field->add_option("--p", fp, "Characteristic")->required();
  field->add_option("--f", ff, "Degree over the prime field")->capture_default_str();
  field->add_option("--degree", fdeg, "Extension degree d for element_of_order");
  field->add_option("--order", forder, "Multiplicative order m (divides q^d - 1; default q^d - 1)");

  std::uint64_t zq = 0;
  unsigned zt = 0;
  auto* zs = app.add_subcommand("zsigmondy", "Primitive prime divisors of q^t - 1");
  zs->add_option("--q", zq)->required();
  zs->add_option("--t", zt)->required();

  long long la = 0, lb = 0;
  auto* gid = app.add_subcommand("gcd-identities", "gcd identities for (q, a, b)");
  gid->add_option("--q", cfg.q)->required();
  gid->add_option("--a", la)->required();
  gid->add_option("--b", lb)->required();

  std::optional<unsigned> rank;
  auto* bert = app.add_subcommand("bertrand", "Bertrand number and Bertrand element order");
  group_opts(bert);
  bert->add_option("--t", rank, "Override the Bertrand number");

  auto* singer = app.add_subcommand("singer", "Singer cycle orders");
  group_opts(singer);

  std::string element = "singer";
  bool show_matrix = false;
  auto* cons = app.add_subcommand("construct", "Build and certify a special element");
  group_opts(cons);
  cons->add_option("--element", element, "singer, low_singer, linear_singer, bertrand, omega2minus, xi")->capture_default_str();
  cons->add_option("--rank", rank, "Rank t (low_singer, bertrand) or m (xi)");
  cons->add_flag("--matrix", show_matrix, "Print the matrix as a fixture");

  std::string torder;
  bool spectrum = false;
  auto* tor = app.add_subcommand("torus", "Maximal torus catalog and semisimple orders");
  group_opts(tor);
  tor->add_option("--order", torder, "Decide whether a semisimple element of this order exists");
  tor->add_flag("--spectrum", spectrum, "List all semisimple element orders");

  std::string gens_out;
  auto* en = app.add_subcommand("enumerate", "Enumerate a group from standard generators");
  group_opts(en);
  en->add_option("--gens-out", gens_out, "Write the chosen generators as matrix fixtures");

  auto* cls = app.add_subcommand("classes", "Conjugacy classes of an enumerated group");
  group_opts(cls);

  std::string hfile, kfile;
  auto* cov = app.add_subcommand("cover", "Decide whether two subgroups 2-cover a group");
  group_opts(cov);
  cov->add_option("--h-gens", hfile, "Generator fixture file for H (default GO+ inside Sp, q even)");
  cov->add_option("--k-gens", kfile, "Generator fixture file for K (default GO- inside Sp, q even)");

  bool cross = false;
  auto* dye = app.add_subcommand("dye", "Covering of Sp(2n,q), q even, by the two orthogonal groups");
  group_opts(dye, false);
  dye->add_flag("--cross-check", cross, "Compare with explicit GO+/GO- subgroup fusion");

  AuditArgs aa;
  auto* aud = app.add_subcommand("audit", "Run proof-step audit scenarios");
  aud->add_option("--scenarios", aa.scenarios, "Scenario file (default: built-in catalog)");
  aud->add_flag("--list", aa.list, "List scenarios");
  aud->add_option("--id", aa.id, "Scenario id");
  aud->add_option("--n", cfg.n);
  aud->add_option("--q", cfg.q);
  aud->add_option("--t", aa.t, "Override the Bertrand number");
  aud->add_flag("--all", aa.all, "Run every scenario over a grid");
  aud->add_option("--nmin", aa.nmin, "Grid lower n")->capture_default_str();
  aud->add_option("--nmax", aa.nmax, "Grid upper n");
  aud->add_option("--qs", aa.qs, "Grid field sizes, comma separated")->capture_default_str();
  aud->add_option("--ids", aa.ids, "Restrict the grid to these ids, comma separated");
  aud->add_flag("--verbose", aa.verbose, "Include every check in grid JSON");

  std::string only;
  bool timing = false;
  auto* acc = app.add_subcommand("acceptance", "Run the acceptance suite");
  acc->add_option("--only", only, "Comma-separated criterion numbers");
  acc->add_option("--scenarios", aa.scenarios, "Scenario file (default: built-in catalog)");
  acc->add_flag("--timing", timing, "Report per-criterion wall time (output is then not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Report rep;
  std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "field") rep = cmd_field(fp, ff, fdeg, forder);
    else if (name == "zsigmondy") rep = cmd_zsigmondy(zq, zt);
    else if (name == "gcd-identities") rep = cmd_gcd_identities(cfg.q, la, lb);
    else if (name == "bertrand") rep = cmd_bertrand(cfg, rank);
    else if (name == "singer") rep = cmd_singer(cfg);
    else if (name == "construct") rep = cmd_construct(cfg, element, rank, show_matrix);
    else if (name == "torus") rep = cmd_torus(cfg, torder, spectrum);
    else if (name == "enumerate") rep = cmd_enumerate(cfg, gens_out);
    else if (name == "classes") rep = cmd_classes(cfg);
    else if (name == "cover") rep = cmd_cover(cfg, hfile, kfile);
    else if (name == "dye") rep = cmd_dye(cfg, cross);
    else if (name == "audit") rep = cmd_audit(cfg, aa);
    else rep = cmd_acceptance(cfg, only, aa.scenarios, timing);
  } catch (const std::invalid_argument& e) {
    std::cerr << "cover2 " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "cover2 " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const ScenarioParseError& e) {
    std::cerr << "cover2 " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "cover2 " << name << ": " << e.what() << "\n";
    return 1;
  }

  if (cfg.format == "json") {
    json out = {{"command", name}, {"exit_code", rep.code}};
    out["result"] = rep.body;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << rep.table.str();
  }
  return rep.code;
}
