#pragma once

// Proof-step audit: scenarios are data (see data/scenarios.txt), parsed into typed checks over
// big-integer expressions and evaluated per (n, q).

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "expr.hpp"
#include "torus.hpp"

#if __has_include("cover2_scenarios.inc")
#include "cover2_scenarios.inc"  // defines cover2::detail::kScenarioText
#define COVER2_HAVE_EMBEDDED_SCENARIOS 1
#endif

namespace cover2 {

enum class CheckType { Divides, NotDivides, Ppd, StrongPpd, TorusExists, TorusNotExists, GcdEquals, Inequality };

inline const std::vector<std::pair<CheckType, std::string>>& check_type_names() {
  static const std::vector<std::pair<CheckType, std::string>> names = {
      {CheckType::Divides, "DIVIDES"},           {CheckType::NotDivides, "NOT_DIVIDES"},
      {CheckType::Ppd, "PPD"},                   {CheckType::StrongPpd, "STRONG_PPD"},
      {CheckType::TorusExists, "TORUS_EXISTS"},  {CheckType::TorusNotExists, "TORUS_NOT_EXISTS"},
      {CheckType::GcdEquals, "GCD_EQUALS"},      {CheckType::Inequality, "INEQUALITY"}};
  return names;
}

inline std::string to_string(CheckType t) {
  for (const auto& [k, s] : check_type_names())
    if (k == t) return s;
  return "?";
}

struct Binder {
  enum class Kind { Range, DivPrime, When } kind = Kind::When;
  std::string var;
  ExprPtr a, b;  // Range: a..b; DivPrime: a; When: a
};

struct CheckSpec {
  std::string source;
  std::vector<Binder> binders;
  CheckType type = CheckType::Divides;
  std::vector<ExprPtr> args;
};

struct AuditScenario {
  std::string id;
  std::string citation;
  std::string applies_text;
  ExprPtr applies;
  std::vector<std::pair<std::string, ExprPtr>> lets;
  std::vector<CheckSpec> checks;
  std::vector<std::string> manual;  // proof steps recorded as not machine-checked
};

struct ScenarioCatalog {
  int version = 0;
  std::vector<AuditScenario> scenarios;

  const AuditScenario* find(const std::string& id) const {
    for (const auto& s : scenarios)
      if (s.id == id) return &s;
    return nullptr;
  }
};

struct ScenarioParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline CheckSpec parse_check(const std::string& text) {
  CheckSpec c;
  c.source = text;
  std::string rest = trim(text);
  for (;;) {
    const bool forall = rest.rfind("forall ", 0) == 0, when = rest.rfind("when ", 0) == 0;
    if (!forall && !when) break;
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ExprError("binder without ':' in \"" + text + "\"");
    std::string head = trim(rest.substr(forall ? 7 : 5, colon - (forall ? 7 : 5)));
    rest = trim(rest.substr(colon + 1));
    Binder b;
    if (when) {
      b.a = parse_expr(head);
    } else {
      std::istringstream is(head);
      std::string var, word;
      is >> var >> word;
      std::string tail;
      std::getline(is, tail);
      b.var = var;
      if (word == "in") {
        const auto dots = tail.find("..");
        if (dots == std::string::npos) throw ExprError("range needs 'a..b' in \"" + text + "\"");
        b.kind = Binder::Kind::Range;
        b.a = parse_expr(tail.substr(0, dots));
        b.b = parse_expr(tail.substr(dots + 2));
      } else if (word == "divprime") {
        b.kind = Binder::Kind::DivPrime;
        b.a = parse_expr(tail);
      } else {
        throw ExprError("unknown binder '" + word + "' in \"" + text + "\"");
      }
    }
    c.binders.push_back(std::move(b));
  }
  ExprPtr call = parse_expr(rest);
  if (call->op != Expr::Op::Call) throw ExprError("check must be TYPE(args) in \"" + text + "\"");
  bool known = false;
  for (const auto& [k, s] : check_type_names())
    if (s == call->name) {
      c.type = k;
      known = true;
    }
  if (!known) throw ExprError("unknown check type " + call->name);
  c.args = call->args;
  static const std::map<CheckType, std::pair<std::size_t, std::size_t>> arity = {
      {CheckType::Divides, {2, 2}},     {CheckType::NotDivides, {2, 2}},      {CheckType::Ppd, {4, 4}},
      {CheckType::StrongPpd, {4, 4}},   {CheckType::TorusExists, {2, 16}},    {CheckType::TorusNotExists, {2, 16}},
      {CheckType::GcdEquals, {3, 3}},   {CheckType::Inequality, {1, 1}}};
  const auto [lo, hi] = arity.at(c.type);
  if (c.args.size() < lo || c.args.size() > hi) throw ExprError("wrong argument count for " + call->name);
  return c;
}

}  // namespace detail

/// Parses the block format: "version: N" once, then blocks opened by "scenario: id" and closed by
/// "end", with "citation:", "applies:", "let: name = expr", "check:", "manual:" lines. '#' starts a comment.
inline ScenarioCatalog parse_scenarios(const std::string& text) {
  ScenarioCatalog cat;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  AuditScenario* cur = nullptr;
  auto fail = [&](const std::string& msg) {
    throw ScenarioParseError("scenarios line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line == "end") {
      if (!cur) fail("'end' outside a scenario");
      if (!cur->applies) fail("scenario " + cur->id + " has no applicability");
      cur = nullptr;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail("expected 'key: value'");
    const std::string key = detail::trim(line.substr(0, colon)), val = detail::trim(line.substr(colon + 1));
    try {
      if (key == "version") {
        cat.version = std::stoi(val);
      } else if (key == "scenario") {
        if (cur) fail("nested scenario");
        if (cat.find(val)) fail("duplicate scenario id " + val);
        cat.scenarios.push_back({});
        cur = &cat.scenarios.back();
        cur->id = val;
      } else if (!cur) {
        fail("'" + key + "' outside a scenario");
      } else if (key == "citation") {
        cur->citation = val;
      } else if (key == "applies") {
        cur->applies_text = val;
        cur->applies = parse_expr(val);
      } else if (key == "let") {
        const auto eq = val.find('=');
        if (eq == std::string::npos || val.compare(eq, 2, "==") == 0) fail("let needs 'name = expr'");
        cur->lets.emplace_back(detail::trim(val.substr(0, eq)), parse_expr(val.substr(eq + 1)));
      } else if (key == "check") {
        cur->checks.push_back(detail::parse_check(val));
      } else if (key == "manual") {
        cur->manual.push_back(val);
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const ExprError& e) {
      fail(e.what());
    }
  }
  if (cur) fail("scenario " + cur->id + " is not closed");
  if (cat.version != 1) throw ScenarioParseError("unsupported scenario format version " + std::to_string(cat.version));
  return cat;
}

inline ScenarioCatalog load_scenarios(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open scenario file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scenarios(ss.str());
}

#ifdef COVER2_HAVE_EMBEDDED_SCENARIOS
/// The scenario set compiled into the binary.
inline const ScenarioCatalog& builtin_scenarios() {
  static const ScenarioCatalog cat = parse_scenarios(detail::kScenarioText);
  return cat;
}
#endif

struct AuditOverrides {
  std::optional<unsigned> t;  // any admissible Bertrand number
};

struct CheckVerdict {
  std::string source;
  std::string binding;  // e.g. "k=5"
  CheckType type = CheckType::Divides;
  std::string lhs, rhs;
  bool pass = false;
  bool advisory = false;
  std::string note;
};

struct AuditReport {
  std::string id;
  std::string citation;
  unsigned n = 0;
  std::uint64_t q = 0;
  std::optional<unsigned> t;
  std::vector<CheckVerdict> checks;
  std::vector<std::string> manual;
  std::size_t skipped = 0;  // instances whose guard was false
  bool pass = false;
  std::size_t advisories = 0;
  std::size_t failures = 0;
};

struct ScenarioInapplicable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Env base_env(const AuditScenario& s, unsigned n, std::uint64_t q, const AuditOverrides& ov) {
  if (!is_prime_power(q)) throw std::invalid_argument("audit: q = " + std::to_string(q) + " is not a prime power");
  if (n < 1) throw std::invalid_argument("audit: n must be positive");
  Env env;
  env.set("n", n);
  env.set("q", q);
  env.set("p", prime_base(q));
  const BigInt r = boost::multiprecision::sqrt(BigInt(q));
  if (r * r == q) env.set("q0", r);
  if (ov.t) {
    const unsigned t = *ov.t;
    if (!(2 * t > n && t < n)) throw std::invalid_argument("audit: t override must satisfy n/2 < t < n");
    env.set("t", t);
    env.t_override = t;
  } else if (n >= 5) {
    env.set("t", bertrand_number(n));
  }
  for (const auto& [name, e] : s.lets) env.define(name, e);
  return env;
}

inline CheckVerdict evaluate(const CheckSpec& c, Env& env) {
  CheckVerdict v;
  v.source = c.source;
  v.type = c.type;
  auto arg = [&](std::size_t i) { return eval(c.args[i], env); };
  switch (c.type) {
    case CheckType::Divides:
    case CheckType::NotDivides: {
      const Value a = arg(0), b = arg(1);
      if (a.integer() <= 0 || b.integer() <= 0) throw ExprError("divisibility needs positive operands");
      v.lhs = a.str();
      v.rhs = b.str();
      const bool div = b.i % a.i == 0;
      v.pass = c.type == CheckType::Divides ? div : !div;
      // An overgroup order on the right keeps non-divisibility sound, nothing else.
      v.advisory = !a.exact || (c.type == CheckType::Divides && !b.exact);
      if (!b.exact) v.note = "right side is an overgroup order";
      break;
    }
    case CheckType::GcdEquals: {
      const Value a = arg(0), b = arg(1), e = arg(2);
      const BigInt g = gcd(a.integer(), b.integer());
      v.lhs = "gcd(" + a.str() + ", " + b.str() + ") = " + to_string(g);
      v.rhs = e.str();
      v.pass = g == e.integer();
      v.advisory = !e.exact || !a.exact || (!b.exact && e.i != 1);
      break;
    }
    case CheckType::Ppd:
    case CheckType::StrongPpd: {
      const Value d = arg(0), q = arg(1), e = arg(2), m = arg(3);
      const unsigned du = detail::small(d, "d"), eu = detail::small(e, "e");
      const std::uint64_t qu = detail::field_size(q);
      v.lhs = m.str();
      v.rhs = (c.type == CheckType::Ppd ? "ppd(" : "strong ppd(") + d.str() + ", " + q.str() + "; " + e.str() + ")";
      try {
        if (c.type == CheckType::Ppd) {
          v.pass = is_ppd_order(du, qu, eu, m.integer());
        } else {
          auto r = is_strong_ppd_order(du, qu, eu, m.integer());
          v.pass = r.value;
          if (r.vacuous) {
            v.advisory = true;
            v.note = "vacuous: P_e(q) is empty";
          }
        }
      } catch (const std::invalid_argument& ex) {
        throw ExprError(ex.what());
      }
      v.advisory = v.advisory || !m.exact;
      break;
    }
    case CheckType::TorusExists:
    case CheckType::TorusNotExists: {
      const Value m = arg(0);
      std::vector<GroupId> groups;
      std::string gs;
      for (std::size_t i = 1; i < c.args.size(); ++i) {
        groups.push_back(arg(i).group());
        gs += (i > 1 ? " x " : "") + groups.back().str();
      }
      TorusWitness w;
      try {
        w = has_semisimple_of_order(groups, m.integer());
      } catch (const std::exception& ex) {
        throw ExprError(ex.what());
      }
      v.lhs = m.str();
      v.rhs = gs;
      v.pass = c.type == CheckType::TorusExists ? w.exists : !w.exists;
      if (w.exists) {
        std::string parts;
        for (const auto& p : w.partitions) parts += (parts.empty() ? "" : " x ") + p;
        v.note = "torus " + parts;
      }
      // Inexact catalogs are overgroup catalogs: absence is sound, presence is advisory.
      if (!w.exact && c.type == CheckType::TorusExists) {
        v.advisory = true;
        v.note += (v.note.empty() ? "" : "; ") + std::string("Omega-level torus advisory");
      }
      v.advisory = v.advisory || !m.exact;
      break;
    }
    case CheckType::Inequality: {
      const Value b = arg(0);
      v.lhs = render(c.args[0]);
      // Record the evaluated sides of a top-level comparison.
      const Expr& e = *c.args[0];
      if (e.args.size() == 2 && e.op >= Expr::Op::Eq && e.op <= Expr::Op::Ge) {
        static const char* const sym[] = {"==", "!=", "<", "<=", ">", ">="};
        v.lhs = eval(e.args[0], env).str();
        v.rhs = std::string(sym[static_cast<int>(e.op) - static_cast<int>(Expr::Op::Eq)]) + " " +
                eval(e.args[1], env).str();
      }
      v.pass = b.boolean();
      v.advisory = !b.exact;
      break;
    }
  }
  return v;
}

inline std::string binding_string(const std::vector<std::pair<std::string, BigInt>>& b) {
  std::string s;
  for (const auto& [k, v] : b) s += (s.empty() ? "" : ", ") + k + "=" + to_string(v);
  return s;
}

// Expands binders depth-first; each instance evaluates in its own environment copy so lazy
// definitions that mention bound variables are not shared across instances.
inline void expand(const CheckSpec& c, std::size_t depth, const Env& env,
                   std::vector<std::pair<std::string, BigInt>>& bound, AuditReport& rep) {
  auto record_error = [&](const std::string& msg) {
    CheckVerdict v;
    v.source = c.source;
    v.binding = binding_string(bound);
    v.type = c.type;
    v.pass = false;
    v.note = "evaluation error: " + msg;
    rep.checks.push_back(std::move(v));
  };
  if (depth == c.binders.size()) {
    Env local = env;
    try {
      CheckVerdict v = evaluate(c, local);
      v.binding = binding_string(bound);
      rep.checks.push_back(std::move(v));
    } catch (const ExprError& e) {
      record_error(e.what());
    }
    return;
  }
  const Binder& b = c.binders[depth];
  Env local = env;
  try {
    if (b.kind == Binder::Kind::When) {
      if (eval(b.a, local).boolean()) expand(c, depth + 1, local, bound, rep);
      else ++rep.skipped;
      return;
    }
    std::vector<BigInt> values;
    if (b.kind == Binder::Kind::Range) {
      const BigInt lo = eval(b.a, local).integer(), hi = eval(b.b, local).integer();
      if (hi - lo > 10000) throw ExprError("range too long");
      for (BigInt k = lo; k <= hi; ++k) values.push_back(k);
    } else {
      const BigInt x = eval(b.a, local).integer();
      if (x < 1) throw ExprError("divprime needs a positive integer");
      values = prime_divisors(x);
    }
    for (const auto& k : values) {
      Env inner = local;
      inner.set(b.var, k);
      bound.emplace_back(b.var, k);
      expand(c, depth + 1, inner, bound, rep);
      bound.pop_back();
    }
  } catch (const ExprError& e) {
    record_error(e.what());
  }
}

}  // namespace detail

/// Whether the scenario's hypotheses hold at (n, q).
inline bool scenario_applies(const AuditScenario& s, unsigned n, std::uint64_t q, const AuditOverrides& ov = {}) {
  if (!is_prime_power(q) || n < 1) return false;
  Env env = detail::base_env(s, n, q, ov);
  try {
    return eval(s.applies, env).boolean();
  } catch (const ExprError&) {
    return false;
  }
}

inline AuditReport run_scenario(const AuditScenario& s, unsigned n, std::uint64_t q, const AuditOverrides& ov = {}) {
  if (!scenario_applies(s, n, q, ov))
    throw ScenarioInapplicable("scenario " + s.id + " does not apply to n=" + std::to_string(n) + ", q=" + std::to_string(q));
  AuditReport rep;
  rep.id = s.id;
  rep.citation = s.citation;
  rep.n = n;
  rep.q = q;
  rep.manual = s.manual;
  Env env = detail::base_env(s, n, q, ov);
  if (auto it = env.values().find("t"); it != env.values().end()) rep.t = static_cast<unsigned>(it->second.i);
  std::vector<std::pair<std::string, BigInt>> bound;
  for (const auto& c : s.checks) detail::expand(c, 0, env, bound, rep);
  for (const auto& v : rep.checks) {
    if (v.advisory) ++rep.advisories;
    else if (!v.pass) ++rep.failures;
  }
  rep.pass = rep.failures == 0;
  return rep;
}

inline AuditReport run_scenario(const ScenarioCatalog& cat, const std::string& id, unsigned n, std::uint64_t q,
                                const AuditOverrides& ov = {}) {
  const AuditScenario* s = cat.find(id);
  if (!s) throw std::invalid_argument("unknown scenario id " + id);
  return run_scenario(*s, n, q, ov);
}

struct ScenarioInfo {
  std::string id, citation, applies;
  std::size_t checks = 0, manual = 0;
};

inline std::vector<ScenarioInfo> list_scenarios(const ScenarioCatalog& cat) {
  std::vector<ScenarioInfo> out;
  for (const auto& s : cat.scenarios) out.push_back({s.id, s.citation, s.applies_text, s.checks.size(), s.manual.size()});
  return out;
}

enum class CellStatus { Pass, Fail, Inapplicable };

struct GridCell {
  std::string id;
  unsigned n = 0;
  std::uint64_t q = 0;
  CellStatus status = CellStatus::Inapplicable;
  std::optional<AuditReport> report;
};

struct GridSummary {
  std::vector<GridCell> cells;  // ordered by (scenario, n, q)
  std::size_t passed = 0, failed = 0, inapplicable = 0, checks = 0, advisories = 0;
};

/// Runs the given scenarios over n_lo..n_hi x qs, parallel over cells; results are deterministic.
inline GridSummary run_grid(const ScenarioCatalog& cat, const std::vector<std::string>& ids, unsigned n_lo,
                            unsigned n_hi, const std::vector<std::uint64_t>& qs, unsigned threads = 0) {
  if (n_lo < 1 || n_hi < n_lo || n_hi > 64) throw std::invalid_argument("run_grid: bad n range");
  for (auto q : qs)
    if (!is_prime_power(q) || q > 1024) throw std::invalid_argument("run_grid: bad q " + std::to_string(q));
  GridSummary sum;
  for (const auto& id : ids) {
    if (!cat.find(id)) throw std::invalid_argument("unknown scenario id " + id);
    for (unsigned n = n_lo; n <= n_hi; ++n)
      for (auto q : qs) sum.cells.push_back({id, n, q, CellStatus::Inapplicable, std::nullopt});
  }
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < sum.cells.size(); i = next++) {
      GridCell& c = sum.cells[i];
      const AuditScenario& s = *cat.find(c.id);
      if (!scenario_applies(s, c.n, c.q)) continue;
      c.report = run_scenario(s, c.n, c.q);
      c.status = c.report->pass ? CellStatus::Pass : CellStatus::Fail;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& c : sum.cells) {
    if (c.status == CellStatus::Pass) ++sum.passed;
    else if (c.status == CellStatus::Fail) ++sum.failed;
    else ++sum.inapplicable;
    if (c.report) {
      sum.checks += c.report->checks.size();
      sum.advisories += c.report->advisories;
    }
  }
  return sum;
}

inline std::vector<std::string> all_ids(const ScenarioCatalog& cat) {
  std::vector<std::string> ids;
  for (const auto& s : cat.scenarios) ids.push_back(s.id);
  return ids;
}

}  // namespace cover2
