#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "audit.hpp"
#include "constructor.hpp"
#include "cover.hpp"
#include "generators.hpp"
#include "torus.hpp"

namespace cover2 {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Enumerated groups and their class tables, built on first use and shared across criteria.
class GroupBank {
 public:
  struct Entry {
    std::shared_ptr<const ElementStore> store;
    FormSpec form;
    bool has_form = false;
    std::optional<ClassTable> classes;
    double enumerate_seconds = 0, classes_seconds = 0;
  };

  Entry& get(const GroupId& g) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(g);
    if (it != entries_.end()) return it->second;
    const auto t0 = std::chrono::steady_clock::now();
    EnumeratedGroup eg = enumerate_group(g);
    Entry e;
    e.form = eg.gens.form;
    e.has_form = eg.gens.has_form;
    e.store = std::make_shared<const ElementStore>(std::move(eg.store));
    e.enumerate_seconds = since(t0);
    return entries_.emplace(g, std::move(e)).first->second;
  }

  const ClassTable& classes(const GroupId& g) {
    Entry& e = get(g);
    std::lock_guard<std::mutex> lock(mu_);
    if (!e.classes) {
      const auto t0 = std::chrono::steady_clock::now();
      e.classes = conjugacy_classes(e.store);
      e.classes_seconds = since(t0);
    }
    return *e.classes;
  }

  std::vector<GroupId> enumerated() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<GroupId> out;
    for (const auto& [g, e] : entries_) out.push_back(g);
    return out;
  }

  static double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

 private:
  mutable std::mutex mu_;
  std::map<GroupId, Entry> entries_;
};

struct AcceptanceOptions {
  unsigned threads = 0;
  const ScenarioCatalog* catalog = nullptr;  // defaults to the built-in catalog when available
  std::set<int> only;                        // empty: all criteria
};

namespace acc {

/// Accumulates failures; the first few become the detail line.
struct Tally {
  std::size_t checked = 0, failed = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    ++failed;
    if (notes.size() < 6) notes.push_back(what);
  }
  std::string failures() const {
    std::string s;
    for (const auto& n : notes) s += (s.empty() ? "" : "; ") + n;
    return s;
  }
};

inline GroupId gid(Family f, unsigned n, std::uint64_t q) { return GroupId::make(f, n, q); }

// ---------------------------------------------------------------- 1: Dye covering

inline CriterionResult dye_covering(GroupBank& bank) {
  CriterionResult r{1, "Dye covering of Sp4(2), Sp6(2); form-based vs subgroup fusion", false, "", 0};
  Tally t;
  std::ostringstream os;
  struct Case {
    unsigned n;
    std::uint64_t q;
    double limit;
  };
  for (const Case c : {Case{2, 2, 1.0}, Case{3, 2, 300.0}, Case{2, 4, 300.0}}) {
    const GroupId sp = gid(Family::Sp, c.n, c.q);
    const auto t0 = std::chrono::steady_clock::now();
    const ClassTable& ct = bank.classes(sp);
    const FieldPtr F = ct.store->field();
    const DyeReport rep = dye_check_by_forms(ct, standard_alternating(F, c.n).gram);
    const double secs = GroupBank::since(t0);
    const std::string tag = sp.str();
    t.expect(rep.cover.covered, tag + " not covered");
    if (c.n == 2 && c.q == 2) {
      t.expect(ct.group_order() == 720, tag + " order " + std::to_string(ct.group_order()));
      t.expect(ct.num_classes() == 11, tag + " classes " + std::to_string(ct.num_classes()));
    }
    if (c.n == 3 && c.q == 2) t.expect(ct.group_order() == 1451520, tag + " order " + std::to_string(ct.group_order()));
    if (c.n == 2 && c.q == 4) t.expect(ct.group_order() == 979200, tag + " order " + std::to_string(ct.group_order()));
    if (c.q == 2) t.expect(secs < c.limit, tag + " took " + std::to_string(secs) + " s");

    const BigInt singer = ipow(BigInt(c.q), c.n) + 1;
    std::size_t singer_classes = 0;
    for (std::size_t k = 0; k < ct.num_classes(); ++k) {
      const auto& cls = ct.classes[k];
      if (cls.order != singer || cls.action.parts != std::map<unsigned, unsigned>{{2 * c.n, 1}}) continue;
      ++singer_classes;
      t.expect(!rep.types[k].plus && rep.types[k].minus, tag + " Singer class " + std::to_string(k) + " not minus-only");
    }
    t.expect(singer_classes > 0, tag + " has no Singer class");

    // Explicit GO^+ and GO^- fusion; in characteristic 2 both standard quadratic forms
    // polarize to the standard alternating form, so the subgroups sit inside this Sp.
    for (int eps : {1, -1}) {
      const GroupId go = gid(eps == 1 ? Family::GOPlus : Family::GOMinus, c.n, c.q);
      auto& e = bank.get(go);
      t.expect(e.form.gram == standard_alternating(F, c.n).gram, go.str() + " polarization differs");
      const Fusion f = class_fusion(*e.store, ct);
      bool same = true;
      for (std::size_t k = 0; k < ct.num_classes(); ++k)
        same = same && f[k] == (eps == 1 ? rep.types[k].plus : rep.types[k].minus);
      t.expect(same, tag + " form types disagree with " + go.str() + " fusion");
    }
    os << tag << ": " << ct.group_order() << " elements, " << ct.num_classes() << " classes, covered="
       << (rep.cover.covered ? "true" : "false") << ", " << singer_classes << " Singer class(es); ";
  }
  r.pass = t.failed == 0;
  r.detail = os.str() + (r.pass ? "fusion agrees" : t.failures());
  return r;
}

// ---------------------------------------------------------------- 2: Zsigmondy oracle

using u128 = unsigned __int128;

inline u128 pow128(u128 b, unsigned e) {
  u128 r = 1;
  while (e--) r *= b;
  return r;
}

inline u128 gcd128(u128 a, u128 b) {
  while (b) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return std::uint64_t(u128(a) * b % m); }

inline unsigned order_mod(std::uint64_t q, std::uint64_t r) {
  std::uint64_t x = q % r;
  for (unsigned k = 1; k <= 64; ++k) {
    if (x == 1) return k;
    x = mulmod64(x, q % r, r);
  }
  return 0;
}

/// Primes r with ord_r(q) = t: strip every prime of q^i - 1 (i < t) out of q^t - 1, trial-divide
/// the rest (its primes are 1 mod t), then confirm each order directly.
inline std::set<std::uint64_t> zsigmondy_oracle(std::uint64_t q, unsigned t) {
  u128 n = pow128(q, t) - 1;
  for (unsigned i = 1; i < t; ++i) {
    const u128 m = pow128(q, i) - 1;
    for (u128 g = gcd128(n, m); g > 1; g = gcd128(n, m)) n /= g;
  }
  std::set<std::uint64_t> primes;
  auto take = [&](u128 r) {
    primes.insert(std::uint64_t(r));
    while (n % r == 0) n /= r;
  };
  for (u128 r = t + 1; r * r <= n; r += t)
    if (n % r == 0) take(r);
  if (n > 1) take(n);
  for (auto r : primes)
    if (order_mod(q, r) != t) throw std::logic_error("zsigmondy_oracle: order check failed");
  return primes;
}

inline CriterionResult zsigmondy_equivalence() {
  CriterionResult r{2, "Zsigmondy sets vs brute-force oracle, q <= 16, 2 <= t <= 18", false, "", 0};
  Tally t;
  std::vector<std::string> empties;
  std::size_t pairs = 0;
  for (std::uint64_t q = 2; q <= 16; ++q) {
    if (!is_prime_power(q)) continue;
    for (unsigned e = 2; e <= 18; ++e) {
      ++pairs;
      std::set<std::uint64_t> lib;
      for (const auto& p : zsigmondy_set(q, e)) lib.insert(to_u64(p));
      const auto oracle = zsigmondy_oracle(q, e);
      t.expect(lib == oracle, "mismatch at (" + std::to_string(q) + "," + std::to_string(e) + ")");
      if (lib.empty()) empties.push_back("(" + std::to_string(q) + "," + std::to_string(e) + ")");
      // q + 1 a power of two is exactly the t = 2 exception.
      const bool expected_empty = (q == 2 && e == 6) || (e == 2 && ((q + 1) & q) == 0);
      t.expect(lib.empty() == expected_empty,
               "emptiness at (" + std::to_string(q) + "," + std::to_string(e) + ")");
    }
  }
  r.pass = t.failed == 0;
  std::string em;
  for (const auto& s : empties) em += s;
  r.detail = std::to_string(pairs) + " pairs; empty at " + em + (r.pass ? "" : "; " + t.failures());
  return r;
}

// ---------------------------------------------------------------- 3: gcd identities

inline CriterionResult gcd_identities() {
  CriterionResult r{3, "gcd identity items i-vi for q in {2,3,4,5,7,8,9}, 1 <= a,b <= 10", false, "", 0};
  Tally t;
  std::map<std::string, std::size_t> evaluated;
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9})
    for (long long a = 1; a <= 10; ++a)
      for (long long b = 1; b <= 10; ++b)
        for (const auto& it : gcd_identity_audit(q, a, b)) {
          const bool odd_only = it.item == "ii" || it.item == "iv" || it.item == "v" || it.item == "vi-a";
          if (odd_only) t.expect(it.applicable == (a % 2 == 1 && (it.item == "ii" || it.item == "iv" || std::gcd(a, b) == 1)),
                                 "applicability of " + it.item);
          if (!it.applicable) continue;
          ++evaluated[it.item];
          t.expect(it.holds, "item " + it.item + " fails at q=" + std::to_string(q) + " a=" + std::to_string(a) +
                                 " b=" + std::to_string(b) + ": " + it.lhs + " vs " + it.rhs);
        }
  t.expect(evaluated.size() == 7, "only " + std::to_string(evaluated.size()) + " items evaluated");
  r.pass = t.failed == 0;
  std::ostringstream os;
  for (const auto& [k, v] : evaluated) os << k << ":" << v << " ";
  r.detail = os.str() + (r.pass ? "all hold" : t.failures());
  return r;
}

// ---------------------------------------------------------------- 4: special elements

inline CriterionResult special_elements() {
  CriterionResult r{4, "Special-element certification on Sp(2n,q), n <= 5, q in {2,3,4}, plus O- and GU cases", false, "", 0};
  Tally t;
  std::size_t built = 0;
  auto check = [&](const std::string& tag, const std::function<SpecialElement()>& make, const BigInt& expected,
                   const std::map<unsigned, unsigned>& action) {
    try {
      const SpecialElement e = make();
      const Certificate c = certify(e);
      ++built;
      t.expect(c.ok(), tag + " certificate failed");
      t.expect(e.declared_order == expected, tag + " declared order " + to_string(e.declared_order) + ", expected " + to_string(expected));
      t.expect(c.order == expected, tag + " order " + to_string(c.order));
      t.expect(c.action.parts == action, tag + " action " + c.action.str());
    } catch (const std::exception& ex) {
      t.expect(false, tag + ": " + ex.what());
    }
  };
  auto L = [](const BigInt& a, const BigInt& b) { return lcm(a, b); };

  for (std::uint64_t q : {2, 3, 4})
    for (unsigned n = 1; n <= 5; ++n) {
      const GroupId g = gid(Family::Sp, n, q);
      const BigInt Q(q);
      const std::string s = g.str();
      check(s + " singer", [&] { return singer_cycle(g); }, ipow(Q, n) + 1, {{2 * n, 1}});
      check(s + " linear_singer", [&] { return linear_singer(g); }, ipow(Q, n) - 1, {{n, 2}});
      for (unsigned k = 2; k < 2 * n; k += 2)
        check(s + " low_singer " + std::to_string(k), [&] { return low_singer(g, k); }, ipow(Q, k / 2) + 1,
              {{k, 1}, {1, 2 * n - k}});
      if (n >= 5) {
        const unsigned b = bertrand_number(n);
        check(s + " bertrand", [&] { return bertrand_element(g); }, L(ipow(Q, b) + 1, ipow(Q, n - b) + 1),
              {{2 * b, 1}, {2 * (n - b), 1}});
      }
    }

  // Sp10(2): orders 33, 51 (with a primitive prime divisor of 2^8 - 1) and 45 with action 6+4.
  const GroupId sp10 = gid(Family::Sp, 5, 2);
  check("Sp(5,2) singer 33", [&] { return singer_cycle(sp10); }, 33, {{10, 1}});
  check("Sp(5,2) t=4 element 51", [&] { return bertrand_element(sp10, 4u); }, 51, {{8, 1}, {2, 1}});
  t.expect(is_ppd_order(10, 2, 8, 51), "51 is not a ppd(10,2;8) order");
  check("Sp(5,2) bertrand 45", [&] { return bertrand_element(sp10); }, 45, {{6, 1}, {4, 1}});

  for (std::uint64_t q : {2, 3, 4, 5})
    for (unsigned n = 1; n <= 4; ++n) {
      const BigInt Q(q), s = ipow(Q, n) + 1;
      const GroupId go = gid(Family::GOMinus, n, q), om = gid(Family::OmegaMinus, n, q);
      check(go.str() + " singer", [&] { return singer_cycle(go); }, s, {{2 * n, 1}});
      const BigInt d = s / gcd2(Q);
      std::map<unsigned, unsigned> act{{2 * n, 1}};
      if (d == 1) act = {};
      else if (n == 1 && q == 3) act = {{1, 2}};
      if (!act.empty()) check(om.str() + " singer", [&] { return singer_cycle(om); }, d, act);
      for (unsigned k = 1; k < n; ++k)
        check(go.str() + " low_singer " + std::to_string(2 * k), [&] { return low_singer(go, 2 * k); },
              ipow(Q, k) + 1, {{2 * k, 1}, {1, 2 * (n - k)}});
    }

  for (std::uint64_t q0 : {2, 3})
    for (unsigned n = 2; n <= 6; ++n) {
      const GroupId g = gid(Family::GU, n, q0 * q0);
      const BigInt Q0(q0);
      if (n % 2) check(g.str() + " singer", [&] { return singer_cycle(g); }, ipow(Q0, n) + 1, {{n, 1}});
      else check(g.str() + " linear_singer", [&] { return linear_singer(g); }, ipow(Q0, n) - 1, {{n / 2, 2}});
      for (unsigned k = 1; k < n; k += 2)
        check(g.str() + " low_singer " + std::to_string(k), [&] { return low_singer(g, k); }, ipow(Q0, k) + 1,
              k == 1 ? std::map<unsigned, unsigned>{{1, n}} : std::map<unsigned, unsigned>{{k, 1}, {1, n - k}});
    }

  r.pass = t.failed == 0;
  r.detail = std::to_string(built) + " elements certified, " + std::to_string(t.checked) + " checks" +
             (r.pass ? "" : "; " + t.failures());
  return r;
}

// ---------------------------------------------------------------- 5: torus spectrum

inline CriterionResult torus_spectrum(GroupBank& bank) {
  CriterionResult r{5, "Semisimple order spectrum vs exhaustive p-regular orders; order-35 tori in dimension 10", false, "", 0};
  Tally t;
  std::ostringstream os;
  const std::vector<GroupId> groups = {gid(Family::Sp, 2, 2),      gid(Family::Sp, 3, 2),      gid(Family::Sp, 2, 4),
                                       gid(Family::GOPlus, 2, 2),  gid(Family::GOMinus, 2, 2), gid(Family::GOPlus, 3, 2),
                                       gid(Family::GOMinus, 3, 2), gid(Family::GOPlus, 2, 4),  gid(Family::GOMinus, 2, 4)};
  for (const auto& g : groups) {
    const ClassTable& ct = bank.classes(g);
    std::set<BigInt> scan;
    for (const auto& c : ct.classes)
      if (c.order % g.p() != 0) scan.insert(c.order);
    const auto spec = semisimple_order_spectrum(g);
    t.expect(spec == scan, g.str() + " spectrum differs");
    os << g.str() << ":" << scan.size() << " ";
  }
  struct Fact {
    Family f;
    bool exists;
  };
  for (const Fact fact : {Fact{Family::Sp, true}, Fact{Family::GOMinus, true}, Fact{Family::GOPlus, false}}) {
    const GroupId g = gid(fact.f, 5, 2);
    const auto w = has_semisimple_of_order(g, 35);
    t.expect(w.exact, g.str() + " catalog inexact");
    t.expect(w.exists == fact.exists, g.str() + " order 35 expected " + (fact.exists ? "present" : "absent"));
    os << g.str() << "/35:" << (w.exists ? "yes" : "no") << " ";
  }
  r.pass = t.failed == 0;
  r.detail = os.str() + (r.pass ? "" : "; " + t.failures());
  return r;
}

// ---------------------------------------------------------------- 6: audit sweep

inline CriterionResult audit_sweep(const ScenarioCatalog& cat, unsigned threads) {
  CriterionResult r{6, "Audit sweep n in [5,12], q in {2,3,4,5,7,8,9}", false, "", 0};
  const auto t0 = std::chrono::steady_clock::now();
  const GridSummary g = run_grid(cat, all_ids(cat), 5, 12, {2, 3, 4, 5, 7, 8, 9}, threads);
  const double secs = GroupBank::since(t0);
  std::set<std::string> covered;
  for (const auto& c : g.cells)
    if (c.status == CellStatus::Pass) covered.insert(c.id);
  std::vector<std::string> missing;
  for (const auto& s : cat.scenarios)
    if (!covered.count(s.id)) missing.push_back(s.id);
  r.pass = g.failed == 0 && missing.empty() && secs < 60;
  std::ostringstream os;
  os << cat.scenarios.size() << " scenarios, " << g.passed << " cells passed, " << g.failed << " failed, "
     << g.inapplicable << " inapplicable, " << g.checks << " checks (" << g.advisories << " advisory)";
  if (secs >= 60) os << "; exceeded 60 s";
  for (const auto& m : missing) os << "; no applicable cell for " << m;
  r.detail = os.str();
  return r;
}

// ---------------------------------------------------------------- 7: Omega_2^- generator

inline CriterionResult omega2minus_action() {
  CriterionResult r{7, "Omega2- generator action types", false, "", 0};
  Tally t;
  std::ostringstream os;
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
    try {
      const SpecialElement e = omega2minus_generator(q);
      const ActionType a = action_type(e.matrix);
      const std::map<unsigned, unsigned> want = q == 3 ? std::map<unsigned, unsigned>{{1, 2}} : std::map<unsigned, unsigned>{{2, 1}};
      t.expect(a.parts == want, "q=" + std::to_string(q) + " action " + a.str());
      t.expect(certify(e).ok(), "q=" + std::to_string(q) + " certificate failed");
      os << "q=" << q << ":" << a.str() << " ";
    } catch (const std::exception& ex) {
      t.expect(false, "q=" + std::to_string(q) + ": " + ex.what());
    }
  }
  r.pass = t.failed == 0;
  r.detail = os.str() + (r.pass ? "" : "; " + t.failures());
  return r;
}

// ---------------------------------------------------------------- 8: structural sanity

/// The form an m-subspace must be totally isotropic (or singular) for; nullopt for GL/SL.
inline std::optional<FormSpec> polar_form(const GroupId& g, const FieldPtr& F) {
  if (is_linear(g.family)) return std::nullopt;
  if (g.family == Family::Sp) return standard_alternating(F, g.n);
  if (is_unitary(g.family)) return standard_hermitian(F, g.n);
  return standard_quadratic(F, g.n, witt_sign(g.family));
}

/// Counts m-subspaces of GF(q)^d on which the form vanishes, walking reduced row-echelon bases.
inline std::uint64_t brute_isotropic_count(const GroupId& g, unsigned m) {
  const FieldPtr F = field_of_order(g.q);
  const Field& Fr = *F;
  const unsigned d = g.dim();
  const auto form = polar_form(g, F);
  std::uint64_t count = 0;
  std::vector<unsigned> piv(m);
  std::vector<std::vector<Elem>> rows(m, std::vector<Elem>(d, 0));
  std::vector<std::pair<unsigned, unsigned>> free_slots;

  auto isotropic = [&]() {
    if (!form) return true;
    for (unsigned i = 0; i < m; ++i) {
      if (form->kind == FormKind::Quadratic && form->quadratic(rows[i]) != 0) return false;
      for (unsigned j = form->kind == FormKind::Alternating ? i + 1 : i; j < m; ++j)
        if (form->bilinear(rows[i], rows[j]) != 0) return false;
    }
    return true;
  };
  auto fill = [&](auto&& self, std::size_t k) -> void {
    if (k == free_slots.size()) {
      count += isotropic();
      return;
    }
    auto [i, j] = free_slots[k];
    for (Elem a = 0; a < Fr.q(); ++a) {
      rows[i][j] = a;
      self(self, k + 1);
    }
    rows[i][j] = 0;
  };
  auto choose = [&](auto&& self, unsigned i, unsigned start) -> void {
    if (i == m) {
      free_slots.clear();
      for (unsigned a = 0; a < m; ++a) {
        std::fill(rows[a].begin(), rows[a].end(), 0);
        rows[a][piv[a]] = 1;
        for (unsigned j = piv[a] + 1; j < d; ++j)
          if (std::find(piv.begin(), piv.end(), j) == piv.end()) free_slots.push_back({a, j});
      }
      fill(fill, 0);
      return;
    }
    for (unsigned c = start; c < d; ++c) {
      piv[i] = c;
      self(self, i + 1, c + 1);
    }
  };
  choose(choose, 0, 0);
  return count;
}

/// Coordinate positions spanning a standard totally isotropic m-space for the standard form.
inline std::vector<unsigned> standard_isotropic_positions(unsigned m) {
  std::vector<unsigned> pos;
  for (unsigned i = 0; i < m; ++i) pos.push_back(2 * i);
  return pos;
}

/// Elements of the store mapping span{e_i : i in pos} into itself (columns act on coordinates).
inline std::size_t stabilizer_size(const ElementStore& s, const std::vector<unsigned>& pos) {
  std::vector<bool> inside(s.dim(), false);
  for (unsigned p : pos) inside[p] = true;
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Matrix m = s.matrix(i);
    bool ok = true;
    for (unsigned j : pos)
      for (unsigned r = 0; r < s.dim() && ok; ++r) ok = inside[r] || m(r, j) == 0;
    n += ok;
  }
  return n;
}

inline CriterionResult structural_sanity(GroupBank& bank) {
  CriterionResult r{8, "Group orders vs enumeration; Sp4(2) class count; parabolic orbit-stabilizer", false, "", 0};
  Tally t;
  for (const GroupId& g : {gid(Family::SL, 2, 3), gid(Family::GL, 2, 4), gid(Family::SL, 3, 2), gid(Family::GL, 3, 3),
                           gid(Family::SU, 3, 4), gid(Family::GU, 3, 4), gid(Family::SU, 2, 9), gid(Family::GU, 4, 4),
                           gid(Family::GOPlus, 1, 8), gid(Family::GOMinus, 1, 8), gid(Family::Sp, 1, 7), gid(Family::Sp, 2, 3)}) {
    try {
      bank.get(g);
    } catch (const std::exception& ex) {
      t.expect(false, g.str() + ": " + ex.what());
    }
  }
  std::size_t enumerated = 0;
  for (const auto& g : bank.enumerated()) {
    ++enumerated;
    t.expect(BigInt(bank.get(g).store->size()) == group_order(g), g.str() + " order mismatch");
  }
  t.expect(bank.classes(gid(Family::Sp, 2, 2)).num_classes() == 11, "Sp(2,2) class count");

  // GO^e(2) inside Sp(2), obtained as the quadratic-form stabilizer, equals the generated group.
  for (unsigned n : {2u, 3u}) {
    const ElementStore& sp = *bank.get(gid(Family::Sp, n, 2)).store;
    for (Family f : {Family::GOPlus, Family::GOMinus}) {
      const GroupId go = gid(f, n, 2);
      const auto& e = bank.get(go);
      std::size_t kept = 0;
      bool inside = true;
      for (std::size_t i = 0; i < sp.size(); ++i) {
        const Matrix m = sp.matrix(i);
        if (!preserves_form(m, e.form)) continue;
        ++kept;
        inside = inside && e.store->contains(m);
      }
      t.expect(inside && kept == e.store->size(), go.str() + " stabilizer filter gives " + std::to_string(kept));
    }
  }

  // Formula count against brute force, and |G| = |P_m| * #(isotropic m-spaces).
  std::size_t counts = 0;
  auto polar = [&](const GroupId& g) {
    for (unsigned m = 1; m <= witt_index(g); ++m) {
      const BigInt formula = isotropic_space_count(g, m);
      const BigInt brute = BigInt(brute_isotropic_count(g, m));
      t.expect(formula == brute, g.str() + " m=" + std::to_string(m) + ": " + to_string(formula) + " vs " + to_string(brute));
      const SubgroupOrder p = subgroup_order({SubgroupKind::ParabolicPm, {static_cast<long long>(m)}, g});
      t.expect(p.exact && p.value * formula == group_order(g), g.str() + " P_" + std::to_string(m) + " orbit-stabilizer");
      ++counts;
    }
  };
  for (std::uint64_t q : {2, 3, 4}) {
    for (unsigned n = 1; n <= 3; ++n)
      for (Family f : {Family::Sp, Family::GOPlus, Family::GOMinus}) polar(gid(f, n, q));
    for (unsigned n = 2; n <= 6; ++n) polar(gid(Family::GL, n, q));
  }
  polar(gid(Family::GOOdd, 1, 3));
  polar(gid(Family::GOOdd, 2, 3));
  for (unsigned n = 2; n <= 6; ++n) polar(gid(Family::GU, n, 4));

  // Stabilizers measured directly inside enumerated groups.
  std::size_t stabs = 0;
  for (const GroupId& g : {gid(Family::Sp, 2, 2), gid(Family::Sp, 2, 3), gid(Family::Sp, 2, 4), gid(Family::GOPlus, 2, 2),
                           gid(Family::GOMinus, 2, 2), gid(Family::GOPlus, 3, 2), gid(Family::GOMinus, 3, 2)}) {
    const ElementStore& s = *bank.get(g).store;
    for (unsigned m = 1; m <= witt_index(g); ++m) {
      const std::size_t stab = stabilizer_size(s, standard_isotropic_positions(m));
      const SubgroupOrder p = subgroup_order({SubgroupKind::ParabolicPm, {static_cast<long long>(m)}, g});
      t.expect(BigInt(stab) == p.value, g.str() + " stabilizer of a " + std::to_string(m) + "-space: " +
                                            std::to_string(stab) + " vs " + to_string(p.value));
      ++stabs;
    }
  }
  r.pass = t.failed == 0;
  r.detail = std::to_string(enumerated) + " groups enumerated, " + std::to_string(counts) + " isotropic counts, " +
             std::to_string(stabs) + " stabilizers" + (r.pass ? "" : "; " + t.failures());
  return r;
}

}  // namespace acc

/// Runs the acceptance criteria in order (1..8); each result carries its own timing.
inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {}) {
  GroupBank bank;
  const ScenarioCatalog* cat = opt.catalog;
#ifdef COVER2_HAVE_EMBEDDED_SCENARIOS
  if (!cat) cat = &builtin_scenarios();
#endif
  std::vector<std::pair<int, std::function<CriterionResult()>>> jobs = {
      {1, [&] { return acc::dye_covering(bank); }},
      {2, [] { return acc::zsigmondy_equivalence(); }},
      {3, [] { return acc::gcd_identities(); }},
      {4, [] { return acc::special_elements(); }},
      {5, [&] { return acc::torus_spectrum(bank); }},
      {6, [&] {
         if (!cat) return CriterionResult{6, "Audit sweep", false, "no scenario catalog available", 0};
         return acc::audit_sweep(*cat, opt.threads);
       }},
      {7, [] { return acc::omega2minus_action(); }},
      {8, [&] { return acc::structural_sanity(bank); }}};
  std::vector<CriterionResult> out;
  for (auto& [id, job] : jobs) {
    if (!opt.only.empty() && !opt.only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = job();
    } catch (const std::exception& ex) {
      r = {id, "criterion " + std::to_string(id), false, std::string("error: ") + ex.what(), 0};
    }
    r.seconds = GroupBank::since(t0);
    while (!r.detail.empty() && r.detail.back() == ' ') r.detail.pop_back();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cover2
