#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

#include "bigint.hpp"

namespace cover2 {

// ================================================================ group ids

enum class Family {
  GL, SL, GU, SU, Sp, OmegaOdd, OPlus, OMinus, SOPlus, SOMinus, OmegaPlus, OmegaMinus, GOPlus, GOMinus, GOOdd
};

inline const std::vector<std::pair<Family, std::string>>& family_names() {
  static const std::vector<std::pair<Family, std::string>> names = {
      {Family::GL, "GL"},         {Family::SL, "SL"},           {Family::GU, "GU"},
      {Family::SU, "SU"},         {Family::Sp, "Sp"},           {Family::OmegaOdd, "OmegaOdd"},
      {Family::OPlus, "OPlus"},   {Family::OMinus, "OMinus"},   {Family::SOPlus, "SOPlus"},
      {Family::SOMinus, "SOMinus"}, {Family::OmegaPlus, "OmegaPlus"}, {Family::OmegaMinus, "OmegaMinus"},
      {Family::GOPlus, "GOPlus"}, {Family::GOMinus, "GOMinus"}, {Family::GOOdd, "GOOdd"}};
  return names;
}

inline std::string to_string(Family f) {
  for (const auto& [k, s] : family_names())
    if (k == f) return s;
  return "?";
}

inline std::optional<Family> parse_family(const std::string& s) {
  for (const auto& [k, name] : family_names())
    if (name == s) return k;
  return std::nullopt;
}

inline bool is_unitary(Family f) { return f == Family::GU || f == Family::SU; }
inline bool is_linear(Family f) { return f == Family::GL || f == Family::SL; }
inline bool is_odd_orthogonal(Family f) { return f == Family::OmegaOdd || f == Family::GOOdd; }

/// +1 / -1 for the even-dimensional orthogonal families, 0 otherwise.
inline int witt_sign(Family f) {
  switch (f) {
    case Family::OPlus: case Family::SOPlus: case Family::OmegaPlus: case Family::GOPlus: return 1;
    case Family::OMinus: case Family::SOMinus: case Family::OmegaMinus: case Family::GOMinus: return -1;
    default: return 0;
  }
}
inline bool is_even_orthogonal(Family f) { return witt_sign(f) != 0; }
inline bool is_orthogonal(Family f) { return is_even_orthogonal(f) || is_odd_orthogonal(f); }

/// A classical group label. For unitary families q is the field size q0^2 and q0 is stored.
struct GroupId {
  Family family = Family::Sp;
  unsigned n = 1;
  std::uint64_t q = 2;
  std::uint64_t q0 = 0;

  static GroupId make(Family family, unsigned n, std::uint64_t q) {
    GroupId g{family, n, q, 0};
    g.validate();
    return g;
  }

  std::uint64_t p() const { return prime_base(q); }

  /// Matrix dimension of the natural module.
  unsigned dim() const {
    if (family == Family::Sp || is_even_orthogonal(family)) return 2 * n;
    if (is_odd_orthogonal(family)) return 2 * n + 1;
    return n;
  }

  std::string str() const {
    std::ostringstream os;
    os << to_string(family) << '(' << n << ',' << q << ')';
    return os.str();
  }

  void validate() {
    const std::uint64_t pr = prime_base(q);
    if (!pr) throw std::invalid_argument("GroupId: q = " + std::to_string(q) + " is not a prime power");
    if (n < 1) throw std::invalid_argument("GroupId: rank parameter must be positive");
    if (is_unitary(family)) {
      std::uint64_t r = 1;
      while (r * r < q) ++r;
      if (r * r != q) throw std::invalid_argument("GroupId: unitary families need q = q0^2");
      q0 = r;
    }
    if (is_odd_orthogonal(family) && pr == 2) throw std::invalid_argument("GroupId: odd-dimensional orthogonal groups need odd q");
  }

  friend bool operator<(const GroupId& a, const GroupId& b) {
    return std::tie(a.family, a.n, a.q) < std::tie(b.family, b.n, b.q);
  }
  friend bool operator==(const GroupId& a, const GroupId& b) {
    return a.family == b.family && a.n == b.n && a.q == b.q;
  }
};

// ================================================================ order formulas

inline BigInt gcd2(const BigInt& q) { return gcd(BigInt(2), q - 1); }

namespace detail {

inline BigInt sp_order(const BigInt& q, unsigned n) {
  BigInt r = ipow(q, std::uint64_t(n) * n);
  for (unsigned i = 1; i <= n; ++i) r *= ipow(q, 2 * i) - 1;
  return r;
}

inline BigInt gl_order(const BigInt& q, unsigned n) {
  BigInt r = ipow(q, std::uint64_t(n) * (n - 1) / 2);
  for (unsigned i = 1; i <= n; ++i) r *= ipow(q, i) - 1;
  return r;
}

inline BigInt gu_order(const BigInt& q0, unsigned n) {
  BigInt r = ipow(q0, std::uint64_t(n) * (n - 1) / 2);
  for (unsigned i = 1; i <= n; ++i) r *= ipow(q0, i) - (i % 2 ? -1 : 1);
  return r;
}

/// |GO^eps_{2n}(q)|; rank 0 gives the trivial group.
inline BigInt go_even_order(const BigInt& q, unsigned n, int eps) {
  if (n == 0) return 1;
  BigInt r = 2 * ipow(q, std::uint64_t(n) * (n - 1)) * (ipow(q, n) - eps);
  for (unsigned i = 1; i < n; ++i) r *= ipow(q, 2 * i) - 1;
  return r;
}

/// |GO_{2n+1}(q)|: 2|SO| for q odd, |Sp_{2n}(q)| for q even.
inline BigInt go_odd_order(const BigInt& q, unsigned n) {
  return sp_order(q, n) * (q % 2 == 1 ? 2 : 1);
}

}  // namespace detail

/// |GO_d^eps(q)| for a summand of dimension d (eps = 0 for odd d).
inline BigInt go_order_by_dim(const BigInt& q, unsigned d, int eps) {
  if (d % 2) return detail::go_odd_order(q, d / 2);
  return detail::go_even_order(q, d / 2, eps);
}

/// Index of the group inside the full isometry group (GO), for orthogonal families.
inline BigInt index_in_go(const GroupId& g) {
  const BigInt q(g.q);
  switch (g.family) {
    case Family::OPlus: case Family::OMinus: case Family::GOPlus: case Family::GOMinus: case Family::GOOdd: return 1;
    case Family::SOPlus: case Family::SOMinus: return gcd2(q);
    case Family::OmegaPlus: case Family::OmegaMinus: case Family::OmegaOdd: return 2 * gcd2(q);
    default: throw std::invalid_argument("index_in_go: not an orthogonal family");
  }
}

/// Standard orders. Orthogonal index chain: |SO| = |GO|/(2,q-1), |Omega| = |GO|/(2(2,q-1)),
/// in both even and odd dimension; OPlus/OMinus denote the full isometry group GO.
inline BigInt group_order(const GroupId& g) {
  const BigInt q(g.q);
  switch (g.family) {
    case Family::GL: return detail::gl_order(q, g.n);
    case Family::SL: return detail::gl_order(q, g.n) / (q - 1);
    case Family::GU: return detail::gu_order(g.q0, g.n);
    case Family::SU: return detail::gu_order(g.q0, g.n) / (g.q0 + 1);
    case Family::Sp: return detail::sp_order(q, g.n);
    default: break;
  }
  if (is_odd_orthogonal(g.family)) return detail::go_odd_order(q, g.n) / index_in_go(g);
  return detail::go_even_order(q, g.n, witt_sign(g.family)) / index_in_go(g);
}

// ================================================================ Zsigmondy sets

namespace detail {

class ZsigmondyCache {
 public:
  static ZsigmondyCache& instance() {
    static ZsigmondyCache c;
    return c;
  }

  std::optional<std::vector<BigInt>> find(std::uint64_t q, unsigned t) {
    std::shared_lock lock(mu_);
    auto it = memo_.find({q, t});
    if (it == memo_.end()) return std::nullopt;
    return it->second;
  }

  void insert(std::uint64_t q, unsigned t, const std::vector<BigInt>& primes) {
    std::unique_lock lock(mu_);
    if (!memo_.emplace(std::make_pair(q, t), primes).second || path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    out << q << ' ' << t << ':';
    for (std::size_t i = 0; i < primes.size(); ++i) out << (i ? "," : " ") << primes[i];
    out << '\n';
  }

 private:
  ZsigmondyCache() {
    const char* dir = std::getenv("COVER2_CACHE_DIR");
    if (!dir || !*dir) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    path_ = std::filesystem::path(dir) / "zsigmondy.txt";
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      // "q t: p1,p2"
      std::istringstream ls(line);
      std::uint64_t q;
      unsigned t;
      char colon;
      if (!(ls >> q >> t >> colon) || colon != ':') continue;
      std::vector<BigInt> primes;
      std::string rest;
      std::getline(ls, rest);
      std::istringstream ps(rest);
      std::string tok;
      bool ok = true;
      while (std::getline(ps, tok, ',')) {
        auto b = tok.find_first_not_of(' ');
        if (b == std::string::npos) continue;
        try {
          primes.emplace_back(tok.substr(b));
        } catch (...) {
          ok = false;
        }
      }
      if (ok) memo_.emplace(std::make_pair(q, t), std::move(primes));
    }
  }

  std::shared_mutex mu_;
  std::map<std::pair<std::uint64_t, unsigned>, std::vector<BigInt>> memo_;
  std::filesystem::path path_;
};

}  // namespace detail

/// P_t(q): primes dividing q^t - 1 and no q^i - 1 with i < t. Sorted ascending.
inline std::vector<BigInt> zsigmondy_set(std::uint64_t q, unsigned t) {
  if (t < 2) throw std::invalid_argument("zsigmondy_set: t must be at least 2");
  if (q < 2) throw std::invalid_argument("zsigmondy_set: q must be at least 2");
  auto& cache = detail::ZsigmondyCache::instance();
  if (auto hit = cache.find(q, t)) return *hit;
  std::vector<BigInt> out;
  const BigInt Q(q);
  for (const auto& [r, e] : factor(ipow(Q, t) - 1))
    if (Q % r != 0 && multiplicative_order(Q % r, r) == t) out.push_back(r);
  cache.insert(q, t, out);
  return out;
}

/// Product of the members of P_e(q); 1 when the set is empty.
inline BigInt zsigmondy_radical(std::uint64_t q, unsigned e) {
  BigInt r = 1;
  for (const auto& x : zsigmondy_set(q, e)) r *= x;
  return r;
}

struct PpdVerdict {
  bool value = false;
  bool vacuous = false;  // strong-ppd test against an empty P_e(q)
};

inline bool is_ppd_order(unsigned d, std::uint64_t q, unsigned e, const BigInt& m) {
  if (d < 2 || m < 1) throw std::invalid_argument("is_ppd_order: need d >= 2 and m >= 1");
  if (!(2 * e > d && e <= d)) return false;
  for (const auto& r : zsigmondy_set(q, e))
    if (m % r == 0) return true;
  return false;
}

/// Every member of P_e(q) divides m. An empty P_e(q) yields false with the vacuous flag.
inline PpdVerdict is_strong_ppd_order(unsigned d, std::uint64_t q, unsigned e, const BigInt& m) {
  if (d < 2 || m < 1) throw std::invalid_argument("is_strong_ppd_order: need d >= 2 and m >= 1");
  if (!(2 * e > d && e <= d)) return {};
  auto set = zsigmondy_set(q, e);
  if (set.empty()) return {false, true};
  for (const auto& r : set)
    if (m % r != 0) return {};
  return {true, false};
}

// ================================================================ Bertrand numbers

/// 5 -> 3, 6 -> 4, 7 -> 5; otherwise the largest prime t with n/2 < t <= n - 3.
inline unsigned bertrand_number(unsigned n) {
  if (n < 5) throw std::invalid_argument("bertrand_number: n must be at least 5");
  if (n <= 7) return n - 2;
  for (unsigned t = n - 3; 2 * t > n; --t)
    if (is_prime_u64(t)) return t;
  throw std::logic_error("bertrand_number: no prime in range");
}

// ================================================================ special-element orders

struct SingerOrder {
  BigInt general;
  BigInt derived;
};

/// Singer cycle orders in the general group and its derived group.
inline SingerOrder singer_order(const GroupId& g) {
  const BigInt q(g.q);
  switch (g.family) {
    case Family::GL: case Family::SL: {
      BigInt o = ipow(q, g.n) - 1;
      return {o, o / (q - 1)};
    }
    case Family::Sp: {
      BigInt o = ipow(q, g.n) + 1;
      return {o, o};
    }
    case Family::GU: case Family::SU: {
      if (g.n % 2 == 0) throw std::domain_error("singer_order: no Singer cycle in even-dimensional unitary groups");
      BigInt o = ipow(BigInt(g.q0), g.n) + 1;
      return {o, o / (g.q0 + 1)};
    }
    case Family::OMinus: case Family::GOMinus: case Family::SOMinus: case Family::OmegaMinus: {
      BigInt o = ipow(q, g.n) + 1;
      return {o, o / gcd2(q)};
    }
    default: throw std::domain_error("singer_order: no Singer cycle exists in " + to_string(g.family));
  }
}

struct BertrandOrder {
  BigInt order;
  unsigned d = 0;
  unsigned e = 0;
  unsigned t = 0;
};

/// Bertrand element orders; t defaults to bertrand_number(n).
inline BertrandOrder bertrand_order(const GroupId& g, std::optional<unsigned> t_override = std::nullopt) {
  const unsigned n = g.n;
  if (!t_override && n < 5) throw std::invalid_argument("bertrand_order: n must be at least 5");
  const unsigned t = t_override ? *t_override : bertrand_number(n);
  if (t < 1 || t >= n) throw std::invalid_argument("bertrand_order: t out of range");
  if (g.family == Family::SU) {
    if (n == 6) throw std::invalid_argument("bertrand_order: SU with n = 6 has no Bertrand element");
    const BigInt q0(g.q0);
    BigInt o = (ipow(q0, t) + 1) * (ipow(q0, n - t) + (n % 2 ? -1 : 1)) / (q0 + 1);
    return {o, n, t, t};
  }
  if (g.family == Family::Sp || g.family == Family::OmegaOdd) {
    const BigInt q(g.q);
    BigInt a = ipow(q, t) + 1, b = ipow(q, n - t) + 1;
    return {a * b / gcd(a, b), g.dim(), 2 * t, t};
  }
  throw std::invalid_argument("bertrand_order: unsupported family " + to_string(g.family));
}

// ================================================================ subspaces and subgroups

/// Gaussian binomial [r, m]_q.
inline BigInt gaussian_binomial(const BigInt& q, unsigned r, unsigned m) {
  if (m > r) return 0;
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < m; ++i) {
    num *= ipow(q, r - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

/// Witt index (maximal dimension of a totally isotropic/singular subspace).
inline unsigned witt_index(const GroupId& g) {
  if (is_linear(g.family)) return g.n;
  if (is_unitary(g.family)) return g.n / 2;
  if (witt_sign(g.family) == -1) return g.n - 1;
  return g.n;
}

/// Number of totally isotropic (singular, for orthogonal groups) m-subspaces, or all
/// m-subspaces for GL/SL. Polar space of rank r with parameter e gives
/// [r,m]_q * prod_{i<m} (q^{r-i-1+e} + 1).
inline BigInt isotropic_space_count(const GroupId& g, unsigned m) {
  if (m < 1 || m > witt_index(g)) throw std::invalid_argument("isotropic_space_count: m exceeds the Witt index");
  const BigInt q(g.q);
  if (is_linear(g.family)) return gaussian_binomial(q, g.n, m);
  BigInt r;
  if (is_unitary(g.family)) {
    const BigInt q0(g.q0);
    const unsigned rank = g.n / 2;
    r = gaussian_binomial(q, rank, m);
    for (unsigned i = 0; i < m; ++i) r *= ipow(q0, (g.n % 2 ? g.n : g.n - 1) - 2 * i) + 1;
    return r;
  }
  unsigned rank = witt_index(g), e = 1;
  if (g.family != Family::Sp && !is_odd_orthogonal(g.family)) e = witt_sign(g.family) == 1 ? 0 : 2;
  r = gaussian_binomial(q, rank, m);
  for (unsigned i = 0; i < m; ++i) r *= ipow(q, rank - i - 1 + e) + 1;
  return r;
}

enum class SubgroupKind {
  ParabolicPm, OrthogonalSumSp, OrthogonalSumO, OrthogonalSumSU, FieldExtSubgroup,
  UnitaryInSp, OInSp, SpInO, OmegaOddPoint, LowRankNamed
};

inline const std::vector<std::pair<SubgroupKind, std::string>>& subgroup_kind_names() {
  static const std::vector<std::pair<SubgroupKind, std::string>> names = {
      {SubgroupKind::ParabolicPm, "ParabolicPm"},     {SubgroupKind::OrthogonalSumSp, "OrthogonalSumSp"},
      {SubgroupKind::OrthogonalSumO, "OrthogonalSumO"}, {SubgroupKind::OrthogonalSumSU, "OrthogonalSumSU"},
      {SubgroupKind::FieldExtSubgroup, "FieldExtSubgroup"}, {SubgroupKind::UnitaryInSp, "UnitaryInSp"},
      {SubgroupKind::OInSp, "OInSp"},                 {SubgroupKind::SpInO, "SpInO"},
      {SubgroupKind::OmegaOddPoint, "OmegaOddPoint"}, {SubgroupKind::LowRankNamed, "LowRankNamed"}};
  return names;
}

inline std::optional<SubgroupKind> parse_subgroup_kind(const std::string& s) {
  for (const auto& [k, name] : subgroup_kind_names())
    if (name == s) return k;
  return std::nullopt;
}

inline std::string to_string(SubgroupKind k) {
  for (const auto& [kk, name] : subgroup_kind_names())
    if (kk == k) return name;
  return "?";
}

/// Parameters by kind:
///   ParabolicPm {m}; OrthogonalSumSp {m}; OrthogonalSumSU {m};
///   OrthogonalSumO {d1, eps1, eps2} (eps = 0 for odd summand dimension);
///   FieldExtSubgroup {k}; OInSp {eps}; UnitaryInSp, SpInO, OmegaOddPoint {};
///   LowRankNamed {s} for PSL_2(s).
struct SubgroupDescriptor {
  SubgroupKind kind = SubgroupKind::ParabolicPm;
  std::vector<long long> params;
  GroupId parent;
};

struct SubgroupOrder {
  BigInt value;
  bool exact = true;  // false: value is the order of an overgroup (only safe for non-divisibility)
};

inline SubgroupOrder subgroup_order(const SubgroupDescriptor& s) {
  const GroupId& g = s.parent;
  const BigInt q(g.q);
  const unsigned n = g.n;
  auto need = [&](std::size_t k) {
    if (s.params.size() != k)
      throw std::invalid_argument("subgroup_order: " + to_string(s.kind) + " expects " + std::to_string(k) + " parameter(s)");
  };
  auto mismatch = [&]() {
    return std::invalid_argument("subgroup_order: " + to_string(s.kind) + " does not apply to " + g.str());
  };
  const bool omega_parent = g.family == Family::OmegaPlus || g.family == Family::OmegaMinus || g.family == Family::OmegaOdd;

  switch (s.kind) {
    case SubgroupKind::ParabolicPm: {
      need(1);
      if (s.params[0] < 1) throw std::invalid_argument("subgroup_order: m must be positive");
      return {group_order(g) / isotropic_space_count(g, static_cast<unsigned>(s.params[0]))};
    }
    case SubgroupKind::OrthogonalSumSp: {
      need(1);
      const long long m = s.params[0];
      if (g.family != Family::Sp) throw mismatch();
      if (m < 1 || m >= n) throw std::invalid_argument("subgroup_order: need 1 <= m < n");
      return {detail::sp_order(q, static_cast<unsigned>(m)) * detail::sp_order(q, n - static_cast<unsigned>(m))};
    }
    case SubgroupKind::OrthogonalSumSU: {
      need(1);
      const long long m = s.params[0];
      if (!is_unitary(g.family)) throw mismatch();
      if (m < 1 || m >= n) throw std::invalid_argument("subgroup_order: need 1 <= m < n");
      BigInt o = detail::gu_order(g.q0, static_cast<unsigned>(m)) * detail::gu_order(g.q0, n - static_cast<unsigned>(m));
      return {g.family == Family::SU ? o / (g.q0 + 1) : o};
    }
    case SubgroupKind::OrthogonalSumO: {
      need(3);
      if (!is_orthogonal(g.family)) throw mismatch();
      const long long d1 = s.params[0];
      const int e1 = static_cast<int>(s.params[1]), e2 = static_cast<int>(s.params[2]);
      const long long d2 = static_cast<long long>(g.dim()) - d1;
      if (d1 < 1 || d2 < 1) throw std::invalid_argument("subgroup_order: summand dimensions must be positive");
      auto check_sign = [&](long long d, int e) {
        if ((d % 2 == 1) != (e == 0) || e < -1 || e > 1)
          throw std::invalid_argument("subgroup_order: summand sign must be 0 exactly for odd dimension");
        if (d % 2 == 1 && g.q % 2 == 0) throw std::invalid_argument("subgroup_order: odd summand needs odd q");
      };
      check_sign(d1, e1);
      check_sign(d2, e2);
      if (d1 % 2 == 0 && d2 % 2 == 0 && e1 * e2 != witt_sign(g.family))
        throw std::invalid_argument("subgroup_order: summand types do not match the parent type");
      BigInt o = go_order_by_dim(q, static_cast<unsigned>(d1), e1) * go_order_by_dim(q, static_cast<unsigned>(d2), e2);
      return {o / index_in_go(g)};
    }
    case SubgroupKind::FieldExtSubgroup: {
      need(1);
      const long long k = s.params[0];
      if (k < 2 || !is_prime_u64(static_cast<std::uint64_t>(k))) throw std::invalid_argument("subgroup_order: k must be prime");
      const unsigned K = static_cast<unsigned>(k);
      if (g.family == Family::Sp) {
        if (n % K) throw std::invalid_argument("subgroup_order: k must divide n");
        return {detail::sp_order(ipow(q, K), n / K) * K};
      }
      if (is_unitary(g.family)) {
        if (n % K) throw std::invalid_argument("subgroup_order: k must divide n");
        BigInt o = detail::gu_order(ipow(BigInt(g.q0), K), n / K) * K;
        return {g.family == Family::SU ? o / (g.q0 + 1) : o};
      }
      if (is_even_orthogonal(g.family)) {
        const BigInt qk = ipow(q, K);
        const int eps = witt_sign(g.family);
        if (n % K == 0) {
          // Omega^eps_{2n/k}(q^k).k, or Omega^+_n(q^2).[4] for plus type and k = 2.
          BigInt inner = detail::go_even_order(qk, n / K, eps) / (2 * gcd2(qk));
          BigInt ext = (eps == 1 && K == 2) ? 4 : BigInt(K);
          return {inner * ext, omega_parent};
        }
        if (K == 2 && n % 2 == 1 && g.q % 2 == 1) {
          // Omega_n(q^2).2 with n odd.
          return {detail::go_odd_order(qk, (n - 1) / 2) / (2 * gcd2(qk)) * 2, omega_parent};
        }
        throw std::invalid_argument("subgroup_order: no field-extension subgroup of this degree");
      }
      throw mismatch();
    }
    case SubgroupKind::UnitaryInSp: {
      need(0);
      if (g.family != Family::Sp && !is_even_orthogonal(g.family)) throw mismatch();
      // GU_n(q).2 over GF(q^2); an overgroup bound inside orthogonal parents.
      return {detail::gu_order(q, n) * 2, g.family == Family::Sp};
    }
    case SubgroupKind::OInSp: {
      need(1);
      if (g.family != Family::Sp || g.q % 2) throw mismatch();
      const int eps = static_cast<int>(s.params[0]);
      if (eps != 1 && eps != -1) throw std::invalid_argument("subgroup_order: eps must be +1 or -1");
      return {detail::go_even_order(q, n, eps)};
    }
    case SubgroupKind::SpInO: {
      need(0);
      if (!is_even_orthogonal(g.family) || g.q % 2) throw mismatch();
      BigInt o = detail::sp_order(q, n - 1);
      return {index_in_go(g) == 1 ? o * 2 : o};
    }
    case SubgroupKind::OmegaOddPoint: {
      need(0);
      if (!is_even_orthogonal(g.family) || g.q % 2 == 0 || !omega_parent) throw mismatch();
      return {detail::go_odd_order(q, n - 1) / 4 * 2};
    }
    case SubgroupKind::LowRankNamed: {
      need(1);
      const BigInt sv(s.params[0]);
      if (!is_prime_power(static_cast<std::uint64_t>(s.params[0]))) throw std::invalid_argument("subgroup_order: PSL_2(s) needs a prime power s");
      return {sv * (sv * sv - 1) / gcd2(sv)};
    }
  }
  throw std::logic_error("subgroup_order: unhandled kind");
}

// ================================================================ gcd identity audit

struct IdentityItem {
  std::string item;
  bool applicable = true;
  bool holds = true;
  std::string lhs, rhs;
};

/// Evaluates the seven gcd identities for (q, a, b); the "n" of the last item is a.
inline std::vector<IdentityItem> gcd_identity_audit(std::uint64_t q, long long a, long long b) {
  if (a < 1 || b < 1) throw std::invalid_argument("gcd_identity_audit: a and b must be positive");
  const BigInt Q(q);
  const auto A = static_cast<std::uint64_t>(a), B = static_cast<std::uint64_t>(b);
  const BigInt qa1 = ipow(Q, A) - 1, qa_1 = ipow(Q, A) + 1, qb1 = ipow(Q, B) - 1, qb_1 = ipow(Q, B) + 1;
  const BigInt gab = gcd(BigInt(a), BigInt(b));
  const bool a_odd = a % 2 == 1, coprime = gab == 1;
  std::vector<IdentityItem> out;
  auto na = [&](const std::string& id) { out.push_back({id, false, true, "", ""}); };
  auto divides = [](const BigInt& x, const BigInt& y) { return y % x == 0; };

  {
    BigInt l = gcd(qa1, qb1), r = ipow(Q, to_u64(gab)) - 1;
    out.push_back({"i", true, l == r, to_string(l), to_string(r)});
  }
  if (a_odd) {
    BigInt v = qa_1 / (Q + 1);
    out.push_back({"ii", true, v % 2 == 1, to_string(v) + " odd", "true"});
  } else {
    na("ii");
  }
  {
    BigInt l = gcd(qa1 / (Q - 1), Q - 1), r = gcd(BigInt(a), Q - 1);
    out.push_back({"iii", true, divides(l, r), to_string(l), to_string(r)});
  }
  if (a_odd) {
    BigInt l1 = gcd(qa_1 / (Q + 1), Q + 1), r1 = gcd(BigInt(a), Q + 1);
    BigInt l2 = gcd(qa1, Q + 1), r2 = gcd2(Q);
    out.push_back({"iv", true, divides(l1, r1) && l2 == r2, to_string(l1) + "; " + to_string(l2),
                   to_string(r1) + "; " + to_string(r2)});
  } else {
    na("iv");
  }
  if (a_odd && coprime) {
    BigInt l = gcd(qa_1 / (Q + 1), qb_1), r = gcd(BigInt(a), Q + 1);
    out.push_back({"v", true, divides(l, r), to_string(l), to_string(r)});
    BigInt l2 = gcd(qa_1 / (Q + 1), qb1);
    out.push_back({"vi-a", true, divides(l2, r), to_string(l2), to_string(r)});
  } else {
    na("v");
    na("vi-a");
  }
  {
    BigInt l = gcd(qa_1, Q - 1), r = gcd2(Q);
    bool ok = l == r;
    std::string ls = to_string(l), rs = to_string(r);
    if (a % 2 == 0) {
      BigInt l2 = gcd(qa_1, Q + 1);
      ok = ok && l2 == r;
      ls += "; " + to_string(l2);
      rs += "; " + to_string(r);
    }
    out.push_back({"vi-b", true, ok, ls, rs});
  }
  return out;
}

}  // namespace cover2
