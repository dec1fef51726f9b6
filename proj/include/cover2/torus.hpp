#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "numtheory.hpp"

namespace cover2 {

struct SignedPart {
  unsigned a = 1;
  int sign = 1;  // +1: factor q^a - 1, -1: factor q^a + 1 (unsigned families always +1)
};

/// One maximal torus class: its cyclic factors, order, and exponent (largest element order).
struct TorusEntry {
  std::vector<SignedPart> parts;
  std::vector<BigInt> factors;
  BigInt order;
  BigInt exponent;
};

struct TorusCatalog {
  GroupId group;
  std::vector<TorusEntry> entries;
  bool exact = true;  // false for Omega/SO-level requests in odd characteristic
};

/// "(3+,2-)" for signed families, "(3,2)" for unsigned ones.
inline std::string partition_string(const std::vector<SignedPart>& parts, bool signed_parts) {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i].a);
    if (signed_parts) s += parts[i].sign > 0 ? "+" : "-";
  }
  return s + ")";
}

inline bool has_signed_parts(Family f) { return !is_unitary(f) && !is_linear(f); }

namespace detail {

// Non-increasing sequences of (a, sign) keys summing to n; '+' sorts before '-'.
inline void signed_partitions(unsigned rest, unsigned max_a, int max_sign, bool use_signs,
                              std::vector<SignedPart>& cur, std::vector<std::vector<SignedPart>>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  for (unsigned a = std::min(rest, max_a); a >= 1; --a) {
    for (int s : {1, -1}) {
      if (!use_signs && s == -1) continue;
      if (a == max_a && s > max_sign) continue;
      cur.push_back({a, s});
      signed_partitions(rest - a, a, s, use_signs, cur, out);
      cur.pop_back();
    }
  }
}

inline TorusCatalog build_catalog(const GroupId& g, unsigned bound) {
  if (g.n > bound) throw std::invalid_argument("torus_catalog: rank exceeds the partition bound");
  TorusCatalog cat{g, {}, true};
  const Family f = g.family;
  const bool use_signs = has_signed_parts(f);
  const int parity = witt_sign(f);
  const bool odd_q = g.q % 2 == 1;
  if ((f == Family::OmegaPlus || f == Family::OmegaMinus || f == Family::OmegaOdd || f == Family::SOPlus ||
       f == Family::SOMinus) && odd_q)
    cat.exact = false;

  std::vector<std::vector<SignedPart>> parts;
  std::vector<SignedPart> cur;
  signed_partitions(g.n, g.n, 1, use_signs, cur, parts);

  const BigInt q(g.q), q0(g.q0);
  const bool det_one = f == Family::SL || f == Family::SU;
  const BigInt c = f == Family::SL ? q - 1 : q0 + 1;
  for (auto& pt : parts) {
    if (parity != 0) {
      std::size_t minus = 0;
      for (const auto& sp : pt) minus += sp.sign < 0;
      if ((parity == 1) != (minus % 2 == 0)) continue;
    }
    TorusEntry e;
    e.parts = pt;
    e.order = 1;
    e.exponent = 1;
    for (const auto& sp : pt) {
      BigInt k;
      if (is_unitary(f))
        k = ipow(q0, sp.a) - (sp.a % 2 ? -1 : 1);
      else
        k = ipow(q, sp.a) - sp.sign;
      e.factors.push_back(k);
      e.order *= k;
      e.exponent = lcm(e.exponent, k);
    }
    if (det_one) {
      // Kernel of the (surjective) determinant onto C_c: a single cyclic factor loses c,
      // two or more factors keep the full exponent.
      e.order /= c;
      if (pt.size() == 1) e.exponent = e.factors[0] / c;
    }
    cat.entries.push_back(std::move(e));
  }
  return cat;
}

}  // namespace detail

/// Catalog of maximal torus orders, memoized.
inline std::shared_ptr<const TorusCatalog> torus_catalog(const GroupId& g, unsigned bound = 40) {
  static std::mutex mu;
  static std::map<GroupId, std::shared_ptr<const TorusCatalog>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;
  }
  auto cat = std::make_shared<const TorusCatalog>(detail::build_catalog(g, bound));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(g, cat).first->second;
}

struct TorusWitness {
  bool exists = false;
  bool exact = true;
  std::vector<std::string> partitions;  // one per factor group when exists
  std::size_t scanned = 0;
};

/// Is there a semisimple element of order m in the direct product of the given groups?
/// An abelian group prod C_{k_i} has an element of order m iff m divides lcm(k_i); for a
/// product of groups the tori combine, so we search per prime-power coverage masks.
inline TorusWitness has_semisimple_of_order(const std::vector<GroupId>& groups, const BigInt& m) {
  if (groups.empty()) throw std::invalid_argument("has_semisimple_of_order: no groups");
  if (m < 1) throw std::invalid_argument("has_semisimple_of_order: m must be positive");
  for (const auto& g : groups)
    if (m % g.p() == 0) throw std::domain_error("has_semisimple_of_order: p divides m");

  std::vector<BigInt> prime_powers;
  for (const auto& [r, e] : factor(m)) prime_powers.push_back(ipow(r, e));
  if (prime_powers.size() > 60) throw std::domain_error("has_semisimple_of_order: too many prime factors");
  const std::uint64_t full = prime_powers.size() == 64 ? ~0ULL : ((1ULL << prime_powers.size()) - 1);

  TorusWitness w;
  // For each group: mask -> index of a witnessing entry.
  std::vector<std::map<std::uint64_t, std::size_t>> masks(groups.size());
  std::vector<std::shared_ptr<const TorusCatalog>> cats;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    cats.push_back(torus_catalog(groups[gi]));
    w.exact = w.exact && cats.back()->exact;
    const auto& entries = cats.back()->entries;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      std::uint64_t mask = 0;
      for (std::size_t b = 0; b < prime_powers.size(); ++b)
        if (entries[i].exponent % prime_powers[b] == 0) mask |= 1ULL << b;
      masks[gi].emplace(mask, i);
      ++w.scanned;
    }
  }
  // Combine group by group: reachable mask -> chosen entries.
  std::map<std::uint64_t, std::vector<std::size_t>> reach{{0, {}}};
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    std::map<std::uint64_t, std::vector<std::size_t>> next;
    for (const auto& [acc, choice] : reach)
      for (const auto& [mask, idx] : masks[gi]) {
        auto key = acc | mask;
        if (next.count(key)) continue;
        auto c = choice;
        c.push_back(idx);
        next.emplace(key, std::move(c));
      }
    reach = std::move(next);
  }
  auto it = reach.find(full);
  if (it == reach.end()) return w;
  w.exists = true;
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    w.partitions.push_back(partition_string(cats[gi]->entries[it->second[gi]].parts, has_signed_parts(groups[gi].family)));
  return w;
}

inline TorusWitness has_semisimple_of_order(const GroupId& g, const BigInt& m) {
  return has_semisimple_of_order(std::vector<GroupId>{g}, m);
}

/// All element orders of semisimple elements lying in some maximal torus.
inline std::set<BigInt> semisimple_order_spectrum(const GroupId& g, std::size_t max_size = 1'000'000) {
  std::set<BigInt> out;
  std::set<BigInt> exponents;
  for (const auto& e : torus_catalog(g)->entries) exponents.insert(e.exponent);
  for (const auto& ex : exponents) {
    std::vector<BigInt> divs{1};
    for (const auto& [r, k] : factor(ex)) {
      const std::size_t base = divs.size();
      BigInt pw = 1;
      for (unsigned i = 1; i <= k; ++i) {
        pw *= r;
        for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pw);
      }
      if (divs.size() > max_size) throw std::domain_error("semisimple_order_spectrum: bound exceeded");
    }
    out.insert(divs.begin(), divs.end());
    if (out.size() > max_size) throw std::domain_error("semisimple_order_spectrum: bound exceeded");
  }
  return out;
}

}  // namespace cover2
