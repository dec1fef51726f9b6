#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "field.hpp"
#include "poly.hpp"

namespace cover2 {

namespace detail {

// Candidate k (0 <= k < q^deg) -> monic polynomial of degree deg whose coefficient vector
// (c0, c1, ..., c_{deg-1}) is the k-th in lexicographic order with c0 most significant.
inline std::vector<Elem> lex_candidate(std::uint64_t k, std::uint32_t q, std::uint32_t deg) {
  std::vector<Elem> c(deg + 1, 0);
  c[deg] = 1;
  for (std::uint32_t i = deg; i-- > 0;) {
    c[i] = static_cast<Elem>(k % q);
    k /= q;
  }
  return c;
}

inline Poly lex_first_irreducible(const FieldPtr& base, std::uint32_t deg) {
  const std::uint64_t total = to_u64(ipow(base->q(), deg));
  for (std::uint64_t k = 0; k < total; ++k) {
    auto c = lex_candidate(k, base->q(), deg);
    if (deg > 1 && c[0] == 0) continue;
    Poly cand(base, std::move(c));
    if (deg == 1 || is_irreducible(cand)) return cand;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace detail

/// The prime field GF(p).
inline FieldPtr prime_field(std::uint32_t p) {
  static std::mutex mu;
  static std::map<std::uint32_t, FieldPtr> cache;
  if (!is_prime_u64(p)) throw std::invalid_argument("prime_field: p is not prime");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  auto F = std::make_shared<const Field>(p, std::vector<std::uint32_t>{0, 1});
  cache.emplace(p, F);
  return F;
}

/// GF(p^f) with the lexicographically smallest monic irreducible modulus of degree f over GF(p)
/// (coefficients compared low degree first). Prime fields use the modulus x.
inline FieldPtr field_make(std::uint32_t p, std::uint32_t f) {
  if (!is_prime_u64(p)) throw std::invalid_argument("field_make: p is not prime");
  if (f < 1) throw std::invalid_argument("field_make: f must be >= 1");
  if (ipow(p, f) > kMaxFieldSize) throw std::invalid_argument("field_make: size bound exceeded");
  if (f == 1) return prime_field(p);
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, f});
    if (it != cache.end()) return it->second;
  }
  Poly m = detail::lex_first_irreducible(prime_field(p), f);
  std::vector<std::uint32_t> mod(m.coeffs().begin(), m.coeffs().end());
  auto F = std::make_shared<const Field>(p, std::move(mod));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(p, f), F).first->second;
}

/// GF(q) for a prime power q.
inline FieldPtr field_of_order(std::uint64_t q) {
  std::uint64_t p = prime_base(q);
  if (p == 0) throw std::invalid_argument("field_of_order: q is not a prime power");
  std::uint32_t f = 0;
  for (std::uint64_t v = q; v > 1; v /= p) ++f;
  return field_make(static_cast<std::uint32_t>(p), f);
}

/// GF(q^d) presented as GF(q)[x]/(g) with g the lexicographically smallest monic irreducible
/// polynomial of degree d over GF(q). Elements are residue polynomials over the base field.
class Extension {
 public:
  Extension(FieldPtr base, std::uint32_t degree) : base_(std::move(base)), d_(degree) {
    if (d_ < 1) throw std::invalid_argument("Extension: degree-0 extension requested");
    modulus_ = d_ == 1 ? Poly::x(base_) : detail::lex_first_irreducible(base_, d_);
    order_ = ipow(base_->q(), d_);
  }

  const FieldPtr& base() const { return base_; }
  std::uint32_t degree() const { return d_; }
  const Poly& modulus() const { return modulus_; }
  /// q^d
  const BigInt& order() const { return order_; }

  Poly one() const { return Poly::constant(base_, 1); }
  Poly embed(Elem c) const { return Poly::constant(base_, c); }
  Poly gen() const { return Poly::x(base_) % modulus_; }

  Poly mul(const Poly& a, const Poly& b) const { return (a * b) % modulus_; }
  Poly add(const Poly& a, const Poly& b) const { return a + b; }
  Poly pow(const Poly& a, const BigInt& e) const { return poly_powmod(a, e, modulus_); }
  /// a^(q^k)
  Poly frobenius(const Poly& a, std::uint32_t k) const { return pow(a, ipow(base_->q(), k)); }

  /// Trace to the base field.
  Elem trace(const Poly& a) const {
    Poly t(base_), x = a % modulus_;
    for (std::uint32_t i = 0; i < d_; ++i) {
      t = t + x;
      x = frobenius(x, 1);
    }
    if (t.degree() > 0) throw std::logic_error("Extension::trace: result outside base field");
    return t.coeff(0);
  }

  /// The k-th element in the fixed enumeration (base-q digits of k as coefficients).
  Poly element(std::uint64_t k) const {
    std::vector<Elem> c(d_, 0);
    for (std::uint32_t i = 0; i < d_; ++i) {
      c[i] = static_cast<Elem>(k % base_->q());
      k /= base_->q();
    }
    return Poly(base_, std::move(c));
  }

  /// Coordinates with respect to the power basis 1, x, ..., x^(d-1).
  std::vector<Elem> coords(const Poly& a) const {
    std::vector<Elem> c(d_, 0);
    Poly r = a % modulus_;
    for (std::uint32_t i = 0; i < d_; ++i) c[i] = r.coeff(i);
    return c;
  }

  const Factorization& group_order_factors() const {
    std::call_once(factors_once_, [&] { factors_ = factor(order_ - 1); });
    return factors_;
  }

  bool has_order(const Poly& a, const BigInt& m) const {
    if (!pow(a, m).is_one()) return false;
    for (const auto& [r, e] : factor(m))
      if (pow(a, m / r).is_one()) return false;
    return true;
  }

  /// First element of the fixed enumeration that generates the multiplicative group.
  const Poly& primitive() const {
    std::call_once(prim_once_, [&] {
      const BigInt n = order_ - 1;
      const auto& fac = group_order_factors();
      const std::uint64_t budget = 1U << 20;
      for (std::uint64_t k = 1; k < budget && BigInt(k) < order_; ++k) {
        Poly c = element(k);
        if (c.is_zero()) continue;
        bool prim = true;
        for (const auto& [r, e] : fac)
          if (pow(c, n / r).is_one()) {
            prim = false;
            break;
          }
        if (prim) {
          primitive_ = c;
          return;
        }
      }
      throw BudgetExceeded("Extension: primitive element search budget exhausted");
    });
    return primitive_;
  }

  /// Monic minimal polynomial of a over the base field.
  Poly minimal_polynomial(const Poly& a) const {
    std::vector<Poly> conj{a % modulus_};
    while (true) {
      Poly nxt = frobenius(conj.back(), 1);
      if (nxt == conj.front()) break;
      conj.push_back(std::move(nxt));
    }
    // Multiply out prod (X - c) with coefficients in the extension.
    std::vector<Poly> acc{one()};
    for (const Poly& c : conj) {
      std::vector<Poly> next(acc.size() + 1, Poly(base_));
      for (std::size_t i = 0; i < acc.size(); ++i) {
        next[i + 1] = next[i + 1] + acc[i];
        next[i] = next[i] - mul(acc[i], c);
      }
      acc = std::move(next);
    }
    std::vector<Elem> out;
    for (const Poly& c : acc) {
      if (c.degree() > 0) throw std::logic_error("minimal_polynomial: coefficient outside base field");
      out.push_back(c.coeff(0));
    }
    return Poly(base_, std::move(out));
  }

 private:
  FieldPtr base_;
  std::uint32_t d_;
  Poly modulus_;
  BigInt order_;
  mutable std::once_flag factors_once_, prim_once_;
  mutable Factorization factors_;
  mutable Poly primitive_;
};

struct ElementWithMinpoly {
  Poly element;
  Poly minimal_polynomial;
};

/// An element of multiplicative order exactly m in GF(q^d), with its minimal polynomial over GF(q).
inline ElementWithMinpoly element_of_order(const Extension& ext, const BigInt& m) {
  const BigInt n = ext.order() - 1;
  if (m < 1 || n % m != 0) throw std::invalid_argument("element_of_order: m does not divide q^d - 1");
  Poly a = ext.pow(ext.primitive(), n / m);
  return {a, ext.minimal_polynomial(a)};
}

}  // namespace cover2
