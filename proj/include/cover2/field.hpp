#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigint.hpp"

namespace cover2 {

/// Field elements are indices in [0, q): the base-p digits of the index are the
/// coefficients (low degree first) of the residue polynomial modulo the field modulus.
using Elem = std::uint32_t;

inline constexpr std::uint32_t kMaxFieldSize = 1U << 20;

/// GF(p^f) with a fixed monic irreducible modulus over GF(p).
///
/// Multiplication goes through discrete log / antilog tables built once at
/// construction; addition is digit-wise (XOR when p = 2). Instances are
/// immutable and shared through std::shared_ptr<const Field>.
class Field {
 public:
  /// Builds the field from an explicit modulus (f + 1 coefficients over GF(p), low degree first,
  /// monic). Irreducibility is the caller's responsibility; see field_make().
  Field(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), modulus_(std::move(modulus)) {
    if (modulus_.size() < 2 || modulus_.back() != 1) throw std::invalid_argument("Field: modulus must be monic of degree >= 1");
    f_ = static_cast<std::uint32_t>(modulus_.size() - 1);
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < f_; ++i) {
      q *= p_;
      if (q > kMaxFieldSize) throw std::invalid_argument("Field: size bound exceeded");
    }
    q_ = static_cast<std::uint32_t>(q);
    pow_p_.resize(f_ + 1, 1);
    for (std::uint32_t i = 1; i <= f_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;
    build_tables();
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t f() const { return f_; }
  std::uint32_t q() const { return q_; }
  BigInt order() const { return BigInt(q_); }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool is_prime_field() const { return f_ == 1; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (f_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    Elem r = 0;
    for (std::uint32_t i = 0; i < f_; ++i) {
      std::uint32_t da = a % p_, db = b % p_;
      a /= p_;
      b /= p_;
      r += ((da + db) % p_) * pow_p_[i];
    }
    return r;
  }

  Elem neg(Elem a) const {
    if (p_ == 2) return a;
    if (f_ == 1) return a == 0 ? 0 : p_ - a;
    Elem r = 0;
    for (std::uint32_t i = 0; i < f_; ++i) {
      std::uint32_t da = a % p_;
      a /= p_;
      r += ((p_ - da) % p_) * pow_p_[i];
    }
    return r;
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("Field: inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, const BigInt& e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    BigInt r = (BigInt(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
    if (r < 0) r += q_ - 1;
    return exp_[r.convert_to<std::uint32_t>()];
  }

  Elem pow(Elem a, std::int64_t e) const { return pow(a, BigInt(e)); }

  /// a^(p^k).
  Elem frobenius(Elem a, std::uint32_t k) const { return pow(a, ipow(p_, k)); }

  /// The image of the integer i in the prime subfield.
  Elem from_int(std::int64_t i) const {
    std::int64_t r = i % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }

  /// Discrete log relative to the fixed primitive element (a != 0).
  std::uint32_t log(Elem a) const {
    if (a == 0) throw std::domain_error("Field: log of zero");
    return log_[a];
  }
  Elem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
  Elem primitive() const { return exp_[q_ > 2 ? 1 : 0]; }

  std::uint32_t multiplicative_order(Elem a) const {
    std::uint32_t n = q_ - 1;
    return n / std::gcd(n, log(a));
  }

  /// Absolute trace to GF(p), returned as an integer in [0, p).
  std::uint32_t absolute_trace(Elem a) const {
    Elem t = 0, x = a;
    for (std::uint32_t i = 0; i < f_; ++i) {
      t = add(t, x);
      x = pow(x, BigInt(p_));
    }
    return t;
  }

  bool is_square(Elem a) const {
    if (a == 0 || p_ == 2) return true;
    return log_[a] % 2 == 0;
  }

  std::vector<std::uint32_t> digits(Elem a) const {
    std::vector<std::uint32_t> d(f_);
    for (std::uint32_t i = 0; i < f_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  Elem from_digits(const std::vector<std::uint32_t>& d) const {
    Elem r = 0;
    for (std::size_t i = 0; i < d.size() && i < f_; ++i) r += (d[i] % p_) * pow_p_[i];
    return r;
  }

 private:
  // Multiply residues by schoolbook convolution followed by reduction with the modulus.
  Elem slow_mul(Elem a, Elem b) const {
    auto da = digits(a), db = digits(b);
    std::vector<std::uint64_t> prod(2 * f_, 0);
    for (std::uint32_t i = 0; i < f_; ++i)
      for (std::uint32_t j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(da[i]) * db[j]) % p_;
    for (std::uint32_t k = 2 * f_ - 1; k >= f_ && k < 2 * f_; --k) {
      std::uint64_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (std::uint32_t i = 0; i < f_; ++i)
        prod[k - f_ + i] = (prod[k - f_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    std::vector<std::uint32_t> out(f_);
    for (std::uint32_t i = 0; i < f_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return from_digits(out);
  }

  void build_tables() {
    log_.assign(q_, 0);
    exp_.assign(q_ > 1 ? q_ - 1 : 1, 1);
    if (q_ == 2) {
      exp_[0] = 1;
      return;
    }
    // Search candidates in index order for a primitive element.
    const std::uint32_t n = q_ - 1;
    std::vector<std::uint32_t> prime_factors;
    {
      std::uint32_t m = n;
      for (std::uint32_t d = 2; d * d <= m; ++d)
        if (m % d == 0) {
          prime_factors.push_back(d);
          while (m % d == 0) m /= d;
        }
      if (m > 1) prime_factors.push_back(m);
    }
    auto slow_pow = [&](Elem a, std::uint64_t e) {
      Elem r = 1;
      while (e) {
        if (e & 1U) r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1U;
      }
      return r;
    };
    Elem g = 0;
    for (Elem c = 2; c < q_; ++c) {
      bool prim = slow_pow(c, n) == 1;
      for (std::uint32_t r : prime_factors)
        if (prim && slow_pow(c, n / r) == 1) prim = false;
      if (prim) {
        g = c;
        break;
      }
    }
    if (g == 0) throw std::logic_error("Field: no primitive element (modulus not irreducible?)");
    Elem x = 1;
    for (std::uint32_t k = 0; k < n; ++k) {
      exp_[k] = x;
      log_[x] = k;
      x = slow_mul(x, g);
    }
  }

  std::uint32_t p_ = 0, f_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

using FieldPtr = std::shared_ptr<const Field>;

}  // namespace cover2
