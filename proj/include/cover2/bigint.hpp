#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cover2 {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

/// Raised when a bounded search (factorization, element search, enumeration) runs out of budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt ipow(BigInt base, std::uint64_t e) {
  BigInt r = 1;
  while (e) {
    if (e & 1U) r *= base;
    e >>= 1U;
    if (e) base *= base;
  }
  return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

inline std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max())
    throw std::out_of_range("integer does not fit in 64 bits: " + v.str());
  return v.convert_to<std::uint64_t>();
}

inline BigInt powmod(BigInt base, BigInt e, const BigInt& m) {
  return boost::multiprecision::powm(base % m, e, m);
}

namespace detail {

inline bool miller_rabin_round(const BigInt& n, const BigInt& a, const BigInt& d, unsigned s) {
  BigInt x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

/// Deterministic for n < 3.3e24 (first 13 prime bases); beyond that the extra
/// bases make a false positive vanishingly unlikely for the sizes used here.
inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  static const unsigned small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  for (unsigned p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned a : small)
    if (!detail::miller_rabin_round(n, a, d, s)) return false;
  return true;
}

inline bool is_prime_u64(std::uint64_t n) { return is_prime(BigInt(n)); }

/// Returns p if n = p^k for a prime p and k >= 1, else 0.
inline std::uint64_t prime_base(std::uint64_t n) {
  if (n < 2) return 0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1 ? p : 0;
    }
  }
  return n;
}

inline bool is_prime_power(std::uint64_t n) { return prime_base(n) != 0; }

using Factorization = std::map<BigInt, unsigned>;

namespace detail {

inline BigInt pollard_brent(const BigInt& n, unsigned seed, std::uint64_t& budget) {
  if (n % 2 == 0) return 2;
  BigInt y = seed + 1, c = seed * 2 + 1, m = 128, g = 1, r = 1, q = 1, x, ys;
  auto f = [&](const BigInt& v) { return (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (BigInt i = 0; i < r; ++i) y = f(y);
    BigInt k = 0;
    while (k < r && g == 1) {
      ys = y;
      BigInt lim = std::min<BigInt>(m, r - k);
      for (BigInt i = 0; i < lim; ++i) {
        y = f(y);
        q = q * abs(x - y) % n;
      }
      g = gcd(q, n);
      k += m;
      if (budget < static_cast<std::uint64_t>(lim)) throw BudgetExceeded("factorization budget exhausted");
      budget -= static_cast<std::uint64_t>(lim);
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g;
}

inline void factor_into(BigInt n, Factorization& out, std::uint64_t& budget) {
  if (n <= 1) return;
  for (unsigned p = 2; p < 1000; ++p) {
    if (n % p == 0) {
      while (n % p == 0) {
        n /= p;
        ++out[p];
      }
    }
    if (BigInt(p) * p > n) break;
  }
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned seed = 1;; ++seed) {
    BigInt d = pollard_brent(n, seed, budget);
    if (d != n && d != 1) {
      factor_into(d, out, budget);
      factor_into(n / d, out, budget);
      return;
    }
  }
}

}  // namespace detail

/// Trial division by small primes, then Brent's variant of Pollard rho.
inline Factorization factor(const BigInt& n, std::uint64_t budget = 200'000'000ULL) {
  if (n < 1) throw std::invalid_argument("factor: n must be positive");
  Factorization out;
  detail::factor_into(n, out, budget);
  return out;
}

inline std::vector<BigInt> prime_divisors(const BigInt& n) {
  std::vector<BigInt> ps;
  for (const auto& [p, e] : factor(n)) ps.push_back(p);
  return ps;
}

/// Multiplicative order of a modulo prime r (gcd(a, r) = 1).
inline BigInt multiplicative_order(const BigInt& a, const BigInt& r) {
  if (gcd(a, r) != 1) throw std::invalid_argument("multiplicative_order: not a unit");
  BigInt ord = r - 1;
  for (const auto& [p, e] : factor(r - 1)) {
    for (unsigned i = 0; i < e; ++i) {
      if (powmod(a, ord / p, r) == 1)
        ord /= p;
      else
        break;
    }
  }
  return ord;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace cover2
