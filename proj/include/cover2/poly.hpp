#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace cover2 {

/// Dense univariate polynomial over a Field, coefficients low degree first.
/// The zero polynomial has no coefficients; otherwise the leading coefficient is nonzero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }
  static Poly x(FieldPtr field) { return Poly(std::move(field), {0, 1}); }
  /// x - a
  static Poly linear(const FieldPtr& field, Elem a) { return Poly(field, {field->neg(a), 1}); }

  const FieldPtr& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly operator+(const Poly& o) const {
    const Field& F = *fld(o);
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(coeff(i), o.coeff(i));
    return Poly(fptr(o), std::move(r));
  }

  Poly operator-(const Poly& o) const {
    const Field& F = *fld(o);
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(coeff(i), o.coeff(i));
    return Poly(fptr(o), std::move(r));
  }

  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(fptr(o));
    const Field& F = *fld(o);
    std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(c_[i], o.c_[j]));
    }
    return Poly(fptr(o), std::move(r));
  }

  Poly scaled(Elem s) const {
    std::vector<Elem> r(c_);
    for (auto& v : r) v = field_->mul(v, s);
    return Poly(field_, std::move(r));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(field_->inv(lead()));
  }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    const Field& F = *fld(d);
    if (degree() < d.degree()) return {Poly(fptr(d)), *this};
    std::vector<Elem> rem(c_);
    std::vector<Elem> quo(c_.size() - d.c_.size() + 1, 0);
    Elem inv_lead = F.inv(d.lead());
    for (int k = static_cast<int>(rem.size()) - 1; k >= d.degree(); --k) {
      Elem c = rem[k];
      if (c == 0) continue;
      Elem factor = F.mul(c, inv_lead);
      std::size_t shift = k - d.degree();
      quo[shift] = factor;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[shift + j] = F.sub(rem[shift + j], F.mul(factor, d.c_[j]));
    }
    return {Poly(fptr(d), std::move(quo)), Poly(fptr(d), std::move(rem))};
  }

  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(field_);
    std::vector<Elem> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = field_->mul(field_->from_int(static_cast<std::int64_t>(i)), c_[i]);
    return Poly(field_, std::move(r));
  }

  Elem eval(Elem x) const {
    Elem r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = field_->add(field_->mul(r, x), *it);
    return r;
  }

  /// Serialized as comma-separated decimal field indices, low degree first ("1,1,1" is x^2+x+1 over GF(2)).
  std::string serialize() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    return c_.empty() ? "0" : os.str();
  }

  static Poly parse(const FieldPtr& field, const std::string& text) {
    std::vector<Elem> c;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      long long v = std::stoll(tok);
      if (v < 0 || v >= field->q()) throw std::invalid_argument("Poly::parse: coefficient out of range: " + tok);
      c.push_back(static_cast<Elem>(v));
    }
    return Poly(field, std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const Field* fld(const Poly& o) const { return field_ ? field_.get() : o.field_.get(); }
  FieldPtr fptr(const Poly& o) const { return field_ ? field_ : o.field_; }

  FieldPtr field_;
  std::vector<Elem> c_;
};

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^e mod m for e given in binary by a BigInt.
inline Poly poly_powmod(Poly base, BigInt e, const Poly& m) {
  Poly r = Poly::constant(m.field(), 1) % m;
  base = base % m;
  while (e > 0) {
    if ((e & 1) != 0) r = (r * base) % m;
    e >>= 1;
    if (e > 0) base = (base * base) % m;
  }
  return r;
}

namespace detail {

// p-th root of a polynomial whose derivative vanishes: sum a_{ip} x^{ip} -> sum a_{ip}^(q/p) x^i.
inline Poly pth_root(const Poly& f) {
  const Field& F = *f.field();
  const std::uint32_t p = F.p();
  BigInt e = BigInt(F.q()) / p;
  std::vector<Elem> r;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) r.push_back(F.pow(f.coeffs()[i], e));
  return Poly(f.field(), std::move(r));
}

// Monic f -> list of (squarefree factor, multiplicity).
inline void squarefree_decompose(const Poly& f, unsigned mult_scale, std::vector<std::pair<Poly, unsigned>>& out) {
  if (f.degree() <= 0) return;
  const std::uint32_t p = f.field()->p();
  Poly g = f.derivative();
  if (g.is_zero()) {
    squarefree_decompose(pth_root(f), mult_scale * p, out);
    return;
  }
  Poly c = poly_gcd(f, g);
  Poly w = f / c;
  unsigned i = 1;
  while (!w.is_one()) {
    Poly y = poly_gcd(w, c);
    Poly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i * mult_scale);
    ++i;
    w = y;
    c = c / y;
  }
  if (!c.is_one() && c.degree() > 0) squarefree_decompose(pth_root(c.monic()), mult_scale * p, out);
}

// Squarefree monic f -> degree -> count of irreducible factors.
inline void distinct_degree(Poly f, unsigned mult, std::map<unsigned, unsigned>& out) {
  const BigInt q = f.field()->order();
  Poly xp = Poly::x(f.field());
  Poly h = xp % f;
  unsigned i = 0;
  while (f.degree() >= 2 * static_cast<int>(i + 1)) {
    ++i;
    h = poly_powmod(h, q, f);
    Poly g = poly_gcd(h - xp, f);
    if (g.degree() > 0) {
      out[i] += mult * static_cast<unsigned>(g.degree()) / i;
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out[static_cast<unsigned>(f.degree())] += mult;
}

}  // namespace detail

/// Degrees of the irreducible factors of a nonzero polynomial, as degree -> number of
/// factors of that degree counted with multiplicity. The sum of degree*count is deg(poly).
inline std::map<unsigned, unsigned> factor_degrees(const Poly& poly) {
  if (poly.is_zero()) throw std::invalid_argument("factor_degrees: zero polynomial");
  std::map<unsigned, unsigned> out;
  std::vector<std::pair<Poly, unsigned>> sqf;
  detail::squarefree_decompose(poly.monic(), 1, sqf);
  for (auto& [fac, m] : sqf) detail::distinct_degree(fac, m, out);
  return out;
}

inline bool is_squarefree(const Poly& poly) {
  if (poly.degree() <= 0) return true;
  Poly d = poly.derivative();
  if (d.is_zero()) return false;
  return poly_gcd(poly, d).degree() == 0;
}

inline bool is_irreducible(const Poly& poly) {
  if (poly.degree() <= 0) return false;
  auto fd = factor_degrees(poly);
  return fd.size() == 1 && fd.begin()->first == static_cast<unsigned>(poly.degree()) && fd.begin()->second == 1;
}

}  // namespace cover2
