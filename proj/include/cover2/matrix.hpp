#pragma once

#include <istream>
#include <map>
#include <mutex>
#include <tuple>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ffpoly.hpp"

namespace cover2 {

/// Dense matrix over a Field, row-major. Group elements are square and act on column vectors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  Matrix(FieldPtr field, std::size_t dim) : Matrix(std::move(field), dim, dim) {}

  static Matrix identity(FieldPtr field, std::size_t d) {
    Matrix m(std::move(field), d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix scalar(FieldPtr field, std::size_t d, Elem c) {
    Matrix m(std::move(field), d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = c;
    return m;
  }

  static Matrix from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows) {
    Matrix m(std::move(field), rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i].at(j);
    return m;
  }

  /// Companion matrix of a monic polynomial (ones on the subdiagonal, last column -coefficients).
  static Matrix companion(const Poly& f) {
    if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("companion: polynomial must be monic of degree >= 1");
    const std::size_t d = static_cast<std::size_t>(f.degree());
    Matrix m(f.field(), d);
    for (std::size_t i = 1; i < d; ++i) m(i, i - 1) = 1;
    for (std::size_t i = 0; i < d; ++i) m(i, d - 1) = f.field()->neg(f.coeff(i));
    return m;
  }

  /// Block-diagonal sum in the given order.
  static Matrix block_diag(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("block_diag: no blocks");
    std::size_t d = 0;
    for (const auto& b : blocks) d += b.dim();
    Matrix m(blocks[0].field(), d);
    std::size_t off = 0;
    for (const auto& b : blocks) {
      for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) m(off + i, off + j) = b(i, j);
      off += b.dim();
    }
    return m;
  }

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const {
    if (rows_ != cols_) throw std::logic_error("Matrix: not square");
    return rows_;
  }
  bool empty() const { return a_.empty(); }

  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<Elem>& data() const { return a_; }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
    const Field& F = *field_;
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        Elem x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = F.add(r(i, j), F.mul(x, o(k, j)));
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    Matrix r(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->add(a_[i], o.a_[i]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    Matrix r(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->sub(a_[i], o.a_[i]);
    return r;
  }

  Matrix transpose() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  /// Entry-wise x -> x^e (used with e = q0 for the unitary twist).
  Matrix entrywise_pow(const BigInt& e) const {
    Matrix r(*this);
    for (auto& v : r.a_) v = field_->pow(v, e);
    return r;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1U : 0U)) return false;
    return true;
  }

  bool is_zero() const {
    for (auto v : a_)
      if (v) return false;
    return true;
  }

  Matrix pow(BigInt e) const {
    Matrix base = e < 0 ? inverse() : *this;
    if (e < 0) e = -e;
    Matrix r = identity(field_, dim());
    while (e > 0) {
      if ((e & 1) != 0) r = r * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return r;
  }

  /// Row-echelon elimination in place; returns pivot columns.
  std::vector<std::size_t> row_reduce() {
    const Field& F = *field_;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = rows_;
      for (std::size_t i = r; i < rows_; ++i)
        if ((*this)(i, c)) {
          piv = i;
          break;
        }
      if (piv == rows_) continue;
      swap_rows(piv, r);
      Elem inv = F.inv((*this)(r, c));
      for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = F.mul((*this)(r, j), inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        Elem fct = (*this)(i, c);
        if (!fct) continue;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = F.sub((*this)(i, j), F.mul(fct, (*this)(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix t(*this);
    return t.row_reduce().size();
  }

  /// Basis of the right null space {v : M v = 0}, each vector of length cols().
  std::vector<std::vector<Elem>> nullspace() const {
    Matrix t(*this);
    auto piv = t.row_reduce();
    std::vector<bool> is_piv(cols_, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<Elem>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_piv[free]) continue;
      std::vector<Elem> v(cols_, 0);
      v[free] = 1;
      for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = field_->neg(t(r, free));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  Elem determinant() const {
    const Field& F = *field_;
    Matrix t(*this);
    const std::size_t n = dim();
    Elem det = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = n;
      for (std::size_t i = c; i < n; ++i)
        if (t(i, c)) {
          piv = i;
          break;
        }
      if (piv == n) return 0;
      if (piv != c) {
        t.swap_rows(piv, c);
        det = F.neg(det);
      }
      det = F.mul(det, t(c, c));
      Elem inv = F.inv(t(c, c));
      for (std::size_t i = c + 1; i < n; ++i) {
        Elem fct = F.mul(t(i, c), inv);
        if (!fct) continue;
        for (std::size_t j = c; j < n; ++j) t(i, j) = F.sub(t(i, j), F.mul(fct, t(c, j)));
      }
    }
    return det;
  }

  bool invertible() const { return rows_ == cols_ && rank() == rows_; }

  Matrix inverse() const {
    const std::size_t n = dim();
    Matrix aug(field_, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = 1;
    }
    auto piv = aug.row_reduce();
    if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("Matrix: singular matrix");
    Matrix r(field_, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
  }

  /// Matrix fixture text: "p f d" then d rows of d field indices.
  std::string to_fixture() const {
    std::ostringstream os;
    os << field_->p() << ' ' << field_->f() << ' ' << dim() << '\n';
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
      os << '\n';
    }
    return os.str();
  }

  static Matrix from_fixture(std::istream& in) {
    std::uint32_t p = 0, f = 0;
    std::size_t d = 0;
    if (!(in >> p >> f >> d)) throw std::invalid_argument("matrix fixture: missing header \"p f d\"");
    FieldPtr F = field_make(p, f);
    Matrix m(F, d);
    for (std::size_t i = 0; i < d * d; ++i) {
      long long v;
      if (!(in >> v)) throw std::invalid_argument("matrix fixture: truncated entries");
      if (v < 0 || v >= F->q()) throw std::invalid_argument("matrix fixture: entry out of range");
      m.a_[i] = static_cast<Elem>(v);
    }
    return m;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

/// Reads all matrices from a generator file (concatenated fixtures).
inline std::vector<Matrix> read_generator_file(std::istream& in) {
  std::vector<Matrix> out;
  while (true) {
    in >> std::ws;
    if (in.eof()) break;
    out.push_back(Matrix::from_fixture(in));
  }
  return out;
}

/// Characteristic polynomial det(xI - M) via reduction to upper Hessenberg form.
inline Poly char_poly(const Matrix& m) {
  const Field& F = *m.field();
  const std::size_t n = m.dim();
  Matrix h(m);
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = n;
    for (std::size_t i = j + 1; i < n; ++i)
      if (h(i, j)) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != j + 1) {
      h.swap_rows(piv, j + 1);
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    Elem inv = F.inv(h(j + 1, j));
    for (std::size_t k = j + 2; k < n; ++k) {
      Elem u = F.mul(h(k, j), inv);
      if (!u) continue;
      for (std::size_t c = 0; c < n; ++c) h(k, c) = F.sub(h(k, c), F.mul(u, h(j + 1, c)));
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) = F.add(h(r, j + 1), F.mul(u, h(r, k)));
    }
  }
  // p[k] = char poly of the leading k x k block.
  std::vector<Poly> p(n + 1, Poly(m.field()));
  p[0] = Poly::constant(m.field(), 1);
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = Poly::linear(m.field(), h(k - 1, k - 1)) * p[k - 1];
    Elem prod = 1;
    for (std::size_t i = k - 1; i-- > 0;) {
      prod = F.mul(prod, h(i + 1, i));
      if (!prod) break;
      Elem c = F.mul(prod, h(i, k - 1));
      p[k] = p[k] - p[i].scaled(c);
    }
  }
  return p[n];
}

/// Degrees (with multiplicity) of the irreducible factors of the characteristic polynomial.
/// When the characteristic polynomial is not squarefree the degrees do not certify the
/// module decomposition; `squarefree` records which case applies.
struct ActionType {
  std::map<unsigned, unsigned> parts;
  bool squarefree = true;

  friend bool operator==(const ActionType& a, const ActionType& b) { return a.parts == b.parts; }

  unsigned dimension() const {
    unsigned s = 0;
    for (auto [d, m] : parts) s += d * m;
    return s;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it)
      for (unsigned i = 0; i < it->second; ++i) {
        os << (first ? "" : "+") << it->first;
        first = false;
      }
    return os.str();
  }
};

inline ActionType action_type(const Matrix& m) {
  Poly cp = char_poly(m);
  return ActionType{factor_degrees(cp), is_squarefree(cp)};
}

namespace detail {

inline const Factorization& exponent_bound_factors(std::uint32_t p, std::uint64_t q, std::size_t d) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint64_t, std::size_t>, Factorization> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, q, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Factorization fac;
  for (std::size_t i = 1; i <= d; ++i)
    for (const auto& [r, e] : factor(ipow(q, i) - 1)) fac[r] = std::max(fac[r], e);
  unsigned k = 0;
  for (std::uint64_t pk = 1; pk < d; pk *= p) ++k;
  if (k) fac[BigInt(p)] += k;
  return cache.emplace(key, std::move(fac)).first->second;
}

}  // namespace detail

/// Exact multiplicative order: start from the exponent bound
/// p^ceil(log_p d) * lcm(q^i - 1 : i <= d) and strip primes while the power stays trivial.
inline BigInt element_order(const Matrix& m) {
  if (!m.invertible()) throw std::domain_error("element_order: singular matrix");
  const auto& fac = detail::exponent_bound_factors(m.field()->p(), m.field()->q(), m.dim());
  BigInt order = 1;
  for (const auto& [r, e] : fac) order *= ipow(r, e);
  for (const auto& [r, e] : fac)
    for (unsigned i = 0; i < e; ++i) {
      if (m.pow(order / r).is_identity())
        order /= r;
      else
        break;
    }
  return order;
}

}  // namespace cover2
