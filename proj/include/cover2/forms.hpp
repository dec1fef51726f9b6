#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace cover2 {

enum class FormKind { Alternating, Symmetric, Hermitian, Quadratic };

inline std::string to_string(FormKind k) {
  switch (k) {
    case FormKind::Alternating: return "alternating";
    case FormKind::Symmetric: return "symmetric";
    case FormKind::Hermitian: return "hermitian";
    case FormKind::Quadratic: return "quadratic";
  }
  return "?";
}

/// A form on GF(q)^d.
///  - Alternating/Symmetric: B(v,w) = v^T G w.
///  - Hermitian: h(v,w) = v^T G w^s with s(x) = x^twist, twist = sqrt(q).
///  - Quadratic: Q(v) = sum_i diag[i] v_i^2 + sum_{i<j} G_ij v_i v_j, with polarization G.
///    G has zero diagonal in characteristic 2 and G_ii = 2 diag[i] otherwise.
struct FormSpec {
  FormKind kind = FormKind::Alternating;
  Matrix gram;
  std::vector<Elem> diag;
  std::uint32_t twist = 0;

  const FieldPtr& field() const { return gram.field(); }
  std::size_t dim() const { return gram.dim(); }

  Elem bilinear(const std::vector<Elem>& v, const std::vector<Elem>& w) const {
    const Field& F = *field();
    Elem s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i]) continue;
      Elem row = 0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        Elem wj = kind == FormKind::Hermitian ? F.pow(w[j], std::int64_t(twist)) : w[j];
        row = F.add(row, F.mul(gram(i, j), wj));
      }
      s = F.add(s, F.mul(v[i], row));
    }
    return s;
  }

  Elem quadratic(const std::vector<Elem>& v) const {
    const Field& F = *field();
    Elem s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i]) continue;
      s = F.add(s, F.mul(diag[i], F.mul(v[i], v[i])));
      for (std::size_t j = i + 1; j < v.size(); ++j) s = F.add(s, F.mul(gram(i, j), F.mul(v[i], v[j])));
    }
    return s;
  }

  bool nondegenerate() const {
    if (kind == FormKind::Quadratic && field()->p() == 2 && dim() % 2 == 1) {
      // Odd dimension in characteristic 2: radical of the polarization is 1-dimensional.
      return gram.rank() == dim() - 1;
    }
    return gram.invertible();
  }

  /// Builds a quadratic form from its values on the basis and its polarization.
  static FormSpec quadratic_from(Matrix polarization, std::vector<Elem> values) {
    FormSpec f;
    f.kind = FormKind::Quadratic;
    f.gram = std::move(polarization);
    f.diag = std::move(values);
    return f;
  }
};

inline std::vector<Elem> column(const Matrix& m, std::size_t j) {
  std::vector<Elem> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

inline std::vector<Elem> apply(const Matrix& m, const std::vector<Elem>& v) {
  const Field& F = *m.field();
  std::vector<Elem> r(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] = F.add(r[i], F.mul(m(i, j), v[j]));
  return r;
}

inline bool preserves_form(const Matrix& m, const FormSpec& f) {
  if (m.dim() != f.dim()) throw std::invalid_argument("preserves_form: dimension mismatch");
  if (f.kind == FormKind::Hermitian) return m.transpose() * f.gram * m.entrywise_pow(f.twist) == f.gram;
  if (!(m.transpose() * f.gram * m == f.gram)) return false;
  if (f.kind != FormKind::Quadratic) return true;
  for (std::size_t i = 0; i < m.dim(); ++i)
    if (f.quadratic(column(m, i)) != f.diag[i]) return false;
  return true;
}

// ---------------------------------------------------------------- standard forms

/// Alternating form on GF(q)^{2n} with hyperbolic pairs (e_i, f_i) at positions (2i, 2i+1).
inline FormSpec standard_alternating(const FieldPtr& F, std::size_t n) {
  FormSpec f;
  f.kind = FormKind::Alternating;
  f.gram = Matrix(F, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    f.gram(2 * i, 2 * i + 1) = 1;
    f.gram(2 * i + 1, 2 * i) = F->neg(1);
  }
  return f;
}

/// Smallest element (by index) of absolute trace 1; x^2 + x + mu is then irreducible (q even).
inline Elem trace_one_element(const Field& F) {
  for (Elem a = 0; a < F.q(); ++a)
    if (F.absolute_trace(a) == 1) return a;
  throw std::logic_error("no element of trace one");
}

inline Elem smallest_nonsquare(const Field& F) {
  for (Elem a = 1; a < F.q(); ++a)
    if (!F.is_square(a)) return a;
  throw std::logic_error("field has no non-square");
}

/// Quadratic form of the given type on GF(q)^d (d = 2n for eps = +1/-1, d = 2n+1 for eps = 0).
/// Hyperbolic pairs occupy (2i, 2i+1); a minus-type form puts the anisotropic plane last;
/// odd dimension appends one vector w with Q(w) = 1.
inline FormSpec standard_quadratic(const FieldPtr& F, std::size_t n, int eps) {
  const bool odd = eps == 0;
  const std::size_t d = 2 * n + (odd ? 1 : 0);
  FormSpec f;
  f.kind = FormKind::Quadratic;
  f.gram = Matrix(F, d);
  f.diag.assign(d, 0);
  for (std::size_t i = 0; i < n; ++i) {
    f.gram(2 * i, 2 * i + 1) = 1;
    f.gram(2 * i + 1, 2 * i) = 1;
  }
  if (eps == -1) {
    if (n == 0) throw std::invalid_argument("standard_quadratic: minus type needs n >= 1");
    const std::size_t a = 2 * n - 2, b = 2 * n - 1;
    if (F->p() == 2) {
      f.diag[a] = 1;
      f.diag[b] = trace_one_element(*F);
    } else {
      // x^2 - nu y^2 with nu a non-square.
      f.gram(a, b) = f.gram(b, a) = 0;
      f.diag[a] = 1;
      f.diag[b] = F->neg(smallest_nonsquare(*F));
    }
  }
  if (odd) f.diag[d - 1] = 1;
  if (F->p() != 2)
    for (std::size_t i = 0; i < d; ++i) f.gram(i, i) = F->add(f.diag[i], f.diag[i]);
  return f;
}

/// Hermitian form with identity Gram matrix on GF(q0^2)^d.
inline FormSpec standard_hermitian(const FieldPtr& F, std::size_t d) {
  if (F->f() % 2) throw std::invalid_argument("standard_hermitian: field degree must be even");
  FormSpec f;
  f.kind = FormKind::Hermitian;
  f.gram = Matrix::identity(F, d);
  f.twist = static_cast<std::uint32_t>(to_u64(ipow(F->p(), F->f() / 2)));
  return f;
}

// ---------------------------------------------------------------- classification

/// Symplectic basis of a non-degenerate alternating (or char-2 symmetric) bilinear form,
/// returned as pairs (e_i, f_i) with B(e_i, f_i) = 1.
inline std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> symplectic_basis(const FormSpec& f) {
  const Field& F = *f.field();
  const std::size_t d = f.dim();
  std::vector<std::vector<Elem>> pool;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Elem> e(d, 0);
    e[i] = 1;
    pool.push_back(e);
  }
  FormSpec bil = f;
  bil.kind = FormKind::Alternating;
  std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> out;
  auto axpy = [&](std::vector<Elem>& v, Elem c, const std::vector<Elem>& w) {
    for (std::size_t k = 0; k < d; ++k) v[k] = F.add(v[k], F.mul(c, w[k]));
  };
  while (!pool.empty()) {
    std::vector<Elem> e = pool.back();
    pool.pop_back();
    bool zero = true;
    for (auto x : e) zero = zero && x == 0;
    if (zero) continue;
    std::size_t j = 0;
    while (j < pool.size() && bil.bilinear(e, pool[j]) == 0) ++j;
    if (j == pool.size()) throw std::domain_error("symplectic_basis: degenerate form");
    std::vector<Elem> g = pool[j];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
    Elem s = F.inv(bil.bilinear(e, g));
    for (auto& x : g) x = F.mul(x, s);
    // Project the remaining vectors onto <e, g>^perp.
    for (auto& v : pool) {
      Elem a = bil.bilinear(v, g), b = bil.bilinear(e, v);
      axpy(v, F.neg(a), e);
      axpy(v, F.neg(b), g);
    }
    out.emplace_back(std::move(e), std::move(g));
  }
  return out;
}

/// Arf invariant of a quadratic form over GF(2^f): +1 (plus type) or -1 (minus type).
inline int arf_invariant(const FormSpec& f) {
  const Field& F = *f.field();
  if (F.p() != 2) throw std::invalid_argument("arf_invariant: characteristic must be 2");
  if (f.kind != FormKind::Quadratic) throw std::invalid_argument("arf_invariant: quadratic form required");
  if (f.dim() % 2 || !f.gram.invertible()) throw std::domain_error("arf_invariant: degenerate polarization");
  Elem arf = 0;
  for (const auto& [e, g] : symplectic_basis(f)) arf = F.add(arf, F.mul(f.quadratic(e), f.quadratic(g)));
  return F.absolute_trace(arf) == 0 ? 1 : -1;
}

/// Witt type of a non-degenerate quadratic form in even dimension: +1 or -1.
/// Odd q: plus iff (-1)^{d/2} det(G) is a square.
inline int orthogonal_type(const FormSpec& f) {
  if (f.field()->p() == 2) return arf_invariant(f);
  const Field& F = *f.field();
  const std::size_t d = f.dim();
  if (d % 2) throw std::invalid_argument("orthogonal_type: odd dimension");
  Elem disc = f.gram.determinant();
  if (!disc) throw std::domain_error("orthogonal_type: degenerate form");
  if ((d / 2) % 2) disc = F.neg(disc);
  return F.is_square(disc) ? 1 : -1;
}

// ---------------------------------------------------------------- invariant forms

/// Basis of invariant bilinear forms of the given kind (Alternating or Symmetric),
/// or a spanning set over GF(q0) of invariant hermitian forms.
inline std::vector<Matrix> invariant_forms(const Matrix& m, FormKind kind, std::uint32_t twist = 0) {
  const FieldPtr& Fp = m.field();
  const Field& F = *Fp;
  const std::size_t d = m.dim();
  if (kind == FormKind::Quadratic) throw std::invalid_argument("invariant_forms: use invariant_quadratic_forms");

  std::vector<Matrix> unknowns;
  if (kind == FormKind::Hermitian) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Matrix e(Fp, d);
        e(i, j) = 1;
        unknowns.push_back(std::move(e));
      }
  } else {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        if (i == j && kind == FormKind::Alternating) continue;
        Matrix e(Fp, d);
        e(i, j) = 1;
        if (i != j) e(j, i) = kind == FormKind::Alternating ? F.neg(1) : 1;
        unknowns.push_back(std::move(e));
      }
  }
  const Matrix mt = m.transpose();
  const Matrix ms = kind == FormKind::Hermitian ? m.entrywise_pow(twist) : m;
  Matrix sys(Fp, d * d, unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    Matrix img = mt * unknowns[u] * ms - unknowns[u];
    for (std::size_t k = 0; k < d * d; ++k) sys(k, u) = img.data()[k];
  }
  std::vector<Matrix> out;
  for (const auto& v : sys.nullspace()) {
    Matrix g(Fp, d);
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      if (v[u]) g = g + Matrix::scalar(Fp, d, v[u]) * unknowns[u];
    out.push_back(std::move(g));
  }
  if (kind != FormKind::Hermitian) return out;

  // Sesquilinear solutions G; hermitian parts G + (G^T)^s and (cG) + ((cG)^T)^s with c^s != c.
  Elem c = 0;
  for (Elem a = 1; a < F.q(); ++a)
    if (F.pow(a, std::int64_t(twist)) != a) {
      c = a;
      break;
    }
  std::vector<Matrix> herm;
  for (const auto& g : out)
    for (Elem s : {Elem(1), c}) {
      if (!s) continue;
      Matrix h = Matrix::scalar(Fp, d, s) * g;
      h = h + h.transpose().entrywise_pow(twist);
      if (!h.is_zero()) herm.push_back(std::move(h));
    }
  return herm;
}

/// Affine space of basis values a = (Q(e_i)) making Q invariant under m, for a fixed polarization.
struct QuadraticSolutions {
  bool consistent = false;
  std::vector<Elem> particular;
  std::vector<std::vector<Elem>> directions;

  std::size_t dimension() const { return directions.size(); }
};

inline QuadraticSolutions invariant_quadratic_forms(const Matrix& m, const Matrix& polarization) {
  const FieldPtr& Fp = m.field();
  const Field& F = *Fp;
  const std::size_t d = m.dim();
  QuadraticSolutions out;
  if (!(m.transpose() * polarization * m == polarization)) return out;
  // Q(m e_i) = sum_k a_k m_ki^2 + c_i with c_i = sum_{k<l} G_kl m_ki m_li; require Q(m e_i) = a_i.
  Matrix sys(Fp, d, d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    Elem c = 0;
    for (std::size_t k = 0; k < d; ++k) {
      sys(i, k) = F.mul(m(k, i), m(k, i));
      for (std::size_t l = k + 1; l < d; ++l) c = F.add(c, F.mul(polarization(k, l), F.mul(m(k, i), m(l, i))));
    }
    sys(i, i) = F.sub(sys(i, i), 1);
    sys(i, d) = F.neg(c);
  }
  Matrix red(sys);
  auto piv = red.row_reduce();
  if (!piv.empty() && piv.back() == d) return out;
  out.consistent = true;
  out.particular.assign(d, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) out.particular[piv[r]] = red(r, d);
  Matrix hom(Fp, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) hom(i, j) = sys(i, j);
  out.directions = hom.nullspace();
  return out;
}

/// Visits every solution vector of an affine solution space (q^dim points).
template <class Visit>
void for_each_solution(const Field& F, const QuadraticSolutions& s, Visit&& visit) {
  if (!s.consistent) return;
  const std::size_t k = s.directions.size();
  std::vector<Elem> coef(k, 0);
  while (true) {
    std::vector<Elem> v = s.particular;
    for (std::size_t j = 0; j < k; ++j)
      if (coef[j])
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.add(v[i], F.mul(coef[j], s.directions[j][i]));
    visit(v);
    std::size_t j = 0;
    while (j < k && ++coef[j] == F.q()) coef[j++] = 0;
    if (j == k) return;
  }
}

/// Which Witt types (+1, -1) occur among the invariant quadratic forms with the given
/// polarization (characteristic 2). Returns {has_plus, has_minus}.
inline std::pair<bool, bool> invariant_quadratic_types(const Matrix& m, const Matrix& polarization) {
  const Field& F = *m.field();
  auto sols = invariant_quadratic_forms(m, polarization);
  bool plus = false, minus = false;
  for_each_solution(F, sols, [&](const std::vector<Elem>& a) {
    if (plus && minus) return;
    (arf_invariant(FormSpec::quadratic_from(polarization, a)) == 1 ? plus : minus) = true;
  });
  return {plus, minus};
}

}  // namespace cover2
