#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ffpoly.hpp"
#include "forms.hpp"
#include "matrix.hpp"
#include "numtheory.hpp"

namespace cover2 {

/// An explicit special element together with what it claims to be.
/// Constructors certify order, action type and form preservation before returning.
struct SpecialElement {
  std::string label;  // singer, low_singer, linear_singer, bertrand, omega2minus_gen, xi
  GroupId group;
  Matrix matrix;
  BigInt declared_order;
  ActionType declared_action;
  std::optional<FormSpec> form;
  unsigned rank = 0;           // t for low-Singer cycles and Bertrand elements
  std::string decomposition;   // the orthogonal/symplectic block structure used
  bool critical = false;       // Bertrand: P_{2(n-t)}(q) is empty
};

struct Certificate {
  BigInt order;
  ActionType action;
  bool order_ok = false;
  bool action_ok = false;
  bool form_ok = false;
  int form_type = 0;  // Witt type of an even-dimensional quadratic form, else 0

  bool ok() const { return order_ok && action_ok && form_ok; }
};

inline Certificate certify(const SpecialElement& e) {
  Certificate c;
  c.order = element_order(e.matrix);
  c.action = action_type(e.matrix);
  c.order_ok = c.order == e.declared_order;
  c.action_ok = c.action == e.declared_action;
  c.form_ok = !e.form || (e.form->nondegenerate() && preserves_form(e.matrix, *e.form));
  if (e.form && e.form->kind == FormKind::Quadratic && e.form->dim() % 2 == 0) c.form_type = orthogonal_type(*e.form);
  return c;
}

namespace detail {

/// Multiplication by a on GF(q^k) written in the power basis.
inline Matrix multiplication_matrix(const Extension& ext, const Poly& a) {
  const std::uint32_t k = ext.degree();
  Matrix m(ext.base(), k);
  Poly basis = ext.one();
  for (std::uint32_t j = 0; j < k; ++j) {
    auto col = ext.coords(ext.mul(a, basis));
    for (std::uint32_t i = 0; i < k; ++i) m(i, j) = col[i];
    basis = ext.mul(basis, ext.gen());
  }
  return m;
}

/// pi_a for an element a of order N in GF(q^k).
inline Matrix field_block(const FieldPtr& F, unsigned k, const BigInt& N) {
  Extension ext(F, k);
  return multiplication_matrix(ext, element_of_order(ext, N).element);
}

/// Degree of the minimal polynomial of an element of order N over GF(q).
inline unsigned minpoly_degree(std::uint64_t q, const BigInt& N) {
  if (N == 1) return 1;
  BigInt x = BigInt(q) % N;
  for (unsigned r = 1;; ++r) {
    if (x == 1) return r;
    x = x * q % N;
  }
}

inline void add_parts(ActionType& a, unsigned deg, unsigned count) {
  if (count) a.parts[deg] += count;
}

/// Action of a field block of size k and order N.
inline ActionType block_action(std::uint64_t q, unsigned k, const BigInt& N) {
  ActionType a;
  const unsigned r = minpoly_degree(q, N);
  add_parts(a, r, k / r);
  return a;
}

inline ActionType merge(const std::vector<ActionType>& parts) {
  ActionType out;
  for (const auto& a : parts)
    for (auto [d, m] : a.parts) add_parts(out, d, m);
  return out;
}

inline FormSpec orthogonal_from_symmetric(const Matrix& g) {
  const Field& F = *g.field();
  std::vector<Elem> diag(g.dim());
  const Elem half = F.inv(F.add(1, 1));
  for (std::size_t i = 0; i < g.dim(); ++i) diag[i] = F.mul(g(i, i), half);
  return FormSpec::quadratic_from(g, std::move(diag));
}

inline FormSpec direct_sum(const std::vector<FormSpec>& fs) {
  FormSpec out;
  out.kind = fs.at(0).kind;
  out.twist = fs[0].twist;
  std::vector<Matrix> grams;
  for (const auto& f : fs) {
    grams.push_back(f.gram);
    out.diag.insert(out.diag.end(), f.diag.begin(), f.diag.end());
  }
  out.gram = Matrix::block_diag(grams);
  return out;
}

/// Visits linear combinations of `basis` with coefficients from `coeffs`: single basis
/// vectors first, then pseudo-random combinations. Stops when `visit` returns true.
template <class Visit>
bool visit_combinations(const std::vector<Matrix>& basis, const std::vector<Elem>& coeffs, Visit&& visit,
                        unsigned tries = 400) {
  if (basis.empty()) return false;
  for (const auto& b : basis)
    if (visit(b)) return true;
  const FieldPtr& F = basis[0].field();
  const std::size_t d = basis[0].dim();
  std::mt19937 rng(12345);
  std::uniform_int_distribution<std::size_t> pick(0, coeffs.size() - 1);
  for (unsigned t = 0; t < tries; ++t) {
    Matrix g(F, d);
    for (const auto& b : basis) g = g + Matrix::scalar(F, d, coeffs[pick(rng)]) * b;
    if (!g.is_zero() && visit(g)) return true;
  }
  return false;
}

/// A non-degenerate form of the given kind preserved by m; for even-dimensional quadratic
/// forms `type` (+1/-1) fixes the Witt type, 0 accepts either.
inline std::optional<FormSpec> find_form(const Matrix& m, FormKind kind, int type = 0, std::uint32_t twist = 0) {
  const Field& F = *m.field();
  const std::size_t d = m.dim();
  std::vector<Elem> all;
  for (Elem a = 0; a < F.q(); ++a) all.push_back(a);
  std::optional<FormSpec> found;

  if (kind == FormKind::Alternating || kind == FormKind::Hermitian) {
    std::vector<Elem> coeffs = all;
    if (kind == FormKind::Hermitian) {
      coeffs.clear();
      for (Elem a : all)
        if (F.pow(a, std::int64_t(twist)) == a) coeffs.push_back(a);
    }
    visit_combinations(invariant_forms(m, kind, twist), coeffs, [&](const Matrix& g) {
      if (!g.invertible()) return false;
      FormSpec f;
      f.kind = kind;
      f.gram = g;
      f.twist = twist;
      found = f;
      return true;
    });
    return found;
  }
  if (kind != FormKind::Quadratic) throw std::invalid_argument("find_form: unsupported kind");
  auto type_ok = [&](const FormSpec& f) { return d % 2 || type == 0 || orthogonal_type(f) == type; };

  if (F.p() != 2) {
    visit_combinations(invariant_forms(m, FormKind::Symmetric), all, [&](const Matrix& g) {
      if (!g.invertible()) return false;
      FormSpec f = orthogonal_from_symmetric(g);
      if (!type_ok(f)) return false;
      found = f;
      return true;
    });
    return found;
  }
  if (d % 2) throw std::invalid_argument("find_form: odd-dimensional quadratic forms need odd q");
  visit_combinations(invariant_forms(m, FormKind::Alternating), all, [&](const Matrix& pol) {
    if (!pol.invertible()) return false;
    auto sols = invariant_quadratic_forms(m, pol);
    if (!sols.consistent) return false;
    // Walk a bounded prefix of the affine solution space.
    const std::size_t k = sols.directions.size();
    std::vector<Elem> coef(k, 0);
    for (unsigned step = 0; step < 4096; ++step) {
      std::vector<Elem> v = sols.particular;
      for (std::size_t j = 0; j < k; ++j)
        if (coef[j])
          for (std::size_t i = 0; i < d; ++i) v[i] = F.add(v[i], F.mul(coef[j], sols.directions[j][i]));
      FormSpec f = FormSpec::quadratic_from(pol, v);
      if (type_ok(f)) {
        found = f;
        return true;
      }
      std::size_t j = 0;
      while (j < k && ++coef[j] == F.q()) coef[j++] = 0;
      if (j == k) break;
    }
    return false;
  });
  return found;
}

inline FormKind form_kind_of(Family f) {
  if (f == Family::Sp) return FormKind::Alternating;
  if (is_unitary(f)) return FormKind::Hermitian;
  return FormKind::Quadratic;
}

inline bool is_omega(Family f) {
  return f == Family::OmegaPlus || f == Family::OmegaMinus || f == Family::OmegaOdd;
}

/// A field block of size k and order N together with a preserved form of the given kind/type.
struct FormedBlock {
  Matrix matrix;
  FormSpec form;
  ActionType action;
  BigInt order;
};

inline FormedBlock formed_field_block(const FieldPtr& F, unsigned k, const BigInt& N, FormKind kind, int type,
                                      std::uint32_t twist) {
  Matrix m = field_block(F, k, N);
  auto f = find_form(m, kind, type, twist);
  if (!f) throw std::logic_error("constructor: no invariant " + to_string(kind) + " form of the required type");
  return {m, *f, block_action(F->q(), k, N), N};
}

/// Identity block carrying a standard form of the given kind (type for even quadratic).
inline FormedBlock identity_block(const FieldPtr& F, unsigned k, FormKind kind, int type, std::uint32_t twist) {
  FormSpec f;
  if (kind == FormKind::Alternating) {
    f = standard_alternating(F, k / 2);
  } else if (kind == FormKind::Hermitian) {
    f = standard_hermitian(F, k);
  } else {
    f = k % 2 ? standard_quadratic(F, k / 2, 0) : standard_quadratic(F, k / 2, type);
  }
  f.twist = twist;
  ActionType a;
  add_parts(a, 1, k);
  return {Matrix::identity(F, k), f, a, 1};
}

/// diag(C, D) with D the inverse-transpose (twisted for unitary) on a totally singular
/// decomposition, preserving [[0, I], [eps I, 0]].
inline FormedBlock linear_block(const FieldPtr& F, unsigned k, FormKind kind, std::uint32_t twist) {
  const Field& Fr = *F;
  const BigInt N = ipow(BigInt(Fr.q()), k) - 1;
  Matrix c = field_block(F, k, N);
  Matrix dm = c.inverse().transpose();
  if (kind == FormKind::Hermitian) dm = dm.entrywise_pow(twist);
  Matrix g(F, 2 * k);
  for (unsigned i = 0; i < k; ++i) {
    g(i, k + i) = 1;
    g(k + i, i) = kind == FormKind::Alternating ? Fr.neg(1) : 1;
  }
  FormSpec f;
  f.kind = kind;
  f.gram = g;
  f.twist = twist;
  if (kind == FormKind::Quadratic) f.diag.assign(2 * k, 0);
  ActionType a;
  add_parts(a, k, 2);
  return {Matrix::block_diag({c, dm}), f, a, N};
}

inline SpecialElement assemble(std::string label, const GroupId& g, const std::vector<FormedBlock>& blocks,
                               const BigInt& order, std::string decomposition) {
  SpecialElement e;
  e.label = std::move(label);
  e.group = g;
  std::vector<Matrix> ms;
  std::vector<FormSpec> fs;
  std::vector<ActionType> as;
  for (const auto& b : blocks) {
    ms.push_back(b.matrix);
    fs.push_back(b.form);
    as.push_back(b.action);
  }
  e.matrix = Matrix::block_diag(ms);
  e.form = direct_sum(fs);
  e.declared_action = merge(as);
  e.declared_order = order;
  e.decomposition = std::move(decomposition);
  return e;
}

inline SpecialElement checked(SpecialElement e) {
  Certificate c = certify(e);
  if (!c.ok())
    throw std::logic_error("constructor: " + e.label + " in " + e.group.str() + " failed certification (order " +
                           to_string(c.order) + " vs " + to_string(e.declared_order) + ", action " + c.action.str() +
                           " vs " + e.declared_action.str() + ")");
  return e;
}

inline std::uint32_t twist_of(const GroupId& g) { return is_unitary(g.family) ? static_cast<std::uint32_t>(g.q0) : 0; }

/// Power pair (i, j) of two commuting blocks with determinant one and the requested order.
inline std::pair<unsigned, unsigned> det_one_powers(const FormedBlock& a, const FormedBlock& b, const BigInt& target) {
  const Field& F = *a.matrix.field();
  const Elem da = a.matrix.determinant(), db = b.matrix.determinant();
  const unsigned bound = 64;
  for (unsigned i = 1; i <= bound; ++i)
    for (unsigned j = 1; j <= bound; ++j) {
      if (F.mul(F.pow(da, std::int64_t(i)), F.pow(db, std::int64_t(j))) != 1) continue;
      if (lcm(a.order / gcd(a.order, BigInt(i)), b.order / gcd(b.order, BigInt(j))) == target) return {i, j};
    }
  throw std::logic_error("constructor: no determinant-one power pair of the requested order");
}

inline FormedBlock power(const FormedBlock& b, unsigned i) {
  FormedBlock out = b;
  out.matrix = b.matrix.pow(BigInt(i));
  out.order = b.order / gcd(b.order, BigInt(i));
  out.action = action_type(out.matrix);
  return out;
}

}  // namespace detail

/// pi_a for a of the Singer order of g (derived-group order for SL, SU, Omega-minus),
/// with a preserved form of the right kind solved from the invariant-form equations.
inline SpecialElement singer_cycle(const GroupId& g) {
  const SingerOrder so = singer_order(g);
  const bool derived = g.family == Family::SL || g.family == Family::SU || g.family == Family::OmegaMinus;
  const BigInt N = derived ? so.derived : so.general;
  FieldPtr F = field_of_order(g.q);
  const unsigned d = g.dim();
  SpecialElement e;
  e.label = "singer";
  e.group = g;
  e.matrix = detail::field_block(F, d, N);
  e.declared_order = N;
  e.declared_action = detail::block_action(g.q, d, N);
  e.decomposition = std::to_string(d);
  if (!is_linear(g.family)) {
    auto f = detail::find_form(e.matrix, detail::form_kind_of(g.family), witt_sign(g.family), detail::twist_of(g));
    if (!f) throw std::logic_error("singer_cycle: no invariant form of the required kind and type");
    e.form = *f;
  }
  return detail::checked(std::move(e));
}

/// Trivial block of size d - t plus an irreducible block of rank t.
/// Supported: Sp (t even), orthogonal (t even, minus-type block), SL/GL and SU/GU (t < n;
/// the special groups put the determinant correction on one coordinate of the trivial part).
inline SpecialElement low_singer(const GroupId& g, unsigned t) {
  const unsigned d = g.dim();
  if (t == 0 || t >= d) throw std::invalid_argument("low_singer: rank must satisfy 0 < t < d");
  FieldPtr F = field_of_order(g.q);
  const Field& Fr = *F;
  const BigInt q(g.q);
  const FormKind kind = detail::form_kind_of(g.family);
  const std::uint32_t tw = detail::twist_of(g);
  std::vector<detail::FormedBlock> blocks;
  BigInt order;

  if (g.family == Family::Sp || is_orthogonal(g.family)) {
    if (t % 2) throw std::invalid_argument("low_singer: rank must be even for symplectic and orthogonal groups");
    const unsigned m = t / 2;
    if (g.family == Family::Sp) {
      order = ipow(q, m) + 1;
      blocks.push_back(detail::formed_field_block(F, t, order, kind, 0, tw));
      blocks.push_back(detail::identity_block(F, d - t, kind, 0, tw));
    } else {
      order = (ipow(q, m) + 1) / (detail::is_omega(g.family) ? gcd2(q) : BigInt(1));
      blocks.push_back(detail::formed_field_block(F, t, order, kind, -1, tw));
      blocks.push_back(detail::identity_block(F, d - t, kind, -witt_sign(g.family), tw));
    }
  } else if (is_linear(g.family) || is_unitary(g.family)) {
    const bool unitary = is_unitary(g.family);
    if (unitary && t % 2 == 0) throw std::invalid_argument("low_singer: unitary rank must be odd");
    order = unitary ? ipow(BigInt(g.q0), t) + 1 : ipow(q, t) - 1;
    detail::FormedBlock b;
    if (unitary) {
      b = detail::formed_field_block(F, t, order, kind, 0, tw);
    } else {
      b = {detail::field_block(F, t, order), FormSpec{}, detail::block_action(g.q, t, order), order};
    }
    auto rest = unitary ? detail::identity_block(F, d - t, kind, 0, tw)
                        : detail::FormedBlock{Matrix::identity(F, d - t), FormSpec{}, {}, 1};
    if (!unitary) detail::add_parts(rest.action, 1, d - t);
    if (g.family == Family::SL || g.family == Family::SU) rest.matrix(0, 0) = Fr.inv(b.matrix.determinant());
    blocks = {b, rest};
    if (!unitary) {
      SpecialElement e;
      e.label = "low_singer";
      e.group = g;
      e.matrix = Matrix::block_diag({b.matrix, rest.matrix});
      e.declared_order = order;
      e.declared_action = detail::merge({b.action, rest.action});
      e.rank = t;
      e.decomposition = std::to_string(t) + "+" + std::to_string(d - t);
      return detail::checked(std::move(e));
    }
  } else {
    throw std::invalid_argument("low_singer: unsupported family " + to_string(g.family));
  }
  auto e = detail::assemble("low_singer", g, blocks, order, std::to_string(t) + "+" + std::to_string(d - t));
  e.rank = t;
  return detail::checked(std::move(e));
}

/// diag(C, C^{-T}) (twisted for unitary groups) on a pair of complementary totally singular
/// subspaces, C a Singer cycle of GL_k(q), k = d/2.
inline SpecialElement linear_singer(const GroupId& g) {
  const bool ok = g.family == Family::Sp || g.family == Family::GU || g.family == Family::OPlus ||
                  g.family == Family::GOPlus || g.family == Family::SOPlus;
  if (!ok) throw std::invalid_argument("linear_singer: unsupported family " + to_string(g.family));
  const unsigned d = g.dim();
  if (d % 2) throw std::invalid_argument("linear_singer: dimension must be even");
  FieldPtr F = field_of_order(g.q);
  auto b = detail::linear_block(F, d / 2, detail::form_kind_of(g.family), detail::twist_of(g));
  return detail::checked(detail::assemble("linear_singer", g, {b}, b.order,
                                          std::to_string(d / 2) + "+" + std::to_string(d / 2)));
}

/// Block sum of Singer-type pieces realizing the Bertrand order (t defaults to the Bertrand number).
inline SpecialElement bertrand_element(const GroupId& g, std::optional<unsigned> t_override = std::nullopt) {
  const BertrandOrder bo = bertrand_order(g, t_override);
  const unsigned n = g.n, t = bo.t;
  FieldPtr F = field_of_order(g.q);
  const BigInt q(g.q);
  const FormKind kind = detail::form_kind_of(g.family);
  const std::uint32_t tw = detail::twist_of(g);
  std::vector<detail::FormedBlock> blocks;
  std::string dec;

  if (g.family == Family::Sp || g.family == Family::OmegaOdd) {
    const int type = g.family == Family::Sp ? 0 : -1;
    blocks.push_back(detail::formed_field_block(F, 2 * t, ipow(q, t) + 1, kind, type, tw));
    blocks.push_back(detail::formed_field_block(F, 2 * (n - t), ipow(q, n - t) + 1, kind, type, tw));
    dec = std::to_string(2 * t) + "+" + std::to_string(2 * (n - t));
    if (g.family == Family::OmegaOdd) {
      blocks.push_back(detail::identity_block(F, 1, kind, 0, tw));
      dec += "+1";
    }
  } else if (g.family == Family::SU) {
    const BigInt q0(g.q0);
    auto a = detail::formed_field_block(F, t, ipow(q0, t) + 1, kind, 0, tw);
    detail::FormedBlock b;
    if (n % 2 == 0) {
      b = detail::formed_field_block(F, n - t, ipow(q0, n - t) + 1, kind, 0, tw);
      dec = std::to_string(t) + "+" + std::to_string(n - t);
    } else {
      b = detail::linear_block(F, (n - t) / 2, kind, tw);
      dec = std::to_string(t) + "+" + std::to_string((n - t) / 2) + "+" + std::to_string((n - t) / 2);
    }
    auto [i, j] = detail::det_one_powers(a, b, bo.order);
    blocks = {detail::power(a, i), detail::power(b, j)};
  } else {
    throw std::invalid_argument("bertrand_element: unsupported family " + to_string(g.family));
  }
  auto e = detail::assemble("bertrand", g, blocks, bo.order, dec);
  e.rank = t;
  if (g.family != Family::SU) e.critical = zsigmondy_set(g.q, 2 * (n - t)).empty();
  return detail::checked(std::move(e));
}

/// Generator of the cyclic group Omega_2^-(q) of order (q+1)/(2,q-1): pi_{u^{2(q-1)}} for
/// odd q, the SL_2(q) Singer cycle for even q.
inline SpecialElement omega2minus_generator(std::uint64_t q) {
  const GroupId g = GroupId::make(Family::OmegaMinus, 1, q);
  FieldPtr F = field_of_order(q);
  Extension ext(F, 2);
  const Poly u = ext.primitive();
  const Poly x = F->p() == 2 ? ext.pow(u, BigInt(q - 1)) : ext.pow(u, BigInt(2 * (q - 1)));
  SpecialElement e;
  e.label = "omega2minus_gen";
  e.group = g;
  e.matrix = detail::multiplication_matrix(ext, x);
  e.declared_order = BigInt(q + 1) / gcd2(BigInt(q));
  e.declared_action = detail::block_action(q, 2, e.declared_order);
  e.decomposition = "2";
  auto f = detail::find_form(e.matrix, FormKind::Quadratic, -1);
  if (!f) throw std::logic_error("omega2minus_generator: no minus-type invariant form");
  e.form = *f;
  return detail::checked(std::move(e));
}

/// Element of Omega^+_{2n}(q) from Omega^-_{2m}(q) + Omega^-_{2(n-m)}(q), of order
/// (q^m+1)(q^{n-m}+1) / ((q^m+1, q^{n-m}+1)(2,q-1)).
inline SpecialElement xi_element(const GroupId& g, unsigned m) {
  if (g.family != Family::OmegaPlus) throw std::invalid_argument("xi_element: Omega-plus group required");
  const unsigned n = g.n;
  if (m < 1 || m >= n) throw std::invalid_argument("xi_element: need 1 <= m < n");
  FieldPtr F = field_of_order(g.q);
  const BigInt q(g.q);
  const BigInt a = ipow(q, m) + 1, b = ipow(q, n - m) + 1;
  const BigInt target = a * b / (gcd(a, b) * gcd2(q));
  auto A = detail::formed_field_block(F, 2 * m, a, FormKind::Quadratic, -1, 0);
  auto B = detail::formed_field_block(F, 2 * (n - m), b, FormKind::Quadratic, -1, 0);
  // Each full Singer cycle of SO^- lies outside Omega; (A^i, B^j) lies in Omega when i + j is even.
  for (unsigned i = 1; i <= 8; ++i)
    for (unsigned j = 1; j <= 8; ++j) {
      if (gcd2(q) == 2 && (i + j) % 2) continue;
      if (lcm(a / gcd(a, BigInt(i)), b / gcd(b, BigInt(j))) != target) continue;
      auto e = detail::assemble("xi", g, {detail::power(A, i), detail::power(B, j)}, target,
                                std::to_string(2 * m) + "+" + std::to_string(2 * (n - m)));
      e.rank = m;
      return detail::checked(std::move(e));
    }
  throw std::logic_error("xi_element: no block powers of the requested order");
}

}  // namespace cover2
