#pragma once

#include <vector>

#include "forms.hpp"
#include "numtheory.hpp"
#include "store.hpp"

namespace cover2 {

struct GeneratorSet {
  std::vector<Matrix> generators;
  FormSpec form;  // Alternating for SL/GL is a placeholder with an empty Gram matrix
  bool has_form = true;
};

namespace detail {

/// Field elements whose polynomial-basis coordinates are a single 1: a GF(p)-basis.
inline std::vector<Elem> additive_basis(const Field& F) {
  std::vector<Elem> out;
  for (std::uint32_t k = 0; k < F.f(); ++k) {
    std::vector<std::uint32_t> dig(F.f(), 0);
    dig[k] = 1;
    out.push_back(F.from_digits(dig));
  }
  return out;
}

/// v w^T scaled by c, added to the identity.
inline Matrix rank_one_update(const FieldPtr& F, const std::vector<Elem>& v, const std::vector<Elem>& w, Elem c) {
  const std::size_t d = v.size();
  Matrix m = Matrix::identity(F, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = F->add(m(i, j), F->mul(c, F->mul(v[i], w[j])));
  return m;
}

/// Vectors with one or two nonzero coordinates drawn from `scalars` (first nonzero coordinate 1).
inline std::vector<std::vector<Elem>> small_vectors(std::size_t d, const std::vector<Elem>& scalars) {
  std::vector<std::vector<Elem>> out;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Elem> v(d, 0);
    v[i] = 1;
    out.push_back(v);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (Elem c : scalars) {
        std::vector<Elem> v(d, 0);
        v[i] = 1;
        v[j] = c;
        out.push_back(v);
      }
  return out;
}

inline std::vector<Elem> gram_times(const Matrix& g, const std::vector<Elem>& v) { return apply(g, v); }

inline std::vector<Elem> nonzero_elements(const Field& F) {
  std::vector<Elem> out;
  for (Elem a = 1; a < F.q(); ++a) out.push_back(a);
  return out;
}

}  // namespace detail

/// Candidate generating sets; every returned matrix preserves the returned form.
///   Sp: symplectic transvections x -> x + c B(x,v) v.
///   GO^eps (q even): Siegel transformations, then reflections in nonsingular vectors.
///   SL/GL: elementary transvections (plus a diagonal generator for GL).
///   SU/GU: unitary transvections in isotropic vectors (plus a diagonal generator for GU).
inline GeneratorSet standard_generators(const GroupId& g) {
  const FieldPtr F = field_of_order(g.q);
  const Field& Fr = *F;
  const auto basis = detail::additive_basis(Fr);
  const auto all = detail::nonzero_elements(Fr);
  GeneratorSet out;
  const std::size_t d = g.dim();

  switch (g.family) {
    case Family::Sp: {
      out.form = standard_alternating(F, g.n);
      for (const auto& v : detail::small_vectors(d, all)) {
        auto jv = detail::gram_times(out.form.gram, v);
        for (Elem c : basis) out.generators.push_back(detail::rank_one_update(F, v, jv, c));
      }
      break;
    }
    case Family::GOPlus: case Family::GOMinus: case Family::OPlus: case Family::OMinus: {
      if (g.q % 2) throw std::invalid_argument("standard_generators: orthogonal generators need even q");
      out.form = standard_quadratic(F, g.n, witt_sign(g.family));
      const auto vecs = detail::small_vectors(d, all);
      const FormSpec& Q = out.form;
      for (const auto& u : vecs) {
        if (Q.quadratic(u) != 0) continue;
        for (const auto& w : vecs) {
          if (w == u || Q.bilinear(u, w) != 0) continue;
          Matrix uw(F, d, 2);
          for (std::size_t i = 0; i < d; ++i) uw(i, 0) = u[i], uw(i, 1) = w[i];
          if (uw.rank() < 2) continue;
          // x -> x + B(x,w)u + B(x,u)w + Q(w)B(x,u)u
          auto gw = detail::gram_times(Q.gram, w), gu = detail::gram_times(Q.gram, u);
          Matrix s = detail::rank_one_update(F, u, gw, 1);
          s = s + detail::rank_one_update(F, w, gu, 1) - Matrix::identity(F, d);
          Elem qw = Q.quadratic(w);
          if (qw) s = s + detail::rank_one_update(F, u, gu, qw) - Matrix::identity(F, d);
          out.generators.push_back(s);
        }
      }
      for (const auto& v : vecs) {
        Elem qv = Q.quadratic(v);
        if (!qv) continue;
        out.generators.push_back(detail::rank_one_update(F, v, detail::gram_times(Q.gram, v), Fr.inv(qv)));
      }
      break;
    }
    case Family::SL: case Family::GL: {
      out.has_form = false;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          if (i == j) continue;
          for (Elem c : basis) {
            Matrix m = Matrix::identity(F, d);
            m(i, j) = c;
            out.generators.push_back(m);
          }
        }
      if (g.family == Family::GL) {
        Matrix m = Matrix::identity(F, d);
        m(0, 0) = Fr.primitive();
        out.generators.push_back(m);
      }
      break;
    }
    case Family::SU: case Family::GU: {
      out.form = standard_hermitian(F, d);
      const auto q0 = static_cast<std::int64_t>(g.q0);
      const Elem minus_one = Fr.neg(1);
      std::vector<Elem> lambdas, trace_zero;
      for (Elem a = 1; a < Fr.q(); ++a) {
        if (Fr.pow(a, q0 + 1) == minus_one) lambdas.push_back(a);
        if (Fr.add(a, Fr.pow(a, q0)) == 0) trace_zero.push_back(a);
      }
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
          for (Elem lam : lambdas) {
            std::vector<Elem> v(d, 0), vbar(d, 0);
            v[i] = 1;
            v[j] = lam;
            for (std::size_t k = 0; k < d; ++k) vbar[k] = Fr.pow(v[k], q0);
            for (Elem a : trace_zero) out.generators.push_back(detail::rank_one_update(F, v, vbar, a));
          }
      // SU_2 blocks [[a, b], [-b^s, a^s]] on coordinate pairs.
      for (std::size_t i = 0; i + 1 < d; ++i)
        for (Elem a = 0; a < Fr.q(); ++a)
          for (Elem b = 0; b < Fr.q(); ++b) {
            if (Fr.add(Fr.pow(a, q0 + 1), Fr.pow(b, q0 + 1)) != 1) continue;
            Matrix m = Matrix::identity(F, d);
            m(i, i) = a;
            m(i, i + 1) = b;
            m(i + 1, i) = Fr.neg(Fr.pow(b, q0));
            m(i + 1, i + 1) = Fr.pow(a, q0);
            out.generators.push_back(m);
          }
      // Norm-one diagonal elements of determinant 1 and a signed cyclic shift.
      const Elem mu = Fr.exp(g.q0 - 1);
      for (std::size_t i = 0; i + 1 < d; ++i) {
        Matrix m = Matrix::identity(F, d);
        m(i, i) = mu;
        m(i + 1, i + 1) = Fr.inv(mu);
        out.generators.push_back(m);
      }
      if (d > 1) {
        Matrix m(F, d);
        for (std::size_t i = 0; i < d; ++i) m((i + 1) % d, i) = 1;
        if (d % 2 == 0) m(0, d - 1) = minus_one;
        out.generators.push_back(m);
      }
      // Quotients of quasi-reflections x -> x + (mu - 1) h(x,v)/h(v,v) v (determinant mu).
      auto quasi = [&](const std::vector<Elem>& v) -> std::optional<Matrix> {
        std::vector<Elem> vbar(d);
        for (std::size_t k = 0; k < d; ++k) vbar[k] = Fr.pow(v[k], q0);
        Elem hv = 0;
        for (std::size_t k = 0; k < d; ++k) hv = Fr.add(hv, Fr.mul(v[k], vbar[k]));
        if (!hv) return std::nullopt;
        return detail::rank_one_update(F, v, vbar, Fr.div(Fr.sub(mu, 1), hv));
      };
      std::vector<Elem> e0(d, 0);
      e0[0] = 1;
      const Matrix base_inv = quasi(e0)->inverse();
      for (const auto& v : detail::small_vectors(d, all))
        if (auto r = quasi(v)) out.generators.push_back(*r * base_inv);
      if (g.family == Family::GU) {
        Matrix m = Matrix::identity(F, d);
        m(0, 0) = mu;  // norm-one element of maximal order q0 + 1
        out.generators.push_back(m);
      }
      break;
    }
    default: throw std::invalid_argument("standard_generators: unsupported family " + to_string(g.family));
  }
  for (const auto& m : out.generators)
    if (out.has_form && !preserves_form(m, out.form))
      throw std::logic_error("standard_generators: generator does not preserve the form");
  return out;
}

struct EnumeratedGroup {
  GroupId id;
  GeneratorSet gens;  // the greedily selected subset
  ElementStore store;
};

/// Greedy subset of the standard candidates (a candidate is kept only when it is not already
/// in the group generated so far), closed and certified against group_order.
inline EnumeratedGroup enumerate_group(const GroupId& g, std::size_t cap = kDefaultEnumerationCap) {
  GeneratorSet cand = standard_generators(g);
  const BigInt target = group_order(g);
  if (BigInt(cap) < target) throw BudgetExceeded("enumerate_group: group order exceeds the enumeration cap");
  ElementStore s(cand.generators.at(0).field(), g.dim());
  s.insert(Matrix::identity(s.field(), g.dim()));
  s.set_complete(true);
  std::vector<Matrix> chosen;
  for (const auto& c : cand.generators) {
    if (BigInt(s.size()) == target) break;
    if (s.contains(c)) continue;
    extend(s, c, cap);
    if (!s.complete()) throw BudgetExceeded("enumerate_group: cap exceeded");
    chosen.push_back(c);
  }
  if (BigInt(s.size()) != target && is_unitary(g.family)) {
    // Small unitary groups such as SU_3(2) escape the candidates above; walk orthonormal
    // frames until an element outside the current subgroup turns up.
    const Field& Fr = *s.field();
    const std::size_t d = g.dim();
    const auto q0 = static_cast<std::int64_t>(g.q0);
    auto herm = [&](const std::vector<Elem>& v, const std::vector<Elem>& w) {
      Elem r = 0;
      for (std::size_t k = 0; k < d; ++k) r = Fr.add(r, Fr.mul(v[k], Fr.pow(w[k], q0)));
      return r;
    };
    std::vector<std::vector<Elem>> unit;
    std::vector<Elem> v(d, 0);
    const std::uint64_t total = to_u64(ipow(BigInt(Fr.q()), static_cast<unsigned>(d)));
    for (std::uint64_t code = 1; code < total; ++code) {
      std::uint64_t c = code;
      for (std::size_t k = 0; k < d; ++k, c /= Fr.q()) v[k] = static_cast<Elem>(c % Fr.q());
      if (herm(v, v) == 1) unit.push_back(v);
    }
    std::vector<std::size_t> frame;
    auto search = [&](auto&& self) -> void {
      if (frame.size() == d) {
        Matrix m(s.field(), d);
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t i = 0; i < d; ++i) m(i, j) = unit[frame[j]][i];
        if (g.family == Family::SU && m.determinant() != 1) return;
        if (s.contains(m)) return;
        extend(s, m, cap);
        if (!s.complete()) throw BudgetExceeded("enumerate_group: cap exceeded");
        chosen.push_back(m);
        return;
      }
      for (std::size_t u = 0; u < unit.size() && BigInt(s.size()) != target; ++u) {
        bool ok = true;
        for (std::size_t j : frame) ok = ok && herm(unit[u], unit[j]) == 0;
        if (!ok) continue;
        frame.push_back(u);
        self(self);
        frame.pop_back();
      }
    };
    search(search);
  }
  if (BigInt(s.size()) != target)
    throw std::logic_error("enumerate_group: generated " + std::to_string(s.size()) + " elements, expected " + to_string(target));
  cand.generators = chosen;
  return {g, std::move(cand), std::move(s)};
}

}  // namespace cover2
