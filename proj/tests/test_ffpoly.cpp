#include <gtest/gtest.h>

#include <random>

#include "cover2/ffpoly.hpp"

using namespace cover2;

namespace {

// Independent irreducibility oracle for small degree: no monic factor of degree <= deg/2,
// found by trial division against every monic polynomial of that degree.
bool irreducible_by_trial(const Poly& f) {
  const FieldPtr& F = f.field();
  const int n = f.degree();
  for (int d = 1; 2 * d <= n; ++d) {
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= F->q();
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<Elem> c(d + 1, 0);
      std::uint64_t x = code;
      for (int i = 0; i < d; ++i, x /= F->q()) c[i] = static_cast<Elem>(x % F->q());
      c[d] = 1;
      if ((f % Poly(F, c)).is_zero()) return false;
    }
  }
  return true;
}

Poly random_monic(const FieldPtr& F, int deg, std::mt19937& rng) {
  std::vector<Elem> c(deg + 1);
  for (int i = 0; i < deg; ++i) c[i] = static_cast<Elem>(rng() % F->q());
  c[deg] = 1;
  return Poly(F, c);
}

std::map<unsigned, unsigned> merged(std::map<unsigned, unsigned> a, const std::map<unsigned, unsigned>& b) {
  for (auto [d, m] : b) a[d] += m;
  return a;
}

}  // namespace

TEST(Field, Gf4ModulusIsTheOnlyIrreducibleQuadratic) {
  auto F = field_make(2, 2);
  EXPECT_EQ(F->q(), 4u);
  EXPECT_EQ(F->modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
}

TEST(Field, Gf9ModulusIsLexFirstRootlessQuadratic) {
  // Oracle: monic quadratics x^2 + b x + a compared low degree first, so a varies slowest.
  std::vector<std::uint32_t> lex;
  for (std::uint32_t a = 0; a < 3 && lex.empty(); ++a)
    for (std::uint32_t b = 0; b < 3 && lex.empty(); ++b) {
      bool root = false;
      for (std::uint32_t x = 0; x < 3; ++x) root = root || (x * x + b * x + a) % 3 == 0;
      if (!root) lex = {a, b, 1};
    }
  EXPECT_EQ(field_make(3, 2)->modulus(), lex);
}

TEST(Field, RepeatedConstructionIsIdentical) {
  EXPECT_EQ(field_make(2, 5)->modulus(), field_make(2, 5)->modulus());
  EXPECT_EQ(field_of_order(27)->modulus(), field_make(3, 3)->modulus());
}

TEST(Field, ModuliAreIrreducible) {
  for (auto [p, f] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {2, 4}, {3, 3}, {5, 2}, {2, 6}, {7, 2}}) {
    auto F = field_make(p, f);
    std::vector<Elem> c(F->modulus().begin(), F->modulus().end());
    EXPECT_TRUE(irreducible_by_trial(Poly(prime_field(p), c))) << p << "^" << f;
  }
}

TEST(Field, RejectsBadInput) {
  EXPECT_THROW(field_make(4, 1), std::invalid_argument);
  EXPECT_THROW(field_make(2, 0), std::invalid_argument);
  EXPECT_THROW(field_make(2, 40), std::invalid_argument);
}

TEST(Field, MultiplicativeGroupIsCyclicOfOrderQMinusOne) {
  for (std::uint64_t q : {2, 4, 8, 9, 16, 25, 27, 49, 64}) {
    auto F = field_of_order(q);
    for (Elem a = 1; a < F->q(); ++a) EXPECT_EQ(F->pow(a, std::int64_t(q - 1)), 1u);
    const Elem g = F->primitive();
    std::set<Elem> seen;
    Elem x = 1;
    for (std::uint64_t k = 0; k + 1 < q; ++k, x = F->mul(x, g)) seen.insert(x);
    EXPECT_EQ(seen.size(), q - 1) << q;
  }
}

TEST(Field, FieldAxiomsOnGf16) {
  auto F = field_of_order(16);
  for (Elem a = 0; a < 16; ++a)
    for (Elem b = 0; b < 16; ++b) {
      EXPECT_EQ(F->mul(a, b), F->mul(b, a));
      for (Elem c = 0; c < 16; c += 5) EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
      if (a) EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
    }
}

TEST(FactorDegrees, SmallExamples) {
  auto F2 = field_of_order(2);
  EXPECT_EQ(factor_degrees(Poly(F2, {1, 1, 1})), (std::map<unsigned, unsigned>{{2, 1}}));
  EXPECT_EQ(factor_degrees(Poly(F2, {1, 0, 1})), (std::map<unsigned, unsigned>{{1, 2}}));
  EXPECT_EQ(factor_degrees(Poly(F2, {1, 1, 1, 1, 1})), (std::map<unsigned, unsigned>{{4, 1}}));
  EXPECT_THROW(factor_degrees(Poly(F2)), std::invalid_argument);
}

TEST(FactorDegrees, ProductIsMultisetUnion) {
  std::mt19937 rng(7);
  for (std::uint64_t q : {2, 3, 4, 5, 9}) {
    auto F = field_of_order(q);
    for (int rep = 0; rep < 20; ++rep) {
      Poly a = random_monic(F, 1 + int(rng() % 6), rng), b = random_monic(F, 1 + int(rng() % 6), rng);
      EXPECT_EQ(factor_degrees(a * b), merged(factor_degrees(a), factor_degrees(b)));
    }
  }
}

TEST(FactorDegrees, AgreesWithTrialDivisionIrreducibility) {
  std::mt19937 rng(11);
  for (std::uint64_t q : {2, 3, 4}) {
    auto F = field_of_order(q);
    for (int rep = 0; rep < 40; ++rep) {
      Poly f = random_monic(F, 2 + int(rng() % 5), rng);
      const bool irr = factor_degrees(f) == std::map<unsigned, unsigned>{{unsigned(f.degree()), 1}};
      EXPECT_EQ(irr, irreducible_by_trial(f)) << f.serialize();
    }
  }
}

TEST(ElementOfOrder, ExamplesAndOrderExactness) {
  Extension e4(field_of_order(2), 2);
  auto a = element_of_order(e4, 3);
  EXPECT_EQ(a.minimal_polynomial.serialize(), "1,1,1");

  Extension e16(field_of_order(2), 4);
  auto b = element_of_order(e16, 5);
  EXPECT_EQ(b.minimal_polynomial.degree(), 4);
  // Direct power computation: b^5 = 1 and b != 1.
  EXPECT_TRUE(e16.pow(b.element, 5).is_one());
  EXPECT_FALSE(b.element.is_one());

  auto one = element_of_order(e16, 1);
  EXPECT_TRUE(one.element.is_one());
  EXPECT_EQ(one.minimal_polynomial.degree(), 1);

  EXPECT_THROW(element_of_order(e16, 7), std::invalid_argument);

  Extension e3(field_of_order(3), 4);
  for (BigInt m : {BigInt(80), BigInt(16), BigInt(10), BigInt(5)}) {
    auto c = element_of_order(e3, m);
    EXPECT_TRUE(e3.pow(c.element, m).is_one());
    for (const auto& r : prime_divisors(m)) EXPECT_FALSE(e3.pow(c.element, m / r).is_one()) << m;
  }
}

TEST(Poly, SerializeRoundTrip) {
  auto F = field_of_order(9);
  Poly p = Poly::parse(F, "3,0,8,1");
  EXPECT_EQ(p.serialize(), "3,0,8,1");
  EXPECT_THROW(Poly::parse(F, "9"), std::invalid_argument);
}
