#include <gtest/gtest.h>

#include <random>

#include "cover2/generators.hpp"

using namespace cover2;

namespace {

Matrix random_matrix(const FieldPtr& F, std::size_t d, std::mt19937& rng) {
  Matrix m(F, d);
  std::uniform_int_distribution<std::uint32_t> u(0, F->q() - 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = u(rng);
  return m;
}

Matrix random_invertible(const FieldPtr& F, std::size_t d, std::mt19937& rng) {
  for (;;) {
    Matrix m = random_matrix(F, d, rng);
    if (m.invertible()) return m;
  }
}

std::uint64_t brute_order(const Matrix& m) {
  Matrix x = m;
  for (std::uint64_t k = 1; k < 1'000'000; ++k) {
    if (x.is_identity()) return k;
    x = x * m;
  }
  return 0;
}

}  // namespace

TEST(Matrix, DeterminantAndInverse) {
  std::mt19937 rng(7);
  for (std::uint64_t q : {2, 7, 9}) {
    auto F = field_of_order(q);
    for (int it = 0; it < 20; ++it) {
      Matrix a = random_invertible(F, 4, rng), b = random_matrix(F, 4, rng);
      EXPECT_EQ((a * b).determinant(), F->mul(a.determinant(), b.determinant()));
      EXPECT_TRUE((a * a.inverse()).is_identity());
    }
  }
}

TEST(CharPoly, AgreesWithDeterminantAtEveryPoint) {
  std::mt19937 rng(11);
  for (std::uint64_t q : {7, 9, 11}) {
    auto F = field_of_order(q);
    for (int it = 0; it < 15; ++it) {
      const std::size_t d = 2 + it % 4;
      Matrix m = random_matrix(F, d, rng);
      Poly cp = char_poly(m);
      ASSERT_EQ(cp.degree(), static_cast<int>(d));
      for (Elem a = 0; a < F->q(); ++a)
        EXPECT_EQ(cp.eval(a), (Matrix::scalar(F, d, a) - m).determinant());
    }
  }
}

TEST(CharPoly, CompanionRoundTrip) {
  auto F = field_of_order(5);
  Poly f = Poly::parse(F, "2,0,3,1,1");
  EXPECT_EQ(char_poly(Matrix::companion(f)).serialize(), f.serialize());
}

TEST(ActionType, BlockSumsOfIrreducibles) {
  auto F = field_of_order(2);
  Matrix c3 = Matrix::companion(Poly::parse(F, "1,1,0,1"));
  Matrix c2 = Matrix::companion(Poly::parse(F, "1,1,1"));
  auto t = action_type(Matrix::block_diag({c3, c2}));
  EXPECT_EQ(t.str(), "3+2");
  EXPECT_TRUE(t.squarefree);
  EXPECT_EQ(t.dimension(), 5u);
  auto u = action_type(Matrix::identity(F, 3));
  EXPECT_EQ(u.str(), "1+1+1");
  EXPECT_FALSE(u.squarefree);
}

TEST(ElementOrder, MatchesPowerLoop) {
  std::mt19937 rng(3);
  for (std::uint64_t q : {2, 3, 4, 5, 8}) {
    auto F = field_of_order(q);
    for (int it = 0; it < 25; ++it) {
      Matrix m = random_invertible(F, 2 + it % 3, rng);
      EXPECT_EQ(element_order(m), brute_order(m));
    }
  }
  EXPECT_THROW(element_order(Matrix(field_of_order(3), 2)), std::domain_error);
}

TEST(Forms, StandardGeneratorsPreserveTheirForm) {
  for (auto g : {GroupId::make(Family::Sp, 3, 3), GroupId::make(Family::GOPlus, 3, 4),
                 GroupId::make(Family::GOMinus, 2, 8), GroupId::make(Family::GU, 3, 9)}) {
    auto gs = standard_generators(g);
    ASSERT_TRUE(gs.has_form);
    for (const auto& m : gs.generators) EXPECT_TRUE(preserves_form(m, gs.form)) << g.str();
  }
  auto F = field_of_order(3);
  Matrix skew = Matrix::identity(F, 4);
  skew(0, 0) = 2;
  EXPECT_FALSE(preserves_form(skew, standard_alternating(F, 2)));
}

TEST(Forms, ArfInvariantOfStandardForms) {
  for (std::uint64_t q : {2, 4, 8})
    for (std::size_t n = 1; n <= 4; ++n) {
      auto F = field_of_order(q);
      EXPECT_EQ(arf_invariant(standard_quadratic(F, n, 1)), 1);
      EXPECT_EQ(arf_invariant(standard_quadratic(F, n, -1)), -1);
    }
  EXPECT_THROW(arf_invariant(standard_alternating(field_of_order(2), 2)), std::invalid_argument);
  EXPECT_THROW(arf_invariant(standard_quadratic(field_of_order(3), 2, 1)), std::invalid_argument);
}

TEST(Forms, OrthogonalTypeOddCharacteristic) {
  for (std::uint64_t q : {3, 5, 9})
    for (std::size_t n = 1; n <= 3; ++n) {
      auto F = field_of_order(q);
      EXPECT_EQ(orthogonal_type(standard_quadratic(F, n, 1)), 1) << q << " " << n;
      EXPECT_EQ(orthogonal_type(standard_quadratic(F, n, -1)), -1) << q << " " << n;
    }
}

TEST(Forms, InvariantFormSpaceOfIdentity) {
  auto F = field_of_order(3);
  EXPECT_EQ(invariant_forms(Matrix::identity(F, 4), FormKind::Alternating).size(), 6u);
  EXPECT_EQ(invariant_forms(Matrix::identity(F, 4), FormKind::Symmetric).size(), 10u);
}

TEST(Enumerate, SmallGroupOrders) {
  EXPECT_EQ(enumerate_group(GroupId::make(Family::Sp, 1, 2)).store.size(), 6u);
  EXPECT_EQ(enumerate_group(GroupId::make(Family::Sp, 2, 2)).store.size(), 720u);
  EXPECT_EQ(enumerate_group(GroupId::make(Family::GOPlus, 2, 2)).store.size(), 72u);
  EXPECT_EQ(enumerate_group(GroupId::make(Family::GOMinus, 2, 2)).store.size(), 120u);
  EXPECT_EQ(enumerate_group(GroupId::make(Family::SL, 2, 7)).store.size(), 336u);
  EXPECT_EQ(enumerate_group(GroupId::make(Family::GU, 2, 9)).store.size(), 96u);
}

TEST(Enumerate, ElementsPreserveFormAndSatisfyLagrange) {
  auto eg = enumerate_group(GroupId::make(Family::GOMinus, 2, 2));
  const BigInt order(eg.store.size());
  for (std::size_t i = 0; i < eg.store.size(); ++i) {
    Matrix m = eg.store.matrix(i);
    EXPECT_TRUE(preserves_form(m, eg.gens.form));
    EXPECT_EQ(order % element_order(m), 0);
  }
}

TEST(Enumerate, CapIsEnforced) {
  EXPECT_THROW(enumerate_group(GroupId::make(Family::Sp, 2, 2), 100), BudgetExceeded);
  auto F = field_of_order(2);
  auto s = enumerate({Matrix::companion(Poly::parse(F, "1,1,0,0,1"))}, 4);
  EXPECT_FALSE(s.complete());
}
