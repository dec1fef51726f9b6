#include <gtest/gtest.h>

#include "cover2/constructor.hpp"

using namespace cover2;

namespace {

GroupId G(Family f, unsigned n, std::uint64_t q) { return GroupId::make(f, n, q); }

BigInt brute_order(const Matrix& m) {
  Matrix x = m;
  for (std::uint64_t k = 1; k < 2'000'000; ++k) {
    if (x.is_identity()) return k;
    x = x * m;
  }
  return 0;
}

std::size_t eigenspace_dim(const Matrix& m, Elem a) {
  return m.dim() - (m - Matrix::scalar(m.field(), m.dim(), a)).rank();
}

// M^T G M^(twist) == G written out entrywise, without the library predicate.
bool gram_preserved(const Matrix& m, const FormSpec& f) {
  Matrix right = f.twist ? m.entrywise_pow(f.twist) : m;
  return m.transpose() * f.gram * right == f.gram;
}

void expect_certified(const SpecialElement& e, const BigInt& order, const std::string& action) {
  EXPECT_EQ(e.declared_order, order) << e.label;
  EXPECT_EQ(e.declared_action.str(), action) << e.label;
  auto c = certify(e);
  EXPECT_TRUE(c.ok()) << e.label << " " << e.group.str();
  if (order < 2'000'000) EXPECT_EQ(brute_order(e.matrix), order);
  ASSERT_TRUE(e.form.has_value());
  EXPECT_TRUE(gram_preserved(e.matrix, *e.form));
}

}  // namespace

TEST(Singer, SymplecticIsIrreducible) {
  auto e = singer_cycle(G(Family::Sp, 5, 2));
  expect_certified(e, 33, "10");
  EXPECT_EQ(eigenspace_dim(e.matrix, 1), 0u);
}

TEST(Singer, OrthogonalMinusAndUnitary) {
  expect_certified(singer_cycle(G(Family::GOMinus, 3, 3)), 28, "6");
  expect_certified(singer_cycle(G(Family::OmegaMinus, 3, 3)), 14, "6");
  expect_certified(singer_cycle(G(Family::GU, 3, 4)), 9, "3");
  EXPECT_THROW(singer_cycle(G(Family::GOPlus, 2, 3)), std::domain_error);
}

TEST(LowSinger, Examples) {
  auto o = low_singer(G(Family::OmegaOdd, 3, 3), 6);
  expect_certified(o, 14, "6+1");
  EXPECT_EQ(eigenspace_dim(o.matrix, 1), 1u);
  auto u = low_singer(G(Family::SU, 4, 4), 3);
  expect_certified(u, 9, "3+1");
  EXPECT_EQ(u.matrix.determinant(), 1u);
  auto s = low_singer(G(Family::Sp, 4, 3), 4);
  expect_certified(s, 10, "4+1+1+1+1");
  EXPECT_EQ(eigenspace_dim(s.matrix, 1), 4u);
  EXPECT_THROW(low_singer(G(Family::Sp, 4, 3), 3), std::invalid_argument);
  EXPECT_THROW(low_singer(G(Family::GU, 4, 4), 2), std::invalid_argument);
}

TEST(LowSinger, SpecialLinearHasDeterminantOne) {
  auto e = low_singer(G(Family::SL, 4, 5), 3);
  EXPECT_EQ(e.declared_order, 124);
  EXPECT_EQ(e.matrix.determinant(), 1u);
  EXPECT_TRUE(certify(e).ok());
}

TEST(LinearSinger, OnTotallySingularPair) {
  auto e = linear_singer(G(Family::Sp, 3, 2));
  expect_certified(e, 7, "3+3");
}

TEST(Bertrand, SymplecticExamples) {
  expect_certified(bertrand_element(G(Family::Sp, 5, 3)), 140, "6+4");
  expect_certified(bertrand_element(G(Family::Sp, 5, 2)), 45, "6+4");
  auto alt = bertrand_element(G(Family::Sp, 5, 2), 4u);
  expect_certified(alt, 51, "8+2");
  EXPECT_TRUE(is_ppd_order(10, 2, 8, alt.declared_order));
}

TEST(Bertrand, OmegaOdd) {
  auto e = bertrand_element(G(Family::OmegaOdd, 5, 3));
  expect_certified(e, 140, "6+4+1");
}

TEST(Omega2Minus, GeneratorOrder) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    auto e = omega2minus_generator(q);
    const BigInt want = (BigInt(q) + 1) / (q % 2 ? 2 : 1);
    EXPECT_EQ(e.declared_order, want) << q;
    EXPECT_EQ(brute_order(e.matrix), want) << q;
    EXPECT_TRUE(certify(e).ok());
  }
}

TEST(Xi, OrderAndOmegaMembership) {
  for (std::uint64_t q : {2, 3}) {
    auto e = xi_element(G(Family::OmegaPlus, 5, q), 2);
    const BigInt Q(q), a = Q * Q + 1, b = Q * Q * Q + 1;
    const BigInt want = a * b / (gcd(a, b) * (q % 2 ? 2 : 1));
    EXPECT_EQ(e.declared_order, want);
    auto c = certify(e);
    EXPECT_TRUE(c.ok());
    EXPECT_EQ(c.form_type, 1);
    EXPECT_EQ(e.declared_action.str(), "6+4");
  }
  EXPECT_THROW(xi_element(G(Family::OmegaMinus, 4, 3), 1), std::invalid_argument);
}
