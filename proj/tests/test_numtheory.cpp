#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "cover2/numtheory.hpp"

using namespace cover2;

namespace {

GroupId G(Family f, unsigned n, std::uint64_t q) { return GroupId::make(f, n, q); }

bool small_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ord_r(q) by repeated multiplication.
unsigned ord(std::uint64_t q, const BigInt& r) {
  const BigInt Q = BigInt(q) % r;
  BigInt x = Q;
  for (unsigned k = 1; k < 10000; ++k) {
    if (x == 1) return k;
    x = x * Q % r;
  }
  return 0;
}

std::vector<BigInt> P(std::uint64_t q, unsigned t) { return zsigmondy_set(q, t); }
using V = std::vector<BigInt>;

}  // namespace

TEST(GroupOrder, KnownValues) {
  EXPECT_EQ(group_order(G(Family::Sp, 2, 2)), 720);
  EXPECT_EQ(group_order(G(Family::Sp, 3, 2)), 1451520);
  EXPECT_EQ(group_order(G(Family::GL, 1, 7)), 6);
  EXPECT_EQ(group_order(G(Family::SL, 2, 5)), 120);
  EXPECT_EQ(group_order(G(Family::GU, 3, 4)), 648);  // 2^3 (2+1)(4-1)(8+1)
  EXPECT_EQ(group_order(G(Family::SU, 3, 4)), 216);
  EXPECT_EQ(group_order(G(Family::GOPlus, 2, 2)), 72);
  EXPECT_EQ(group_order(G(Family::GOMinus, 2, 2)), 120);
  EXPECT_EQ(group_order(G(Family::OmegaOdd, 2, 3)), 25920);
  EXPECT_EQ(group_order(G(Family::OmegaMinus, 3, 2)), 25920);  // U4(2)
  EXPECT_EQ(group_order(G(Family::OmegaPlus, 3, 2)), 20160);   // A8
}

TEST(GroupOrder, SymplecticMatchesProductFormula) {
  for (std::uint64_t q : {2, 3, 4, 5, 7})
    for (unsigned n = 1; n <= 6; ++n) {
      BigInt o = ipow(BigInt(q), n * n);
      for (unsigned i = 1; i <= n; ++i) o *= ipow(BigInt(q), 2 * i) - 1;
      EXPECT_EQ(group_order(G(Family::Sp, n, q)), o);
    }
}

TEST(GroupId, Validation) {
  EXPECT_THROW(G(Family::Sp, 2, 6), std::invalid_argument);
  EXPECT_THROW(G(Family::SU, 3, 8), std::invalid_argument);
  EXPECT_THROW(G(Family::OmegaOdd, 3, 4), std::invalid_argument);
  EXPECT_EQ(G(Family::SU, 5, 9).q0, 3u);
  EXPECT_EQ(G(Family::OmegaOdd, 5, 3).dim(), 11u);
}

TEST(Zsigmondy, Examples) {
  EXPECT_TRUE(P(2, 6).empty());
  EXPECT_TRUE(P(3, 2).empty());
  EXPECT_EQ(P(2, 4), (V{5}));
  EXPECT_EQ(P(2, 8), (V{17}));
  EXPECT_EQ(P(2, 22), (V{683}));
  EXPECT_THROW(zsigmondy_set(2, 1), std::invalid_argument);
}

TEST(Zsigmondy, MembersHaveExactOrderAndAreOneModT) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13})
    for (unsigned t = 2; t <= 24; ++t)
      for (auto r : P(q, t)) {
        EXPECT_EQ(ord(q, r), t) << q << " " << t << " " << r;
        EXPECT_EQ(r % t, 1);
      }
}

TEST(Zsigmondy, SubfieldAndDisjointnessFacts) {
  for (std::uint64_t q0 = 2; q0 <= 8; ++q0) {
    if (!is_prime_power(q0)) continue;
    for (unsigned t = 2; t <= 9; ++t) {
      auto big = P(q0 * q0, t);
      for (auto r : P(q0, 2 * t)) EXPECT_TRUE(std::find(big.begin(), big.end(), r) != big.end());
      for (unsigned s = 2; s < t; ++s)
        for (auto r : P(q0, t)) {
          auto other = P(q0, s);
          EXPECT_TRUE(std::find(other.begin(), other.end(), r) == other.end());
        }
      for (auto r : P(q0, t))
        for (unsigned b = 1; b <= 20; ++b) {
          EXPECT_EQ((ipow(BigInt(q0), b) - 1) % r == 0, b % t == 0);
          if ((ipow(BigInt(q0), b) + 1) % r == 0) EXPECT_EQ((2 * b) % t, 0u);
        }
    }
  }
}

TEST(Ppd, Predicates) {
  EXPECT_TRUE(is_ppd_order(10, 2, 8, 51));
  EXPECT_FALSE(is_ppd_order(10, 2, 4, 51));
  EXPECT_FALSE(is_ppd_order(10, 2, 8, 3));
  auto v = is_strong_ppd_order(10, 2, 6, 45 * 7);
  EXPECT_FALSE(v.value);
  EXPECT_TRUE(v.vacuous);
  EXPECT_TRUE(is_strong_ppd_order(10, 2, 8, 51).value);
  EXPECT_TRUE(is_strong_ppd_order(22, 2, 22, (ipow(BigInt(2), 11) + 1) * 3).value);
  EXPECT_THROW(is_ppd_order(1, 2, 1, 1), std::invalid_argument);
}

TEST(Bertrand, Numbers) {
  EXPECT_EQ(bertrand_number(5), 3u);
  EXPECT_EQ(bertrand_number(6), 4u);
  EXPECT_EQ(bertrand_number(7), 5u);
  EXPECT_EQ(bertrand_number(8), 5u);
  EXPECT_EQ(bertrand_number(10), 7u);
  EXPECT_THROW(bertrand_number(4), std::invalid_argument);
  for (unsigned n = 5; n <= 200; ++n) {
    const unsigned t = bertrand_number(n);
    EXPECT_TRUE(2 * t > n && t <= n - 2) << n;
    if (n != 6) {
      EXPECT_TRUE(small_prime(t) && t % 2 == 1 && std::gcd(n, t) == 1) << n;
    }
    if (n >= 7) EXPECT_GE(t, 5u);
    if (n >= 8) {
      unsigned oracle = 0;
      for (unsigned s = n - 3; 2 * s > n; --s)
        if (small_prime(s)) {
          oracle = s;
          break;
        }
      EXPECT_EQ(t, oracle) << n;
    }
  }
}

TEST(Bertrand, PrimeGcdFact) {
  for (unsigned n = 7; n <= 40; ++n) {
    const unsigned t = bertrand_number(n);
    for (std::uint64_t q = 2; q <= 9; ++q) {
      if (!is_prime_power(q)) continue;
      const BigInt Q(q);
      const BigInt b = ipow(Q, n - t) + (n % 2 ? -1 : 1);
      EXPECT_EQ(gcd(ipow(Q, t) + 1, b), Q + 1) << "n=" << n << " q=" << q;
    }
  }
}

TEST(Orders, SingerTable) {
  auto s = singer_order(G(Family::Sp, 5, 2));
  EXPECT_EQ(s.general, 33);
  EXPECT_EQ(s.derived, 33);
  auto o = singer_order(G(Family::OMinus, 5, 3));
  EXPECT_EQ(o.general, 244);
  EXPECT_EQ(o.derived, 122);
  auto g = singer_order(G(Family::GL, 1, 5));
  EXPECT_EQ(g.general, 4);
  EXPECT_EQ(g.derived, 1);
  auto u = singer_order(G(Family::GU, 5, 4));
  EXPECT_EQ(u.general, 33);
  EXPECT_EQ(u.derived, 11);
  EXPECT_THROW(singer_order(G(Family::OPlus, 3, 2)), std::domain_error);
  EXPECT_THROW(singer_order(G(Family::GU, 4, 4)), std::domain_error);
}

TEST(Orders, BertrandTable) {
  auto a = bertrand_order(G(Family::Sp, 5, 2));
  EXPECT_EQ(a.order, 45);
  EXPECT_EQ(a.d, 10u);
  EXPECT_EQ(a.e, 6u);
  auto b = bertrand_order(G(Family::OmegaOdd, 5, 3));
  EXPECT_EQ(b.order, 140);
  EXPECT_EQ(b.d, 11u);
  EXPECT_EQ(b.e, 6u);
  EXPECT_EQ(bertrand_order(G(Family::Sp, 7, 2)).order, 165);
  const BigInt q0(3);
  EXPECT_EQ(bertrand_order(G(Family::SU, 7, 9)).order, (ipow(q0, 5) + 1) * (ipow(q0, 2) - 1) / (q0 + 1));
  EXPECT_THROW(bertrand_order(G(Family::SU, 6, 4)), std::invalid_argument);
  EXPECT_THROW(bertrand_order(G(Family::Sp, 4, 2)), std::invalid_argument);
  EXPECT_THROW(bertrand_order(G(Family::GL, 6, 2)), std::invalid_argument);
}

TEST(Subgroups, Orders) {
  const GroupId sp42 = G(Family::Sp, 2, 2), sp10 = G(Family::Sp, 5, 2);
  EXPECT_EQ(subgroup_order({SubgroupKind::OInSp, {-1}, sp42}).value, 120);
  EXPECT_EQ(subgroup_order({SubgroupKind::OInSp, {1}, sp42}).value, 72);
  EXPECT_EQ(subgroup_order({SubgroupKind::FieldExtSubgroup, {5}, sp10}).value, 163680);
  EXPECT_EQ(subgroup_order({SubgroupKind::ParabolicPm, {2}, sp42}).value, 48);
  EXPECT_EQ(subgroup_order({SubgroupKind::ParabolicPm, {1}, sp42}).value, 48);
  EXPECT_EQ(subgroup_order({SubgroupKind::OrthogonalSumSp, {1}, sp42}).value, 36);
  EXPECT_EQ(subgroup_order({SubgroupKind::UnitaryInSp, {}, sp10}).value, group_order(G(Family::GU, 5, 4)) * 2);
  EXPECT_THROW(subgroup_order({SubgroupKind::ParabolicPm, {}, sp42}), std::invalid_argument);
  EXPECT_THROW(subgroup_order({SubgroupKind::ParabolicPm, {3}, sp42}), std::invalid_argument);
}

TEST(Subgroups, OrbitStabilizerIdentity) {
  for (Family f : {Family::Sp, Family::GOPlus, Family::GOMinus, Family::GU, Family::GL})
    for (unsigned n = 2; n <= 6; ++n)
      for (std::uint64_t q : {4, 9, 16}) {
        const GroupId g = G(f, n, q);
        for (unsigned m = 1; m <= witt_index(g); ++m) {
          auto p = subgroup_order({SubgroupKind::ParabolicPm, {static_cast<long long>(m)}, g});
          EXPECT_EQ(p.value * isotropic_space_count(g, m), group_order(g)) << g.str() << " m=" << m;
        }
      }
}

TEST(Isotropic, Counts) {
  EXPECT_EQ(isotropic_space_count(G(Family::Sp, 2, 2), 1), 15);
  EXPECT_EQ(isotropic_space_count(G(Family::Sp, 2, 2), 2), 15);
  EXPECT_EQ(isotropic_space_count(G(Family::GOPlus, 2, 2), 1), 9);
  EXPECT_EQ(isotropic_space_count(G(Family::GOMinus, 2, 2), 1), 5);
  EXPECT_THROW(isotropic_space_count(G(Family::GOMinus, 2, 2), 2), std::invalid_argument);
}

TEST(GcdIdentities, Examples) {
  auto items = gcd_identity_audit(2, 4, 6);
  EXPECT_EQ(items[0].item, "i");
  EXPECT_TRUE(items[0].holds);
  EXPECT_EQ(items[0].lhs, "3");
  auto odd = gcd_identity_audit(3, 3, 2);
  EXPECT_EQ(odd[1].item, "ii");
  EXPECT_TRUE(odd[1].applicable);
  EXPECT_EQ(odd[1].lhs, "7 odd");
  auto even = gcd_identity_audit(3, 2, 3);
  EXPECT_FALSE(even[1].applicable);
  auto one = gcd_identity_audit(2, 1, 1);
  EXPECT_TRUE(one[0].holds);
  EXPECT_EQ(one[0].lhs, "1");
  EXPECT_EQ(one.size(), 7u);
  EXPECT_THROW(gcd_identity_audit(2, 0, 1), std::invalid_argument);
}

TEST(Factor, PollardAndPrimality) {
  const BigInt n = BigInt("1000000016000000063");  // 1000000007 * 1000000009
  auto f = factor(n);
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.begin()->first, 1000000007);
  EXPECT_TRUE(is_prime(BigInt("170141183460469231731687303715884105727")));  // 2^127 - 1
  EXPECT_FALSE(is_prime(BigInt(561)));
  EXPECT_EQ(multiplicative_order(BigInt(2), BigInt(683)), 22);
}
