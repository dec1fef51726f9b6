#include <gtest/gtest.h>

#include "cover2/generators.hpp"
#include "cover2/torus.hpp"

using namespace cover2;

namespace {

GroupId G(Family f, unsigned n, std::uint64_t q) { return GroupId::make(f, n, q); }

// Orders of p-regular elements, read off an enumerated group.
std::set<BigInt> p_regular_orders(const GroupId& g) {
  auto eg = enumerate_group(g);
  std::set<BigInt> out;
  for (std::size_t i = 0; i < eg.store.size(); ++i) {
    BigInt o = element_order(eg.store.matrix(i));
    if (o % g.p() != 0) out.insert(o);
  }
  return out;
}

unsigned partitions(unsigned n, unsigned max) {
  if (n == 0) return 1;
  unsigned c = 0;
  for (unsigned k = std::min(n, max); k >= 1; --k) c += partitions(n - k, k);
  return c;
}

}  // namespace

TEST(Spectrum, SmallExamples) {
  EXPECT_EQ(semisimple_order_spectrum(G(Family::Sp, 2, 2)), (std::set<BigInt>{1, 3, 5}));
  EXPECT_EQ(semisimple_order_spectrum(G(Family::GU, 1, 4)), (std::set<BigInt>{1, 3}));
}

TEST(Spectrum, MatchesEnumeratedGroups) {
  for (auto g : {G(Family::Sp, 2, 2), G(Family::Sp, 1, 3), G(Family::GOMinus, 2, 2), G(Family::GOPlus, 2, 2),
                 G(Family::GL, 2, 3), G(Family::SL, 3, 2), G(Family::GU, 2, 9), G(Family::SU, 3, 4)})
    EXPECT_EQ(semisimple_order_spectrum(g), p_regular_orders(g)) << g.str();
}

TEST(Catalog, LinearTorusClassesArePartitions) {
  for (unsigned n = 1; n <= 8; ++n) EXPECT_EQ(torus_catalog(G(Family::GL, n, 3))->entries.size(), partitions(n, n));
}

TEST(Catalog, TorusOrdersDivideGroupOrder) {
  for (auto g : {G(Family::Sp, 5, 3), G(Family::GOMinus, 4, 2), G(Family::OmegaOdd, 4, 5), G(Family::SU, 5, 4),
                 G(Family::OmegaPlus, 4, 3)}) {
    auto cat = torus_catalog(g);
    for (const auto& e : cat->entries) {
      EXPECT_EQ(group_order(g) % e.order, 0) << g.str();
      EXPECT_EQ(e.order % e.exponent, 0);
    }
  }
}

TEST(Semisimple, OrderFacts) {
  EXPECT_TRUE(has_semisimple_of_order(G(Family::Sp, 5, 2), 35).exists);
  EXPECT_TRUE(has_semisimple_of_order(G(Family::GOMinus, 5, 2), 35).exists);
  EXPECT_FALSE(has_semisimple_of_order(G(Family::GOPlus, 5, 2), 35).exists);
  EXPECT_TRUE(has_semisimple_of_order(G(Family::GOPlus, 5, 2), 1).exists);
  EXPECT_THROW(has_semisimple_of_order(G(Family::Sp, 5, 2), 6), std::domain_error);
}

TEST(Semisimple, ProductOfGroups) {
  // Order 35 needs 5 from the first factor and 7 from the second.
  auto w = has_semisimple_of_order({G(Family::Sp, 2, 2), G(Family::Sp, 3, 2)}, 35);
  EXPECT_TRUE(w.exists);
  EXPECT_EQ(w.partitions.size(), 2u);
  EXPECT_FALSE(has_semisimple_of_order({G(Family::Sp, 1, 2), G(Family::Sp, 1, 2)}, 5).exists);
}
