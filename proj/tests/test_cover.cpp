#include <gtest/gtest.h>

#include <algorithm>

#include "cover2/cover.hpp"
#include "cover2/generators.hpp"

using namespace cover2;

namespace {

GroupId G(Family f, unsigned n, std::uint64_t q) { return GroupId::make(f, n, q); }

// Class sizes by conjugating every element by every group element.
std::vector<std::size_t> brute_class_sizes(const ElementStore& s) {
  std::vector<Matrix> all, inv;
  for (std::size_t i = 0; i < s.size(); ++i) {
    all.push_back(s.matrix(i));
    inv.push_back(all.back().inverse());
  }
  std::vector<bool> seen(s.size(), false);
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (seen[i]) continue;
    std::size_t n = 0;
    for (std::size_t g = 0; g < s.size(); ++g) {
      auto j = *s.find(inv[g] * all[i] * all[g]);
      if (!seen[j]) {
        seen[j] = true;
        ++n;
      }
    }
    sizes.push_back(n);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::vector<std::size_t> sorted_sizes(const ClassTable& ct) {
  std::vector<std::size_t> v;
  for (const auto& c : ct.classes) v.push_back(c.size);
  std::sort(v.begin(), v.end());
  return v;
}

struct Sp4 {
  std::shared_ptr<const ElementStore> sp, plus, minus;
  ClassTable ct;
  Sp4() {
    sp = std::make_shared<const ElementStore>(enumerate_group(G(Family::Sp, 2, 2)).store);
    plus = std::make_shared<const ElementStore>(enumerate_group(G(Family::GOPlus, 2, 2)).store);
    minus = std::make_shared<const ElementStore>(enumerate_group(G(Family::GOMinus, 2, 2)).store);
    ct = conjugacy_classes(sp);
  }
};

const Sp4& sp4() {
  static const Sp4 s;
  return s;
}

}  // namespace

TEST(Classes, Sp2OverGF2) {
  auto ct = conjugacy_classes(enumerate_group(G(Family::Sp, 1, 2)).store);
  ASSERT_EQ(ct.num_classes(), 3u);
  EXPECT_EQ(sorted_sizes(ct), (std::vector<std::size_t>{1, 2, 3}));
  std::set<BigInt> orders;
  for (const auto& c : ct.classes) orders.insert(c.order);
  EXPECT_EQ(orders, (std::set<BigInt>{1, 2, 3}));
}

TEST(Classes, TrivialGroup) {
  auto F = field_of_order(3);
  auto ct = conjugacy_classes(enumerate({Matrix::identity(F, 2)}));
  EXPECT_EQ(ct.num_classes(), 1u);
  EXPECT_EQ(ct.classes[0].size, 1u);
}

TEST(Classes, AgreeWithBruteForce) {
  for (auto g : {G(Family::Sp, 2, 2), G(Family::GL, 2, 3), G(Family::GOMinus, 2, 2), G(Family::SU, 3, 4)}) {
    auto s = enumerate_group(g).store;
    auto ct = conjugacy_classes(s);
    EXPECT_EQ(sorted_sizes(ct), brute_class_sizes(s)) << g.str();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto& cls = ct.classes[ct.class_of[i]];
      EXPECT_EQ(element_order(s.matrix(i)), cls.order);
    }
  }
  EXPECT_EQ(sp4().ct.num_classes(), 11u);
}

TEST(Cover, OrthogonalPairCoversSp4) {
  const auto& s = sp4();
  auto r = is_2_covering(s.ct, *s.plus, *s.minus, "O+", "O-");
  EXPECT_TRUE(r.covered);
  EXPECT_TRUE(r.warnings.empty());
  auto same = is_2_covering(s.ct, *s.plus, *s.plus);
  EXPECT_FALSE(same.covered);
  EXPECT_FALSE(same.uncovered.empty());
  // Elements of order 5 lie only in the minus-type subgroup.
  EXPECT_TRUE(std::any_of(same.uncovered.begin(), same.uncovered.end(), [](const auto& u) { return u.order == 5; }));
}

TEST(Cover, FindsExactlyTheOrthogonalPair) {
  const auto& s = sp4();
  auto pairs = find_2_coverings(s.ct, {s.plus.get(), s.minus.get(), s.plus.get()});
  ASSERT_EQ(pairs.size(), 2u);
  for (const auto& p : pairs) EXPECT_TRUE((p.first == 1) != (p.second == 1));
}

TEST(Cover, WholeGroupIsFlagged) {
  const auto& s = sp4();
  auto r = is_2_covering(s.ct, *s.sp, *s.plus, "G", "O+");
  EXPECT_TRUE(r.covered);
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_NE(r.warnings[0].find("not a proper subgroup"), std::string::npos);
}

TEST(Dye, FormCriterionAgreesWithSubgroupFusion) {
  const auto& s = sp4();
  auto F = s.sp->field();
  auto d = dye_check_by_forms(s.ct, standard_alternating(F, 2).gram);
  EXPECT_TRUE(d.cover.covered);
  auto fp = class_fusion(*s.plus, s.ct), fm = class_fusion(*s.minus, s.ct);
  ASSERT_EQ(d.types.size(), s.ct.num_classes());
  for (std::size_t c = 0; c < d.types.size(); ++c) {
    EXPECT_EQ(d.types[c].plus, fp[c]) << c;
    EXPECT_EQ(d.types[c].minus, fm[c]) << c;
  }
  EXPECT_THROW(dye_check_by_forms(conjugacy_classes(enumerate_group(G(Family::Sp, 1, 3)).store),
                                  standard_alternating(field_of_order(3), 1).gram),
               std::invalid_argument);
}
