#include "flasque.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace flasque;

namespace {

using ElementSet = std::vector<size_t>;

// Every subgroup, as a join of cyclic subgroups, closed until nothing new appears.
std::set<ElementSet> brute_force_subgroups(const FiniteGroup& g) {
  std::set<ElementSet> all;
  for (size_t x = 0; x < g.order(); ++x) all.insert(g.closure({x}));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<ElementSet> cur(all.begin(), all.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        ElementSet u = cur[i];
        u.insert(u.end(), cur[j].begin(), cur[j].end());
        if (all.insert(g.closure(u)).second) grew = true;
      }
  }
  return all;
}

ElementSet conjugacy_key(const FiniteGroup& g, const ElementSet& h) {
  ElementSet best;
  for (size_t x = 0; x < g.order(); ++x) {
    ElementSet c;
    for (size_t y : h) c.push_back(g.conjugate(x, y));
    std::sort(c.begin(), c.end());
    if (best.empty() || c < best) best = c;
  }
  return best;
}

bool closed_with_inverses(const FiniteGroup& g, const Subgroup& h) {
  for (size_t a : h.elements()) {
    if (!h.contains(g.inverse(a))) return false;
    for (size_t b : h.elements())
      if (!h.contains(g.mul(a, b))) return false;
  }
  return h.contains(g.identity());
}

}  // namespace

TEST(Groups, FromGenerators) {
  auto c2 = group_from_generators(std::vector<Permutation>{parse_cycles("(1 2)", 2)}, 2);
  EXPECT_EQ(c2->order(), 2u);
  auto triv = group_from_generators(std::vector<Permutation>{}, 3);
  EXPECT_EQ(triv->order(), 1u);
  auto s3 = group_from_generators(std::vector<Permutation>{parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)}, 3);
  EXPECT_EQ(s3->order(), 6u);
  EXPECT_FALSE(s3->is_abelian());
}

TEST(Groups, MatrixGenerators) {
  auto g = group_from_generators(std::vector<IntMatrix>{IntMatrix{{0, -1}, {1, 0}}});
  EXPECT_EQ(g->order(), 4u);
  EXPECT_THROW(group_from_generators(std::vector<IntMatrix>{IntMatrix{{2, 0}, {0, 1}}}), std::invalid_argument);
  // Infinite order hits the cap instead of looping.
  EXPECT_THROW(group_from_generators(std::vector<IntMatrix>{IntMatrix{{1, 1}, {0, 1}}}), std::invalid_argument);
}

TEST(Groups, OrderCapIsEnforced) {
  std::vector<Permutation> s5{parse_cycles("(1 2)", 5), parse_cycles("(1 2 3 4 5)", 5)};
  EXPECT_THROW(group_from_generators(s5, 5), std::invalid_argument);
  EXPECT_EQ(group_from_generators(s5, 5, 120)->order(), 120u);
}

TEST(Groups, CycleNotation) {
  EXPECT_EQ(parse_cycles("(1 3)(2 4)", 4), (Permutation{2, 3, 0, 1}));
  EXPECT_EQ(cycle_string(parse_cycles("(1 2 3)", 3)), "(1 2 3)");
  EXPECT_THROW(parse_cycles("(1 5)", 4), std::invalid_argument);
  EXPECT_THROW(parse_cycles("(1 2", 4), std::invalid_argument);
  EXPECT_THROW(parse_cycles("(1 1)", 4), std::invalid_argument);
}

TEST(Subgroups, KnownValues) {
  EXPECT_EQ(subgroup_reps(*FiniteGroup::trivial()).size(), 1u);
  auto v4 = named_group("V4");
  EXPECT_EQ(subgroup_reps(*v4).size(), 5u);
  EXPECT_EQ(v4->all_subgroups().size(), 5u);
  auto s3 = named_group("S3");
  auto reps = subgroup_reps(*s3);
  ASSERT_EQ(reps.size(), 4u);
  std::multiset<size_t> orders;
  for (const auto& h : reps) orders.insert(h.order());
  EXPECT_EQ(orders, (std::multiset<size_t>{1, 2, 3, 6}));
}

TEST(Subgroups, CyclicRepresentatives) {
  auto c4 = named_group("C4");
  auto cyc = cyclic_subgroup_reps(*c4);
  std::multiset<size_t> orders;
  for (const auto& h : cyc) orders.insert(h.order());
  EXPECT_EQ(orders, (std::multiset<size_t>{1, 2, 4}));
  EXPECT_EQ(cyclic_subgroup_reps(*named_group("V4")).size(), 4u);
  size_t nontrivial = 0;
  for (const auto& h : cyclic_subgroup_reps(*named_group("S3"))) nontrivial += !h.is_trivial();
  EXPECT_EQ(nontrivial, 2u);
  // Conjugacy classes of cyclic subgroups of S3: 1, <(12)>, <(123)>.
  EXPECT_EQ(cyclic_subgroup_reps(*named_group("S3")).size(), 3u);
}

TEST(Subgroups, CompleteUpToConjugacyForAllSmallGroups) {
  for (const auto& name : small_group_names()) {
    auto g = named_group(name);
    ASSERT_LE(g->order(), 16u) << name;
    std::set<ElementSet> classes;
    for (const auto& h : brute_force_subgroups(*g)) classes.insert(conjugacy_key(*g, h));
    const auto& reps = g->subgroup_reps();
    ASSERT_EQ(reps.size(), classes.size()) << name;
    std::set<ElementSet> seen;
    for (const auto& h : reps) {
      EXPECT_TRUE(closed_with_inverses(*g, h)) << name;
      EXPECT_EQ(g->order() % h.order(), 0u) << name;
      EXPECT_TRUE(seen.insert(conjugacy_key(*g, h.elements())).second) << name << ": two conjugate reps";
    }
    size_t cyclic_classes = 0;
    for (const auto& key : classes) {
      bool cyc = false;
      for (size_t x : key) cyc = cyc || g->closure({x}) == key;
      cyclic_classes += cyc;
    }
    EXPECT_EQ(g->cyclic_subgroup_reps().size(), cyclic_classes) << name;
  }
}

TEST(Subgroups, CatalogNamesHaveTheRightOrders) {
  auto names = small_group_names();
  EXPECT_EQ(names.size(), 42u);
  std::map<size_t, size_t> by_order;
  for (const auto& n : names) ++by_order[named_group(n)->order()];
  // Number of groups of each order up to isomorphism.
  const std::map<size_t, size_t> expected{{1, 1},  {2, 1},  {3, 1}, {4, 2},  {5, 1},  {6, 2},  {7, 1},  {8, 5},
                                          {9, 2},  {10, 2}, {11, 1}, {12, 5}, {13, 1}, {14, 2}, {15, 1}, {16, 14}};
  EXPECT_EQ(by_order, expected);
}

TEST(Cosets, Actions) {
  auto s3 = named_group("S3");
  auto whole = coset_permutation_action(*s3, s3->whole());
  EXPECT_EQ(whole.degree(), 1u);
  auto reg = coset_permutation_action(*s3, s3->trivial_subgroup());
  EXPECT_EQ(reg.degree(), 6u);
  Subgroup h;
  for (const auto& s : subgroup_reps(*s3))
    if (s.order() == 2) h = s;
  auto nat = coset_permutation_action(*s3, h);
  ASSERT_EQ(nat.degree(), 3u);
  // Transitive, and a homomorphism into Sym(3).
  std::set<size_t> orbit;
  for (size_t x = 0; x < s3->order(); ++x) orbit.insert(nat.image[x][0]);
  EXPECT_EQ(orbit.size(), 3u);
  for (size_t a = 0; a < s3->order(); ++a)
    for (size_t b = 0; b < s3->order(); ++b)
      for (size_t c = 0; c < 3; ++c) EXPECT_EQ(nat.image[s3->mul(a, b)][c], nat.image[a][nat.image[b][c]]);
  auto other = named_group("C2");
  EXPECT_THROW(coset_permutation_action(*s3, other->whole()), std::invalid_argument);
}
