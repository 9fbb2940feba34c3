#include "flasque.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace flasque;

namespace {

void expect_audited(const Resolution& r, const std::string& what) {
  auto a = audit_resolution(r);
  EXPECT_TRUE(a.exactness.composite_zero) << what;
  EXPECT_TRUE(a.exactness.injective) << what;
  EXPECT_TRUE(a.exactness.surjective) << what;
  EXPECT_TRUE(a.exactness.middle_exact) << what;
  EXPECT_TRUE(a.permutation_certified) << what;
  EXPECT_TRUE(a.end_condition) << what << ": " << a.detail;
}

}  // namespace

TEST(Coflasque, TrivialGroupCyclicModule) {
  auto g = FiniteGroup::trivial();
  FgGModule z2(g, 1, {}, IntMatrix{{2}});
  Resolution r = coflasque_resolution(z2);
  expect_audited(r, "Z/2");
  EXPECT_EQ(r.left.rank(), r.middle.rank());
  // The inclusion has cokernel Z/2, so its determinant is +-2.
  EXPECT_EQ(abs(determinant(r.inclusion.matrix)), Integer(2));
}

TEST(Coflasque, SignModule) {
  auto g = named_group("C2");
  FgGModule zm(g, 1, {IntMatrix{{-1}}});
  Resolution r = coflasque_resolution(zm);
  expect_audited(r, "Z^-");
  EXPECT_EQ(r.left.rank(), r.middle.rank() - 1);
  // The kernel is fixed by G: it is a sum of trivial lattices.
  for (const auto& a : r.left.generator_action()) EXPECT_EQ(a, identity_matrix(r.left.rank()));
  // The kernel is the (saturated) kernel of the evaluation map.
  oracle::Mat k = oracle::kernel(oracle::from(r.projection.matrix), r.middle.rank());
  EXPECT_EQ(oracle::cols_of(k), r.left.rank());
}

TEST(Coflasque, TrivialLatticeOverC2) {
  auto g = named_group("C2");
  Resolution r = coflasque_resolution(trivial_lattice(g, 1).module());
  expect_audited(r, "Z");
  bool has_whole = false;
  for (const auto& h : r.middle.certificate()->blocks) has_whole = has_whole || h.order() == 2;
  EXPECT_TRUE(has_whole);
  EXPECT_TRUE(is_coflasque(r.left).holds);
}

TEST(Coflasque, RandomModulesPassAudits) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    auto c = random_case(seed, 16, 5);
    expect_audited(coflasque_resolution(c.module), c.group_name + " seed " + std::to_string(seed));
  }
}

TEST(Flasque, KnownValues) {
  auto triv = FiniteGroup::trivial();
  Resolution a = flasque_resolution(FgGModule(triv, 1, {}, IntMatrix{{2}}));
  expect_audited(a, "Z/2 over 1");
  EXPECT_EQ(a.kind, ResolutionKind::Flasque);

  auto g = named_group("C2");
  Resolution b = flasque_resolution(FgGModule(g, 1, {identity_matrix(1)}, IntMatrix{{2}}));
  expect_audited(b, "Z/2 over C2");
  EXPECT_TRUE(is_flasque(b.middle).holds);

  Resolution c = flasque_resolution(pi1(preset_pgl(2)));
  expect_audited(c, "PGL2");
  EXPECT_EQ(c.left.rank(), c.middle.rank());
}

TEST(Flasque, RandomModulesPassAudits) {
  for (uint64_t seed = 41; seed <= 70; ++seed) {
    auto c = random_case(seed, 16, 5);
    expect_audited(flasque_resolution(c.module), c.group_name + " seed " + std::to_string(seed));
  }
}

TEST(FourTerm, KnownValues) {
  FgGModule gm = pi1(preset_torus_split(1));
  auto q = dualize_resolution(coflasque_resolution(gm));
  EXPECT_EQ(q.t_star.rank(), 1u);
  EXPECT_TRUE(q.mu_star.structure().is_trivial());
  EXPECT_TRUE(audit_four_term(q, gm).ok());

  auto triv = FiniteGroup::trivial();
  FgGModule z5(triv, 1, {}, IntMatrix{{5}});
  auto q5 = dualize_resolution(coflasque_resolution(z5));
  EXPECT_EQ(q5.t_star.rank(), 0u);
  EXPECT_EQ(q5.mu_star.structure().to_string(), "Z/5");
  EXPECT_TRUE(audit_four_term(q5, z5).ok());

  FgGModule pgu = pi1(preset_pgu(3));
  auto qu = dualize_resolution(coflasque_resolution(pgu));
  auto audit = audit_four_term(qu, pgu);
  EXPECT_TRUE(audit.ok());
  EXPECT_EQ(qu.mu_star.structure().to_string(), "Z/3");
  // Inversion: no invariants under the flip.
  auto c2 = pgu.group();
  EXPECT_TRUE(h_i(c2->whole(), qu.mu_star, 0).group.is_trivial());

  Resolution fl = flasque_resolution(z5);
  EXPECT_THROW(dualize_resolution(fl), std::invalid_argument);
}

TEST(FourTerm, OrdersAndRanksOnRandomModules) {
  for (uint64_t seed = 500; seed < 520; ++seed) {
    auto c = random_case(seed, 12, 5);
    auto q = dualize_resolution(coflasque_resolution(c.module));
    auto a = audit_four_term(q, c.module);
    EXPECT_TRUE(a.ok()) << seed;
    auto tors = c.module.structure().torsion();
    EXPECT_EQ(q.mu_star.structure().torsion().is_trivial() ? Integer(1) : q.mu_star.structure().order(),
              tors.is_trivial() ? Integer(1) : tors.order());
    EXPECT_EQ(q.t_star.rank(), c.module.structure().free_rank());
  }
}

TEST(Compare, KnownValues) {
  FgGModule bq = pi1(preset_torus_norm_one("V4"));
  Resolution r = coflasque_resolution(bq);
  EXPECT_TRUE(compare_resolutions(r, r).consistent);

  ResolutionOptions shuffled;
  shuffled.shuffle_seed = 99;
  Resolution r2 = coflasque_resolution(bq, shuffled);
  auto cmp = compare_resolutions(r, r2);
  EXPECT_TRUE(cmp.consistent);
  // H^1(G, S*) at the whole group equals the oracle value of Sha^2(G, T*).
  FgGModule t = preset_torus_norm_one("V4").root_datum->characters.module();
  const std::string expected = oracle::sha2(*t.group(), t);
  bool found = false;
  for (size_t i = 0; i < cmp.subgroups.size(); ++i)
    if (cmp.subgroups[i].order() == 4) {
      EXPECT_EQ(cmp.first[i].to_string(), expected);
      found = true;
    }
  EXPECT_TRUE(found);

  auto triv = FiniteGroup::trivial();
  FgGModule z6(triv, 1, {}, IntMatrix{{6}});
  ResolutionOptions full;
  full.greedy = false;
  auto c6 = compare_resolutions(coflasque_resolution(z6), coflasque_resolution(z6, full));
  EXPECT_TRUE(c6.consistent);
  for (const auto& g : c6.first) EXPECT_TRUE(g.is_trivial());

  FgGModule other(triv, 1, {}, IntMatrix{{6}});
  EXPECT_THROW(compare_resolutions(coflasque_resolution(z6), coflasque_resolution(other)), std::invalid_argument);
}

TEST(Compare, FlasqueResolutionsAgree) {
  FgGModule bq = pi1(preset_torus_norm_one("V4"));
  ResolutionOptions shuffled;
  shuffled.shuffle_seed = 3;
  EXPECT_TRUE(compare_resolutions(flasque_resolution(bq), flasque_resolution(bq, shuffled)).consistent);
}
