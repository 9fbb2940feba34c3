#include "cocharacter_maps.hpp"
#include "flasque.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace flasque;

namespace {

std::string pi1_str(const ReductiveDatum& d) { return pi1(d).structure().to_string(); }

// Cokernel of the coroots in the cocharacter lattice, by the oracle SNF.
std::string borovoi_oracle(const RootDatum& rd) { return oracle::cokernel(oracle::from(rd.coroots), rd.rank()); }

}  // namespace

TEST(Validate, KnownValues) {
  EXPECT_TRUE(validate_root_datum(*preset_sl(2).root_datum).ok());
  EXPECT_TRUE(validate_root_datum(*preset_su(3).root_datum).ok());
  RootDatum bad = *preset_pgl(2).root_datum;
  bad.coroots(0, 0) += 1;
  auto d = validate_root_datum(bad);
  ASSERT_FALSE(d.ok());
  EXPECT_NE(d.problems.front().find("alpha_1, alpha_1^vee"), std::string::npos) << d.problems.front();
  EXPECT_THROW(pi1_borovoi(bad), InputError);
}

TEST(Validate, ActionMustPermuteRoots) {
  auto g = named_group("C2");
  // Swapping the coordinates of GL2 sends alpha = e1 - e2 to -alpha: not a permutation of simple roots.
  IntMatrix roots{{1}, {-1}};
  EXPECT_THROW(make_root_datum(g, {IntMatrix{{0, 1}, {1, 0}}}, roots, roots), InputError);
  // Non-finite-type Cartan matrix.
  // Affine A1: the Cartan matrix has determinant 0.
  auto t = FiniteGroup::trivial();
  EXPECT_THROW(make_root_datum(t, {}, IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{2, -2}, {-2, 2}}), InputError);
}

TEST(Pi1, KnownValues) {
  for (long n = 2; n <= 6; ++n) EXPECT_EQ(pi1_str(preset_sl(n)), "0") << n;
  EXPECT_EQ(pi1_str(preset_pgl(3)), "Z/3");
  EXPECT_EQ(pi1_str(preset_gl(2)), "Z");
  EXPECT_EQ(pi1_str(preset_torus_norm("V4")), "Z^4");
  EXPECT_EQ(pi1_str(preset_sl_mod_mu(4, 2)), "Z/2");
  EXPECT_EQ(pi1_str(preset_sp(4)), "0");
  for (const auto& e : catalog()) {
    auto d = preset(e.name, e.params);
    EXPECT_EQ(pi1_str(d), borovoi_oracle(*d.root_datum)) << describe(e);
  }
}

TEST(Pi1, TorusIsCocharacterLattice) {
  auto d = preset_torus_norm_one("V4");
  FgGModule p = pi1(d);
  EXPECT_TRUE(p.is_lattice());
  EXPECT_EQ(p.rank(), 3u);
  EXPECT_EQ(p.generator_action(), d.root_datum->cocharacters().generator_action());
}

TEST(Pi1, RoundTripThroughResolution) {
  EXPECT_EQ(pi1_via_resolution(preset_sl(3)).structure().to_string(), "0");
  EXPECT_EQ(pi1_via_resolution(preset_pgl(2)).structure().to_string(), "Z/2");
  auto bq = preset_torus_norm_one("V4");
  auto rt = pi1_round_trip(bq);
  EXPECT_TRUE(rt.agree());
  EXPECT_EQ(rt.via_resolution.structure().to_string(), "Z^3");
  EXPECT_EQ(invariant_battery(rt.via_resolution), invariant_battery(pi1(bq)));
  for (const auto& e : catalog()) EXPECT_TRUE(pi1_round_trip(preset(e.name, e.params)).agree()) << describe(e);
}

TEST(Pic, KnownValues) {
  for (long n : {2, 3, 4, 6}) EXPECT_EQ(pic_group(preset_pgl(n)).value().to_string(), "Z/" + std::to_string(n));
  EXPECT_TRUE(pic_group(preset_sl(4)).value().is_trivial());
  auto pgu = pic_group(preset_pgu(3));
  EXPECT_TRUE(pgu.route_a.is_trivial());
  EXPECT_TRUE(pgu.route_b.is_trivial());
}

TEST(Pic, RoutesMatchLocalFormulaOnCatalog) {
  for (const auto& e : catalog()) {
    auto d = preset(e.name, e.params);
    auto p = pic_group(d);
    EXPECT_TRUE(p.agree()) << describe(e);
    EXPECT_EQ(p.value(), local_h1(d)) << describe(e);
  }
}

TEST(Brauer, KnownValues) {
  for (const auto& e : catalog()) {
    auto d = preset(e.name, e.params);
    if (d.group()->order() == 1) EXPECT_TRUE(brauer_nr(d).value().is_trivial()) << describe(e);
  }
  auto bq = brauer_nr(preset_torus_norm_one("V4"));
  EXPECT_EQ(bq.route_a.to_string(), "Z/2");
  EXPECT_EQ(bq.route_b.to_string(), "Z/2");
  ASSERT_TRUE(bq.route_c);
  EXPECT_EQ(bq.route_c->to_string(), "Z/2");
  for (const char* g : {"C2", "C3", "C4"}) EXPECT_TRUE(brauer_nr(preset_torus_norm_one(g)).value().is_trivial()) << g;
  EXPECT_FALSE(brauer_nr(preset_pgl(2)).route_c);
}

TEST(Classify, KnownValues) {
  auto gl = classify(preset_gl(3));
  EXPECT_EQ(gl.is_quasi_trivial, Certainty::Yes);
  EXPECT_FALSE(gl.is_semisimple);
  auto sl = classify(preset_sl(3));
  EXPECT_TRUE(sl.is_simply_connected);
  EXPECT_TRUE(sl.is_semisimple);
  auto pgl = classify(preset_pgl(3));
  EXPECT_TRUE(pgl.is_semisimple);
  EXPECT_FALSE(pgl.is_simply_connected);
  EXPECT_EQ(pgl.is_quasi_trivial, Certainty::No);
  EXPECT_FALSE(pgl.is_coflasque);
  auto norm = classify(preset_torus_norm("S3"));
  EXPECT_TRUE(norm.is_torus);
  EXPECT_EQ(norm.is_quasi_trivial, Certainty::Yes);
  EXPECT_TRUE(norm.is_coflasque);
  auto n1 = classify(preset_torus_norm_one("C2"));
  EXPECT_EQ(n1.is_quasi_trivial, Certainty::No);
}

TEST(LocalH1, KnownValues) {
  for (long n : {2, 3, 5}) EXPECT_EQ(local_h1(preset_pgl(n)).to_string(), "Z/" + std::to_string(n));
  EXPECT_TRUE(local_h1(preset_sl(3)).is_trivial());
  EXPECT_TRUE(local_h1(preset_torus_norm("V4")).is_trivial());
}

TEST(Mu, KnownValues) {
  auto m = mu_minus_one(*preset_pgl(4).root_datum);
  EXPECT_TRUE(m.agree);
  EXPECT_EQ(m.torsion.structure().to_string(), "Z/4");
  EXPECT_TRUE(mu_minus_one(*preset_sl(4).root_datum).torsion.structure().is_trivial());
  auto u = mu_minus_one(*preset_pgu(3).root_datum);
  EXPECT_TRUE(u.agree);
  EXPECT_EQ(u.saturation.structure().to_string(), "Z/3");
  EXPECT_TRUE(h_i(u.saturation.group()->whole(), u.saturation, 0).group.is_trivial());
}

TEST(Mu, RankOfRootOrthogonalSublattice) {
  for (const auto& e : catalog()) {
    auto d = preset(e.name, e.params);
    EXPECT_EQ(pi1(d).structure().free_rank(), root_orthogonal_rank(*d.root_datum)) << describe(e);
    EXPECT_TRUE(mu_minus_one(*d.root_datum).agree) << describe(e);
  }
}

TEST(Pi1Map, IdentityAndInclusions) {
  RootDatum pgl = *preset_pgl(3).root_datum;
  EXPECT_TRUE(is_isomorphism(pi1_map(pgl, pgl, identity_matrix(2))));
  auto inc = pi1_map(*preset_sl(3).root_datum, *preset_gl(3).root_datum, fixtures::sl_to_gl(3));
  EXPECT_EQ(inc.source.structure().to_string(), "0");
  // A map that does not send coroots to coroots.
  EXPECT_THROW(pi1_map(*preset_gl(2).root_datum, *preset_gl(2).root_datum, IntMatrix{{2, 0}, {0, 1}}), InputError);
  EXPECT_THROW(pi1_map(*preset_gl(2).root_datum, *preset_gl(3).root_datum, identity_matrix(2)), InputError);
}

TEST(Pi1Map, CentreOfGlIsMultiplicationByN) {
  for (long n = 2; n <= 4; ++n) {
    auto gm = *preset_torus_split(1).root_datum;
    auto gl = *preset_gl(n).root_datum;
    GModuleMap f = pi1_map(gm, gl, fixtures::gm_to_gl(n));
    GModuleMap det = pi1_map(gl, gm, fixtures::gl_to_gm(n));
    // det identifies pi1(GL_n) with Z; the composite is multiplication by n.
    EXPECT_EQ((det.matrix * f.matrix)(0, 0), Integer(n));
    EXPECT_TRUE(is_isomorphism(det));
  }
}

TEST(Presets, KnownValues) {
  auto pgl2 = preset("PGL", {2, 0, 0, ""});
  EXPECT_EQ(pgl2.root_datum->rank(), 1u);
  EXPECT_EQ(transpose(pgl2.root_datum->roots) * pgl2.root_datum->coroots, IntMatrix{{2}});
  // The simple coroot is twice a generator of the cocharacters.
  EXPECT_EQ(pgl2.root_datum->coroots, IntMatrix{{2}});
  auto bq = preset("torus_norm_one", {0, 0, 0, "V4"});
  EXPECT_EQ(bq.root_datum->rank(), 3u);
  EXPECT_EQ(pi1_str(preset("SL_mod_mu", {4, 2, 0, ""})), "Z/2");
  EXPECT_THROW(preset("SL_mod_mu", {4, 3, 0, ""}), InputError);
  EXPECT_THROW(preset("E8", {}), InputError);
  EXPECT_THROW(preset("custom", {}), InputError);
  EXPECT_THROW(preset("SL", {4, 3, 0, ""}), InputError);
  EXPECT_THROW(preset("torus_norm", {3, 0, 0, "C2"}), InputError);
}

TEST(Presets, NormOneCharactersAreRegularModNorm) {
  for (const char* name : {"C2", "C4", "V4", "S3"}) {
    FgGModule t = preset_torus_norm_one(name).root_datum->characters.module();
    const GroupPtr& g = t.group();
    // Z[G] -> T*, e_1 -> -(sum), e_x -> basis vector, is equivariant with kernel Z N.
    const size_t n = g->order();
    IntMatrix q(n - 1, n);
    for (size_t x = 1; x < n; ++x) q(x - 1, x) = 1;
    for (size_t r = 0; r + 1 < n; ++r) q(r, 0) = -1;
    GLattice reg = permutation_module(g, {g->trivial_subgroup()});
    GModuleMap proj(reg.module(), t, q);
    EXPECT_TRUE(is_surjective(proj)) << name;
    IntMatrix k = kernel_basis(q);
    ASSERT_EQ(k.cols(), 1u);
    IntMatrix norm(n, 1);
    for (size_t x = 0; x < n; ++x) norm(x, 0) = 1;
    EXPECT_TRUE(lattice_equal(k, norm)) << name;
  }
}

TEST(Presets, CatalogCoversRequiredEntries) {
  auto c = catalog();
  EXPECT_GE(c.size(), 10u);
  std::set<std::string> labels;
  for (const auto& e : c) labels.insert(preset(e.name, e.params).label);
  for (const char* want : {"GL2", "GL3", "SL2", "SL5", "PGL2", "PGL3", "SL4/mu2", "Sp4", "SU3(quasi-split)",
                           "SU4(quasi-split)", "PGU3(quasi-split)", "norm-one torus for V4", "norm torus for S3",
                           "split torus of rank 2 over C4"})
    EXPECT_TRUE(labels.count(want)) << want;
}
