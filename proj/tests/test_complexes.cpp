#include "flasque.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace flasque;

namespace {

FgGModule zero_module(const GroupPtr& g) {
  return FgGModule(g, 0, std::vector<IntMatrix>(g->num_generators(), IntMatrix(0, 0)));
}

// H^0 = B / (d A + R_B), and the free rank of H^{-1} from ranks over a prime field.
std::string oracle_h0(const TwoTermComplex& cx) {
  return oracle::cokernel(oracle::from(hstack(cx.differential.matrix, cx.right().relations())), cx.right().rank());
}

size_t oracle_h_minus1_free_rank(const TwoTermComplex& cx) {
  const IntMatrix& d = cx.differential.matrix;
  const IntMatrix& rb = cx.right().relations();
  const size_t joint = oracle::rank_mod_p(oracle::from(hstack(d, rb)));
  const size_t alone = oracle::rank_mod_p(oracle::from(rb));
  const size_t ra = oracle::rank_mod_p(oracle::from(cx.left().relations()));
  return cx.left().rank() - (joint - alone) - ra;
}

void expect_homology_matches_oracle(const TwoTermComplex& cx, const std::string& what) {
  Homology h = homology(cx);
  EXPECT_EQ(h.h0.structure().to_string(), oracle_h0(cx)) << what;
  EXPECT_EQ(h.h_minus1.structure().free_rank(), oracle_h_minus1_free_rank(cx)) << what;
}

}  // namespace

TEST(Homology, KnownValues) {
  auto g = named_group("C2");
  FgGModule b = permutation_module(g, {g->trivial_subgroup()}).module();
  Homology h = homology(TwoTermComplex(GModuleMap(zero_module(g), b, IntMatrix(2, 0))));
  EXPECT_TRUE(h.h_minus1.structure().is_trivial());
  EXPECT_EQ(invariant_battery(h.h0), invariant_battery(b));

  Homology id = homology(TwoTermComplex(GModuleMap(b, b, identity_matrix(2))));
  EXPECT_TRUE(id.h_minus1.structure().is_trivial());
  EXPECT_TRUE(id.h0.structure().is_trivial());

  for (const char* name : {"C2", "C4", "V4", "S3"}) {
    auto d = preset_torus_norm_one(name);
    Resolution r = coflasque_resolution(pi1(d));
    Homology hr = homology(TwoTermComplex(r.inclusion));
    EXPECT_TRUE(hr.h_minus1.structure().is_trivial()) << name;
    EXPECT_EQ(invariant_battery(hr.h0), invariant_battery(pi1(d))) << name;
  }
}

TEST(Homology, KernelAndCokernelOfMultiplication) {
  auto t = FiniteGroup::trivial();
  FgGModule z(t, 1, {});
  FgGModule z6(t, 1, {}, IntMatrix{{6}});
  // x2 on Z/6: kernel Z/2, cokernel Z/2.
  Homology h = homology(TwoTermComplex(GModuleMap(z6, z6, IntMatrix{{2}})));
  EXPECT_EQ(h.h_minus1.structure().to_string(), "Z/2");
  EXPECT_EQ(h.h0.structure().to_string(), "Z/2");
  // Z -> Z/6 onto: kernel 6Z, which is free of rank 1.
  Homology k = homology(TwoTermComplex(GModuleMap(z, z6, IntMatrix{{1}})));
  EXPECT_EQ(k.h_minus1.structure().to_string(), "Z");
  EXPECT_TRUE(k.h0.structure().is_trivial());
}

TEST(Homology, MatchesOracleOnRandomMaps) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    auto c = random_case(seed, 8, 4);
    const FgGModule& m = c.module;
    // Multiplication by k and by (k - action of a generator) are G-maps M -> M.
    const Integer k(static_cast<long>(seed % 4));
    IntMatrix f = k * identity_matrix(m.rank());
    if (m.group()->num_generators() && seed % 2) f = f - m.generator_action()[0];
    bool equivariant = true;
    for (const auto& a : m.generator_action()) equivariant = equivariant && lattice_contains(m.relations(), a * f - f * a);
    if (!equivariant) continue;
    expect_homology_matches_oracle(TwoTermComplex(GModuleMap(m, m, f)), c.group_name + " seed " + std::to_string(seed));
  }
}

TEST(QuasiIso, KnownValues) {
  auto t = FiniteGroup::trivial();
  FgGModule z(t, 1, {});
  FgGModule z2(t, 1, {}, IntMatrix{{2}});
  TwoTermComplex times2(GModuleMap(z, z, IntMatrix{{2}}));
  TwoTermComplex just_z2(GModuleMap(zero_module(t), z2, IntMatrix(1, 0)));
  EXPECT_TRUE(is_quasi_iso(ChainMap(times2, just_z2, IntMatrix(0, 1), IntMatrix{{1}})).ok());
  EXPECT_TRUE(is_quasi_iso(ChainMap(times2, times2, identity_matrix(1), identity_matrix(1))).ok());
  auto zero = is_quasi_iso(ChainMap(times2, just_z2, IntMatrix(0, 1), IntMatrix{{0}}));
  EXPECT_FALSE(zero.ok());
  EXPECT_TRUE(zero.iso_minus1);
  EXPECT_FALSE(zero.iso0);
  EXPECT_THROW(ChainMap(times2, times2, IntMatrix{{1}}, IntMatrix{{3}}), InputError);
}

TEST(QuasiIso, CompositionOfQuasiIsomorphisms) {
  auto t = FiniteGroup::trivial();
  FgGModule z(t, 1, {});
  FgGModule z3(t, 1, {}, IntMatrix{{3}});
  TwoTermComplex a(GModuleMap(z, z, IntMatrix{{3}}));
  TwoTermComplex b(GModuleMap(direct_sum(z, z), direct_sum(z, z), IntMatrix{{3, 0}, {0, 1}}));
  TwoTermComplex c(GModuleMap(zero_module(t), z3, IntMatrix(1, 0)));
  ChainMap f(a, b, IntMatrix{{1}, {0}}, IntMatrix{{1}, {0}});
  ChainMap g(b, c, IntMatrix(0, 2), IntMatrix{{1, 0}});
  EXPECT_TRUE(is_quasi_iso(f).ok());
  EXPECT_TRUE(is_quasi_iso(g).ok());
  EXPECT_TRUE(is_quasi_iso(compose(g, f)).ok());
}

TEST(Splice, TorusDiagrams) {
  for (const char* name : {"C2", "C4", "V4", "S3"}) {
    auto d = preset_torus_norm_one(name);
    NineDiagram nd = torus_nine_diagram(d);
    EXPECT_TRUE(audit_nine_diagram(nd).ok()) << name;
    SpliceResult s = splice(nd);
    EXPECT_TRUE(s.ok()) << name;
    // [B1 -> A2] = [0 -> T+] and [C2 -> B3] = [S+ -> P+].
    EXPECT_EQ(invariant_battery(homology(s.top).h0), invariant_battery(pi1(d))) << name;
    EXPECT_EQ(invariant_battery(homology(s.bottom).h0), invariant_battery(pi1(d))) << name;
  }
  EXPECT_THROW(torus_nine_diagram(preset_pgl(2)), InputError);
}

TEST(Splice, DegenerateDiagram) {
  auto g = named_group("C2");
  GLattice e = permutation_module(g, {g->trivial_subgroup()});
  NineDiagram nd = nine_diagram_from_sublattices(e, IntMatrix(2, 0), IntMatrix(2, 0));
  SpliceResult s = splice(nd);
  EXPECT_TRUE(s.ok());
}

TEST(Splice, RejectsNonExactDiagrams) {
  auto d = random_nine_diagram(3).diagram;
  d.b_row[1] = Integer(2) * d.b_row[1];
  EXPECT_FALSE(audit_nine_diagram(d).ok());
  EXPECT_THROW(splice(d), InputError);
}

TEST(Splice, RandomDiagrams) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto rd = random_nine_diagram(seed);
    const std::string what = rd.group_name + " seed " + std::to_string(seed);
    ASSERT_TRUE(audit_nine_diagram(rd.diagram).ok()) << what;
    SpliceResult s = splice(rd.diagram);
    EXPECT_TRUE(s.ok()) << what;
    expect_homology_matches_oracle(s.top, what + " top");
    expect_homology_matches_oracle(s.bottom, what + " bottom");
    expect_homology_matches_oracle(s.middle, what + " middle");
    // Quasi-isomorphic complexes have the same homology groups.
    EXPECT_EQ(oracle_h0(s.top), oracle_h0(s.bottom)) << what;
  }
}

TEST(Borovoi, KnownValues) {
  auto sl = borovoi_vs_resolution(*preset_sl(3).root_datum);
  EXPECT_TRUE(sl.ok());
  EXPECT_TRUE(sl.borovoi_homology.h0.structure().is_trivial());

  auto pgl = borovoi_vs_resolution(*preset_pgl(3).root_datum);
  EXPECT_TRUE(pgl.ok());
  EXPECT_EQ(pgl.borovoi_homology.h0.structure().to_string(), "Z/3");
  EXPECT_EQ(pgl.resolution_homology.h0.structure().to_string(), "Z/3");

  EXPECT_TRUE(borovoi_vs_resolution(*preset_su(4).root_datum).ok());
}

TEST(Borovoi, WholeCatalog) {
  for (const auto& e : catalog()) {
    auto d = preset(e.name, e.params);
    auto cmp = borovoi_vs_resolution(*d.root_datum);
    EXPECT_TRUE(cmp.ok()) << describe(e);
    EXPECT_EQ(cmp.borovoi_homology.h0.structure().to_string(), oracle_h0(cmp.borovoi)) << describe(e);
  }
}
