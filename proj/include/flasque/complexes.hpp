#pragma once

// Two-term complexes [A -> B] of G-modules (A in degree -1), their homology,
// quasi-isomorphism checks, and the splice lemma for exact 3x3 diagrams.

#include "flasque/reductive.hpp"

#include <array>
#include <string>
#include <vector>

namespace flasque {

struct TwoTermComplex {
  GModuleMap differential;

  TwoTermComplex() = default;
  explicit TwoTermComplex(GModuleMap d) : differential(std::move(d)) {}
  [[nodiscard]] const FgGModule& left() const { return differential.source; }
  [[nodiscard]] const FgGModule& right() const { return differential.target; }
};

struct Homology {
  FgGModule h_minus1;  // ker d, presented on a basis of its preimage lattice
  IntMatrix h_minus1_basis;  // that basis, inside the ambient of left()
  FgGModule h0;        // coker d, on the ambient of right()
};

inline Homology homology(const TwoTermComplex& cx) {
  const auto& d = cx.differential;
  const FgGModule& a = cx.left();
  Homology h;
  // x with d x in im R_B; it contains R_A because d is a map of presentations
  h.h_minus1_basis = detail::solutions_modulo(d.matrix, d.target.relations());
  const IntMatrix& s = h.h_minus1_basis;
  std::vector<IntMatrix> act = s.cols() ? detail::restrict_action(a.generator_action(), s)
                                        : std::vector<IntMatrix>(a.generator_action().size());
  IntMatrix rel(s.cols(), 0);
  if (s.cols()) {
    auto coords = IntegerSolver(s).solve_columns(a.relations());
    if (!coords) throw std::logic_error("homology: relations outside the kernel lattice");
    rel = *coords;
  }
  h.h_minus1 = FgGModule(a.group(), s.cols(), std::move(act), rel);
  h.h0 = quotient(d.target, d.matrix);
  return h;
}

struct ChainMap {
  TwoTermComplex source, target;
  GModuleMap f_minus1;  // source.left -> target.left
  GModuleMap f0;        // source.right -> target.right

  ChainMap() = default;
  ChainMap(TwoTermComplex s, TwoTermComplex t, IntMatrix m1, IntMatrix m0)
      : source(std::move(s)), target(std::move(t)) {
    f_minus1 = GModuleMap(source.left(), target.left(), std::move(m1));
    f0 = GModuleMap(source.right(), target.right(), std::move(m0));
    IntMatrix diff = f0.matrix * source.differential.matrix - target.differential.matrix * f_minus1.matrix;
    if (!lattice_contains(target.right().relations(), diff)) throw InputError("chain map square does not commute");
  }
};

struct QuasiIsoVerdict {
  GModuleMap induced_minus1, induced0;
  bool iso_minus1 = false, iso0 = false;
  [[nodiscard]] bool ok() const { return iso_minus1 && iso0; }
};

inline QuasiIsoVerdict is_quasi_iso(const ChainMap& f) {
  Homology hs = homology(f.source), ht = homology(f.target);
  QuasiIsoVerdict v;
  IntMatrix img = f.f_minus1.matrix * hs.h_minus1_basis;
  IntMatrix m1(ht.h_minus1.rank(), hs.h_minus1.rank());
  if (img.cols() && ht.h_minus1_basis.cols()) {
    auto coords = IntegerSolver(ht.h_minus1_basis).solve_columns(img);
    if (!coords) throw std::logic_error("is_quasi_iso: kernel not mapped into kernel");
    m1 = *coords;
  } else if (!is_zero(img)) {
    throw std::logic_error("is_quasi_iso: kernel not mapped into kernel");
  }
  v.induced_minus1 = GModuleMap(hs.h_minus1, ht.h_minus1, m1);
  v.induced0 = GModuleMap(hs.h0, ht.h0, f.f0.matrix);
  v.iso_minus1 = is_isomorphism(v.induced_minus1);
  v.iso0 = is_isomorphism(v.induced0);
  return v;
}

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
  return ChainMap(f.source, g.target, g.f_minus1.matrix * f.f_minus1.matrix, g.f0.matrix * f.f0.matrix);
}

inline TwoTermComplex direct_sum(const TwoTermComplex& x, const TwoTermComplex& y) {
  return TwoTermComplex(GModuleMap(direct_sum(x.left(), y.left()), direct_sum(x.right(), y.right()),
                                   block_diagonal(x.differential.matrix, y.differential.matrix)));
}

// Rows 0 -> X1 -> X2 -> X3 -> 0 for X = A, B, C and columns
// 0 -> Ci -> Bi -> Ai -> 0.
struct NineDiagram {
  std::array<FgGModule, 3> a, b, c;
  std::array<IntMatrix, 2> a_row, b_row, c_row;  // X1 -> X2, X2 -> X3
  std::array<IntMatrix, 3> c_to_b, b_to_a;
};

struct NineDiagramAudit {
  std::array<bool, 3> rows{}, columns{};
  bool commutes = false;
  std::vector<std::string> problems;
  [[nodiscard]] bool ok() const { return problems.empty(); }
};

inline NineDiagramAudit audit_nine_diagram(const NineDiagram& d) {
  NineDiagramAudit out;
  auto short_exact = [&](const FgGModule& x, const FgGModule& y, const FgGModule& z, const IntMatrix& f,
                         const IntMatrix& g, const std::string& what) {
    try {
      auto a = audit_short_exact(GModuleMap(x, y, f), GModuleMap(y, z, g));
      if (!a.ok()) out.problems.push_back(what + " is not short exact");
      return a.ok();
    } catch (const std::invalid_argument& e) {
      out.problems.push_back(what + ": " + e.what());
      return false;
    }
  };
  const std::array<const std::array<FgGModule, 3>*, 3> rows{&d.a, &d.b, &d.c};
  const std::array<const std::array<IntMatrix, 2>*, 3> row_maps{&d.a_row, &d.b_row, &d.c_row};
  const char* names = "ABC";
  for (size_t r = 0; r < 3; ++r)
    out.rows[r] = short_exact((*rows[r])[0], (*rows[r])[1], (*rows[r])[2], (*row_maps[r])[0], (*row_maps[r])[1],
                              std::string("row ") + names[r]);
  for (size_t i = 0; i < 3; ++i)
    out.columns[i] =
        short_exact(d.c[i], d.b[i], d.a[i], d.c_to_b[i], d.b_to_a[i], "column " + std::to_string(i + 1));
  out.commutes = true;
  for (size_t i = 0; i < 2; ++i) {
    if (!lattice_contains(d.b[i + 1].relations(), d.b_row[i] * d.c_to_b[i] - d.c_to_b[i + 1] * d.c_row[i]))
      out.commutes = false;
    if (!lattice_contains(d.a[i + 1].relations(), d.a_row[i] * d.b_to_a[i] - d.b_to_a[i + 1] * d.b_row[i]))
      out.commutes = false;
  }
  if (!out.commutes) out.problems.push_back("a square does not commute");
  return out;
}

struct SpliceResult {
  TwoTermComplex top;     // [B1 -> A2]
  TwoTermComplex bottom;  // [C2 -> B3]
  TwoTermComplex middle;  // [B2 -> A2 + B3]
  ChainMap from_top, from_bottom;
  QuasiIsoVerdict top_verdict, bottom_verdict;
  bool middle_row_exact = false;  // 0 -> C1 -> B2 -> A2 + B3 -> A3 -> 0
  [[nodiscard]] bool ok() const { return top_verdict.ok() && bottom_verdict.ok() && middle_row_exact; }
};

inline SpliceResult splice(const NineDiagram& d) {
  auto audit = audit_nine_diagram(d);
  if (!audit.ok()) throw InputError("splice: diagram is not exact (" + audit.problems.front() + ")");
  SpliceResult s;
  const size_t na2 = d.a[1].rank(), nb3 = d.b[2].rank();
  s.top = TwoTermComplex(GModuleMap(d.b[0], d.a[1], d.a_row[0] * d.b_to_a[0]));
  s.bottom = TwoTermComplex(GModuleMap(d.c[1], d.b[2], d.b_row[1] * d.c_to_b[1]));
  FgGModule sum = direct_sum(d.a[1], d.b[2]);
  s.middle = TwoTermComplex(GModuleMap(d.b[1], sum, vstack(d.b_to_a[1], d.b_row[1])));
  IntMatrix embed_a = vstack(identity_matrix(na2), IntMatrix(nb3, na2));
  IntMatrix embed_b = vstack(IntMatrix(na2, nb3), identity_matrix(nb3));
  s.from_top = ChainMap(s.top, s.middle, d.b_row[0], embed_a);
  s.from_bottom = ChainMap(s.bottom, s.middle, d.c_to_b[1], embed_b);
  s.top_verdict = is_quasi_iso(s.from_top);
  s.bottom_verdict = is_quasi_iso(s.from_bottom);
  // the difference map (a, b) -> f(a) - g(b)
  GModuleMap c1_b2(d.c[0], d.b[1], d.b_row[0] * d.c_to_b[0]);
  GModuleMap diff(sum, d.a[2], hstack(d.a_row[1], -d.b_to_a[2]));
  s.middle_row_exact = is_injective(c1_b2) && exact_at(c1_b2, s.middle.differential) &&
                       exact_at(s.middle.differential, diff) && is_surjective(diff);
  return s;
}

// The diagram of an ambient lattice E and G-stable saturated sublattices U, W:
//   C = (U n W, U, U/(U n W)),  B = (W, E, E/W),  A = (W/(U n W), E/U, E/(U+W)).
inline NineDiagram nine_diagram_from_sublattices(const GLattice& e, const IntMatrix& u, const IntMatrix& w) {
  const auto& g = e.group();
  const size_t n = e.rank();
  IntMatrix i = lattice_intersection(u, w);
  auto coords = [](const IntMatrix& basis, const IntMatrix& x) {
    if (x.cols() == 0) return IntMatrix(basis.cols(), 0);
    auto c = IntegerSolver(basis).solve_columns(x);
    if (!c) throw std::logic_error("nine_diagram: vectors outside a sublattice");
    return *c;
  };
  auto sub = [&](const IntMatrix& basis) -> FgGModule {
    if (basis.cols() == 0) return FgGModule(g, 0, std::vector<IntMatrix>(g->num_generators(), IntMatrix(0, 0)));
    return sublattice(e.module(), basis).module();
  };
  IntMatrix i_in_u = coords(u, i), i_in_w = coords(w, i);
  NineDiagram d;
  d.c[0] = sub(i);
  d.c[1] = sub(u);
  d.c[2] = quotient(d.c[1], i_in_u);
  d.b[0] = sub(w);
  d.b[1] = e.module();
  d.b[2] = quotient(e.module(), w);
  d.a[0] = quotient(d.b[0], i_in_w);
  d.a[1] = quotient(e.module(), u);
  d.a[2] = quotient(e.module(), hstack(u, w));
  d.c_row = {i_in_u, identity_matrix(u.cols())};
  d.b_row = {w, identity_matrix(n)};
  d.a_row = {w, identity_matrix(n)};
  d.c_to_b = {i_in_w, u, u};
  d.b_to_a = {identity_matrix(w.cols()), identity_matrix(n), identity_matrix(n)};
  return d;
}

// For a torus: C = (0, S+, S+), B = (0, P+, P+), A = (0, T+, T+) from a
// coflasque resolution, so that [B1 -> A2] = [0 -> T+] and [C2 -> B3] = [S+ -> P+].
inline NineDiagram torus_nine_diagram(const ReductiveDatum& d, const ResolutionOptions& opt = {}) {
  if (!d.is_torus()) throw InputError("torus_nine_diagram needs a torus");
  Resolution r = coflasque_resolution(pi1(d), opt);
  return nine_diagram_from_sublattices(r.middle, r.inclusion.matrix, IntMatrix(r.middle.rank(), 0));
}

struct BorovoiComparison {
  TwoTermComplex borovoi;     // [coroot lattice -> Y]
  TwoTermComplex resolution;  // [S+ -> P+]
  Homology borovoi_homology, resolution_homology;
  bool h_minus1_zero = false;  // both differentials injective
  bool h0_same_presentation = false;
  QuasiIsoVerdict borovoi_to_pi1, resolution_to_pi1;  // chain maps onto [0 -> pi1]
  [[nodiscard]] bool ok() const {
    return h_minus1_zero && h0_same_presentation && borovoi_to_pi1.ok() && resolution_to_pi1.ok();
  }
};

inline BorovoiComparison borovoi_vs_resolution(const RootDatum& rd, const ResolutionOptions& opt = {}) {
  BorovoiComparison out;
  const FgGModule p = pi1_borovoi(rd);
  const auto& g = rd.group();
  GLattice y = rd.cocharacters();
  const size_t r = rd.semisimple_rank();
  FgGModule coroot_lattice = r ? sublattice(y.module(), rd.coroots).module()
                               : FgGModule(g, 0, std::vector<IntMatrix>(g->num_generators(), IntMatrix(0, 0)));
  out.borovoi = TwoTermComplex(GModuleMap(coroot_lattice, y.module(), rd.coroots));
  Resolution res = coflasque_resolution(p, opt);
  out.resolution = TwoTermComplex(res.inclusion);
  out.borovoi_homology = homology(out.borovoi);
  out.resolution_homology = homology(out.resolution);
  out.h_minus1_zero = out.borovoi_homology.h_minus1.rank() == 0 && out.resolution_homology.h_minus1.rank() == 0;
  const FgGModule& h0 = out.borovoi_homology.h0;
  out.h0_same_presentation = h0.rank() == p.rank() && h0.relations() == p.relations() &&
                             h0.generator_action() == p.generator_action();
  FgGModule zero(g, 0, std::vector<IntMatrix>(g->num_generators(), IntMatrix(0, 0)));
  TwoTermComplex target(GModuleMap(zero, p, IntMatrix(p.rank(), 0)));
  out.borovoi_to_pi1 =
      is_quasi_iso(ChainMap(out.borovoi, target, IntMatrix(0, r), identity_matrix(p.rank())));
  out.resolution_to_pi1 =
      is_quasi_iso(ChainMap(out.resolution, target, IntMatrix(0, res.left.rank()), res.projection.matrix));
  return out;
}

}  // namespace flasque
