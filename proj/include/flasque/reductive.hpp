#pragma once

// Root data with a Galois action, the preset catalog, and the invariants of
// connected reductive groups: pi1 (two routes), Pic, unramified Brauer group,
// classification flags, the local H^1 formula, and the torsion of pi1.

#include "flasque/group_catalog.hpp"
#include "flasque/resolution.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flasque {

// Character lattice X = Z^n with simple roots (columns, in X) and simple
// coroots (columns, in Y = Z^n dual), paired by the dot product.
struct RootDatum {
  GLattice characters;  // X with its Galois action
  IntMatrix roots;      // n x r
  IntMatrix coroots;    // n x r

  [[nodiscard]] size_t rank() const { return characters.rank(); }
  [[nodiscard]] size_t semisimple_rank() const { return roots.cols(); }
  [[nodiscard]] const GroupPtr& group() const { return characters.group(); }
  [[nodiscard]] GLattice cocharacters() const { return dual(characters); }
};

struct ReductiveDatum {
  std::string label;
  std::optional<RootDatum> root_datum;
  std::optional<FgGModule> direct_pi1;
  bool torus = false;  // only consulted for direct input

  [[nodiscard]] const GroupPtr& group() const {
    return root_datum ? root_datum->group() : direct_pi1->group();
  }
  [[nodiscard]] bool is_torus() const { return root_datum ? root_datum->semisimple_rank() == 0 : torus; }
};

struct Diagnostics {
  std::vector<std::string> problems;
  [[nodiscard]] bool ok() const { return problems.empty(); }
};

inline Diagnostics validate_root_datum(const RootDatum& rd) {
  Diagnostics d;
  const size_t n = rd.rank(), r = rd.roots.cols();
  if (rd.roots.rows() != n || rd.coroots.rows() != n) {
    d.problems.push_back("roots and coroots must have " + std::to_string(n) + " coordinates");
    return d;
  }
  if (rd.coroots.cols() != r) {
    d.problems.push_back("number of roots (" + std::to_string(r) + ") differs from number of coroots (" +
                         std::to_string(rd.coroots.cols()) + ")");
    return d;
  }
  IntMatrix c = transpose(rd.roots) * rd.coroots;
  auto pair_name = [](size_t i, size_t j) {
    return "<alpha_" + std::to_string(i + 1) + ", alpha_" + std::to_string(j + 1) + "^vee>";
  };
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      if (i == j && c(i, i) != Integer(2))
        d.problems.push_back("pairing " + pair_name(i, i) + " = " + c(i, i).str() + ", expected 2");
      if (i != j && c(i, j).sign() > 0)
        d.problems.push_back("pairing " + pair_name(i, j) + " = " + c(i, j).str() + " is positive");
      if (i != j && c(i, j).is_zero() != c(j, i).is_zero())
        d.problems.push_back("pairings " + pair_name(i, j) + " and " + pair_name(j, i) + " are not both zero");
    }
  if (d.ok()) {
    // finite type: every principal minor positive
    for (size_t mask = 1; mask < (size_t{1} << r); ++mask) {
      std::vector<size_t> idx;
      for (size_t i = 0; i < r; ++i)
        if (mask >> i & 1U) idx.push_back(i);
      IntMatrix sub = select_columns(select_rows(c, idx), idx);
      if (determinant(sub).sign() <= 0) {
        d.problems.push_back("Cartan matrix is not of finite type (a principal minor is not positive)");
        break;
      }
    }
  }
  const auto& g = *rd.group();
  const auto dual_gens = dual_generator_action(rd.characters.module());
  for (size_t s = 0; s < g.num_generators(); ++s) {
    const IntMatrix& a = rd.characters.generator_action()[s];
    const IntMatrix& b = dual_gens[s];
    if (transpose(a) * b != identity_matrix(n))
      d.problems.push_back("generator " + std::to_string(s + 1) + " does not preserve the pairing");
    IntMatrix ra = a * rd.roots, cb = b * rd.coroots;
    for (size_t i = 0; i < r; ++i) {
      std::optional<size_t> target;
      for (size_t j = 0; j < r && !target; ++j)
        if (ra.column(i) == rd.roots.column(j)) target = j;
      if (!target) {
        d.problems.push_back("generator " + std::to_string(s + 1) + " sends alpha_" + std::to_string(i + 1) +
                             " outside the simple roots");
      } else if (cb.column(i) != rd.coroots.column(*target)) {
        d.problems.push_back("generator " + std::to_string(s + 1) + " permutes roots and coroots differently at alpha_" +
                             std::to_string(i + 1));
      }
    }
  }
  return d;
}

// Coroot lattice inside the cocharacters: Coker[coroots -> Y].
inline FgGModule pi1_borovoi(const RootDatum& rd) {
  auto diag = validate_root_datum(rd);
  if (!diag.ok()) throw InputError("invalid root datum: " + diag.problems.front());
  GLattice y = rd.cocharacters();
  return FgGModule(rd.group(), rd.rank(), y.generator_action(), rd.coroots);
}

inline FgGModule pi1(const ReductiveDatum& d) { return d.root_datum ? pi1_borovoi(*d.root_datum) : *d.direct_pi1; }

struct Pi1RoundTrip {
  FgGModule via_resolution;  // Coker[S+ -> P+]
  FgGModule direct;
  Resolution resolution;
  bool induced_iso = false;    // P+ -> pi1 induces an isomorphism Coker -> pi1
  bool battery_equal = false;  // identical invariant batteries
  [[nodiscard]] bool agree() const { return induced_iso && battery_equal; }
};

inline Pi1RoundTrip pi1_round_trip(const ReductiveDatum& d, const ResolutionOptions& opt = {}) {
  Pi1RoundTrip t;
  t.direct = pi1(d);
  t.resolution = coflasque_resolution(t.direct, opt);
  const auto& p = t.resolution.middle;
  t.via_resolution = FgGModule(p.group(), p.rank(), p.generator_action(), t.resolution.inclusion.matrix);
  GModuleMap induced(t.via_resolution, t.direct, t.resolution.projection.matrix);
  t.induced_iso = is_isomorphism(induced);
  t.battery_equal = invariant_battery(t.via_resolution) == invariant_battery(t.direct);
  return t;
}

inline FgGModule pi1_via_resolution(const ReductiveDatum& d) { return pi1_round_trip(d).via_resolution; }

struct TwoRouteResult {
  FiniteAbelianGroup route_a, route_b;
  std::optional<FiniteAbelianGroup> route_c;
  [[nodiscard]] bool agree() const { return route_a == route_b && (!route_c || *route_c == route_a); }
  [[nodiscard]] const FiniteAbelianGroup& value() const { return route_a; }
};

// Coker[(P*)^G -> (S*)^G] from a coflasque resolution of pi1.
inline FiniteAbelianGroup pic_from_resolution(const Resolution& r) {
  auto q = dualize_resolution(r);
  const Subgroup whole = r.right.group()->whole();
  IntMatrix bp = invariants_sublattice(q.p_star, whole);
  IntMatrix bs = invariants_sublattice(q.s_star, whole);
  return Subquotient(bs, q.p_to_s.matrix * bp).group();
}

inline FiniteAbelianGroup local_h1(const ReductiveDatum& d) { return coinvariants(pi1(d)).structure().torsion(); }

inline TwoRouteResult pic_group(const ReductiveDatum& d) {
  FgGModule p = pi1(d);
  TwoRouteResult out;
  out.route_a = pic_from_resolution(coflasque_resolution(p));
  out.route_b = coinvariants(p).structure().torsion();
  if (!out.agree())
    throw InvariantViolation("Pic routes disagree: " + out.route_a.to_string() + " vs " + out.route_b.to_string());
  return out;
}

// The character lattice T* of a torus datum.
inline FgGModule torus_characters(const ReductiveDatum& d) {
  if (d.root_datum) return d.root_datum->characters.module();
  return dual(to_lattice(*d.direct_pi1).lattice).module();
}

inline TwoRouteResult brauer_nr(const ReductiveDatum& d) {
  FgGModule p = pi1(d);
  Resolution r = coflasque_resolution(p);
  TwoRouteResult out;
  out.route_a = h_i(p.group()->whole(), dual(r.left).module(), 1).group;
  out.route_b = sha1_omega_qz_dual(p);
  if (d.is_torus()) out.route_c = sha_omega(2, torus_characters(d));
  if (!out.agree()) {
    std::string msg = "Brauer routes disagree: " + out.route_a.to_string() + " vs " + out.route_b.to_string();
    if (out.route_c) msg += " vs " + out.route_c->to_string();
    throw InvariantViolation(msg);
  }
  return out;
}

struct Classification {
  bool is_torus = false;
  bool is_semisimple = false;
  bool is_simply_connected = false;
  Certainty is_quasi_trivial = Certainty::Unknown;
  bool is_coflasque = false;
  std::string quasi_trivial_reason;
};

inline Classification classify(const ReductiveDatum& d, const PermutationSearchOptions& opt = {}) {
  FgGModule p = pi1(d);
  Classification c;
  c.is_torus = d.is_torus();
  c.is_semisimple = p.structure().is_finite();
  c.is_simply_connected = p.structure().is_trivial();
  auto split = torsion_free_split(p);
  const bool torsion_free = split.torsion.structure().is_trivial();
  if (!torsion_free) {
    c.is_quasi_trivial = Certainty::No;
    c.quasi_trivial_reason = "pi1 has torsion";
    c.is_coflasque = false;
  } else {
    // a torus keeps the permutation certificate of its preset construction
    GLattice free = d.root_datum && d.is_torus() ? d.root_datum->cocharacters() : split.free_quotient;
    auto v = is_permutation(free, opt);
    c.is_quasi_trivial = v.verdict;
    c.quasi_trivial_reason = v.reason;
    c.is_coflasque = is_coflasque(free).holds;
  }
  return c;
}

struct MuResult {
  FgGModule torsion;     // torsion of pi1
  FgGModule saturation;  // saturation of the coroot lattice modulo coroots
  bool agree = false;
};

inline MuResult mu_minus_one(const RootDatum& rd) {
  MuResult m;
  m.torsion = torsion_free_split(pi1_borovoi(rd)).torsion;
  GLattice y = rd.cocharacters();
  // saturation as the double annihilator: {y : l(y) = 0 whenever l kills the coroots}
  IntMatrix annihilator = kernel_basis(transpose(rd.coroots));
  IntMatrix sat = kernel_basis(transpose(annihilator));
  std::vector<IntMatrix> act =
      sat.cols() ? detail::restrict_action(y.generator_action(), sat) : std::vector<IntMatrix>(y.generator_action().size());
  auto coords = IntegerSolver(sat).solve_columns(rd.coroots);
  m.saturation = FgGModule(rd.group(), sat.cols(), std::move(act), *coords);
  m.agree = invariant_battery(m.torsion) == invariant_battery(m.saturation);
  if (!m.agree)
    throw InvariantViolation("torsion of pi1 (" + m.torsion.structure().to_string() +
                             ") differs from the coroot saturation quotient (" + m.saturation.structure().to_string() + ")");
  return m;
}

// Rank of {y in Y : <alpha, y> = 0 for every root}.
inline size_t root_orthogonal_rank(const RootDatum& rd) {
  return rd.rank() - (rd.roots.cols() ? matrix_rank(rd.roots) : 0);
}

// Map on pi1 induced by a cocharacter map f : Y1 -> Y2 (rows = rank Y2).
inline GModuleMap pi1_map(const RootDatum& d1, const RootDatum& d2, const IntMatrix& f) {
  if (d1.group() != d2.group()) throw InputError("pi1_map: root data over different Galois groups");
  if (f.rows() != d2.rank() || f.cols() != d1.rank()) throw InputError("pi1_map: matrix shape mismatch");
  if (!lattice_contains(d2.coroots, f * d1.coroots))
    throw InputError("pi1_map: coroot lattice not mapped into coroot lattice");
  return GModuleMap(pi1_borovoi(d1), pi1_borovoi(d2), f);
}

// ---------------------------------------------------------------- presets

inline IntMatrix cartan_type_a(size_t r) {
  IntMatrix c(r, r);
  for (size_t i = 0; i < r; ++i) {
    c(i, i) = 2;
    if (i + 1 < r) c(i, i + 1) = c(i + 1, i) = -1;
  }
  return c;
}

inline std::vector<IntMatrix> trivial_action(const GroupPtr& g, size_t n) {
  return std::vector<IntMatrix>(g->num_generators(), identity_matrix(n));
}

inline RootDatum make_root_datum(GLattice characters, IntMatrix roots, IntMatrix coroots) {
  RootDatum rd{std::move(characters), std::move(roots), std::move(coroots)};
  auto diag = validate_root_datum(rd);
  if (!diag.ok()) throw InputError("invalid root datum: " + diag.problems.front());
  return rd;
}

inline RootDatum make_root_datum(const GroupPtr& g, std::vector<IntMatrix> action, IntMatrix roots, IntMatrix coroots) {
  const size_t n = roots.rows();
  return make_root_datum(GLattice(g, n, std::move(action)), std::move(roots), std::move(coroots));
}

// Reversal of the Dynkin diagram of A_{r}, as a permutation matrix.
inline IntMatrix diagram_flip(size_t r) {
  IntMatrix p(r, r);
  for (size_t i = 0; i < r; ++i) p(r - 1 - i, i) = 1;
  return p;
}

inline GroupPtr flip_group() { return named_group("C2"); }

struct PresetParams {
  long n = 0;
  long d = 0;
  long rank = 0;
  std::string group;
  friend bool operator==(const PresetParams&, const PresetParams&) = default;
};

inline ReductiveDatum preset_gl(long n) {
  if (n < 1) throw InputError("GL needs n >= 1");
  auto g = FiniteGroup::trivial();
  IntMatrix roots(n, n - 1);
  for (long i = 0; i + 1 < n; ++i) {
    roots(i, i) = 1;
    roots(i + 1, i) = -1;
  }
  return {"GL" + std::to_string(n), make_root_datum(g, trivial_action(g, n), roots, roots), std::nullopt};
}

// SL_n / mu_d: cocharacters Q^vee + Z (n/d) w_1^vee, in coordinates of a basis of d Y.
inline ReductiveDatum preset_sl_mod_mu(long n, long d, std::string label = {}) {
  if (n < 2) throw InputError("SL needs n >= 2");
  if (d < 1 || n % d != 0) throw InputError("SL_mod_mu needs d dividing n");
  const size_t r = n - 1;
  auto g = FiniteGroup::trivial();
  IntMatrix c = cartan_type_a(r);
  IntMatrix gens = Integer(d) * identity_matrix(r);
  IntMatrix w(r, 1);
  for (size_t j = 0; j < r; ++j) w(j, 0) = Integer(static_cast<long>(n - 1 - j));
  IntMatrix b = image_basis(hstack(gens, w));  // basis of d Y in coroot coordinates
  IntegerSolver solver(b);
  IntMatrix coroots = *solver.solve_columns(Integer(d) * identity_matrix(r));
  IntMatrix cb = c * b;
  IntMatrix roots(r, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      if (!(cb(i, j) % Integer(d)).is_zero()) throw std::logic_error("SL_mod_mu: non-integral root");
      roots(j, i) = cb(i, j) / Integer(d);
    }
  if (label.empty()) label = "SL" + std::to_string(n) + "/mu" + std::to_string(d);
  return {label, make_root_datum(g, trivial_action(g, r), roots, coroots), std::nullopt};
}

inline ReductiveDatum preset_sl(long n) { return preset_sl_mod_mu(n, 1, "SL" + std::to_string(n)); }
inline ReductiveDatum preset_pgl(long n) { return preset_sl_mod_mu(n, n, "PGL" + std::to_string(n)); }

// Sp_n (n even): roots e_i - e_{i+1}, 2 e_r; coroots e_i - e_{i+1}, e_r.
inline ReductiveDatum preset_sp(long n) {
  if (n < 2 || n % 2) throw InputError("Sp needs an even n >= 2");
  const size_t r = n / 2;
  auto g = FiniteGroup::trivial();
  IntMatrix roots(r, r), coroots(r, r);
  for (size_t i = 0; i + 1 < r; ++i) {
    roots(i, i) = coroots(i, i) = 1;
    roots(i + 1, i) = coroots(i + 1, i) = -1;
  }
  roots(r - 1, r - 1) = 2;
  coroots(r - 1, r - 1) = 1;
  return {"Sp" + std::to_string(n), make_root_datum(g, trivial_action(g, r), roots, coroots), std::nullopt};
}

// Quasi-split SU_n: simply connected A_{n-1} in fundamental-weight
// coordinates, Z/2 acting by the diagram flip.
inline ReductiveDatum preset_su(long n) {
  if (n < 2) throw InputError("SU needs n >= 2");
  const size_t r = n - 1;
  auto g = flip_group();
  IntMatrix roots = transpose(cartan_type_a(r));
  return {"SU" + std::to_string(n) + "(quasi-split)",
          make_root_datum(g, {diagram_flip(r)}, roots, identity_matrix(r)), std::nullopt};
}

// Quasi-split PGU_n: adjoint A_{n-1} in root coordinates with the flip.
inline ReductiveDatum preset_pgu(long n) {
  if (n < 2) throw InputError("PGU needs n >= 2");
  const size_t r = n - 1;
  auto g = flip_group();
  return {"PGU" + std::to_string(n) + "(quasi-split)",
          make_root_datum(g, {diagram_flip(r)}, identity_matrix(r), cartan_type_a(r)), std::nullopt};
}

inline ReductiveDatum preset_torus_split(long rank, const std::string& group = "1") {
  if (rank < 0) throw InputError("torus rank must be non-negative");
  auto g = named_group(group.empty() ? "1" : group);
  std::string label = "split torus of rank " + std::to_string(rank);
  if (g->order() > 1) label += " over " + group;
  return {label, make_root_datum(permutation_module(g, std::vector<Subgroup>(rank, g->whole())), IntMatrix(rank, 0),
                                 IntMatrix(rank, 0)),
          std::nullopt};
}

// Weil restriction of G_m: characters Z[G].
inline ReductiveDatum preset_torus_norm(const std::string& group) {
  auto g = named_group(group);
  const size_t n = g->order();
  return {"norm torus for " + group,
          make_root_datum(permutation_module(g, {g->trivial_subgroup()}), IntMatrix(n, 0), IntMatrix(n, 0)),
          std::nullopt};
}

// Norm-one torus: characters Z[G]/Z N, on the basis of images of e_x, x != 1,
// where e_1 = -(sum of the others).
inline ReductiveDatum preset_torus_norm_one(const std::string& group) {
  auto g = named_group(group);
  const size_t n = g->order();
  if (n < 2) throw InputError("norm-one torus needs a nontrivial group");
  std::vector<IntMatrix> act;
  for (size_t s : g->generators()) {
    IntMatrix m(n - 1, n - 1);
    for (size_t x = 1; x < n; ++x) {
      size_t y = g->mul(s, x);
      if (y == g->identity()) {
        for (size_t r = 0; r + 1 < n; ++r) m(r, x - 1) = -1;
      } else {
        m(y - 1, x - 1) = 1;
      }
    }
    act.push_back(std::move(m));
  }
  return {"norm-one torus for " + group, make_root_datum(g, act, IntMatrix(n - 1, 0), IntMatrix(n - 1, 0)),
          std::nullopt};
}

inline ReductiveDatum preset(const std::string& name, const PresetParams& p) {
  auto reject = [&](bool present, const char* param) {
    if (present) throw InputError("preset " + name + " does not take the parameter " + param);
  };
  const bool uses_n = name != "torus_split" && name != "torus_norm" && name != "torus_norm_one";
  if (name != "custom") {
    reject(!uses_n && p.n != 0, "n");
    reject(name != "SL_mod_mu" && p.d != 0, "d");
    reject(name != "torus_split" && p.rank != 0, "rank");
    reject(uses_n && !p.group.empty(), "group");
  }
  if (name == "GL") return preset_gl(p.n);
  if (name == "SL") return preset_sl(p.n);
  if (name == "PGL") return preset_pgl(p.n);
  if (name == "SL_mod_mu") return preset_sl_mod_mu(p.n, p.d);
  if (name == "Sp") return preset_sp(p.n);
  if (name == "SU_quasi_split") return preset_su(p.n);
  if (name == "PGU_quasi_split") return preset_pgu(p.n);
  if (name == "torus_split") return preset_torus_split(p.rank, p.group);
  if (name == "torus_norm") return preset_torus_norm(p.group);
  if (name == "torus_norm_one") return preset_torus_norm_one(p.group);
  if (name == "custom") throw InputError("custom data is given inline, with \"group\" and \"root_datum\"");
  throw InputError("unknown preset: " + name);
}

struct CatalogEntry {
  std::string name;
  PresetParams params;
};

inline std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> c = {
      {"GL", {2, 0, 0, ""}},          {"GL", {3, 0, 0, ""}},          {"SL", {2, 0, 0, ""}},
      {"SL", {5, 0, 0, ""}},          {"PGL", {2, 0, 0, ""}},         {"PGL", {3, 0, 0, ""}},
      {"SL_mod_mu", {4, 2, 0, ""}},   {"Sp", {4, 0, 0, ""}},          {"SU_quasi_split", {3, 0, 0, ""}},
      {"SU_quasi_split", {4, 0, 0, ""}}, {"PGU_quasi_split", {3, 0, 0, ""}}, {"torus_split", {0, 0, 2, "1"}},
  };
  for (const char* g : {"C2", "C4", "V4", "S3"}) {
    c.push_back({"torus_split", {0, 0, 2, g}});
    c.push_back({"torus_norm", {0, 0, 0, g}});
    c.push_back({"torus_norm_one", {0, 0, 0, g}});
  }
  return c;
}

inline std::string describe(const CatalogEntry& e) {
  std::string s = e.name;
  if (e.params.n) s += " n=" + std::to_string(e.params.n);
  if (e.params.d) s += " d=" + std::to_string(e.params.d);
  if (e.name == "torus_split") s += " rank=" + std::to_string(e.params.rank);
  if (!e.params.group.empty()) s += " group=" + e.params.group;
  return s;
}

}  // namespace flasque
