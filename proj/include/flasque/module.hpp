#pragma once

// G-lattices, finitely generated G-modules given by equivariant presentations
// Z^n / im(R), and equivariant maps between them.

#include "flasque/abelian.hpp"
#include "flasque/group.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flasque {

namespace detail {

// Solutions of E x = 0 modulo the column span of `rel` (rows of E), i.e. the
// projection of ker [E | -rel] onto the x block, as a Hermite basis.
inline IntMatrix solutions_modulo(const IntMatrix& e, const IntMatrix& rel) {
  const size_t n = e.cols();
  if (e.rows() == 0) return identity_matrix(n);
  if (rel.cols() == 0) return kernel_basis(e);
  IntMatrix k = kernel_basis(hstack(e, -rel));
  return image_basis(submatrix(k, 0, 0, n, k.cols()));
}

// Action of each matrix on the sublattice spanned by the columns of `basis`,
// in basis coordinates. The sublattice must be stable.
inline std::vector<IntMatrix> restrict_action(const std::vector<IntMatrix>& action, const IntMatrix& basis) {
  IntegerSolver solver(basis);
  std::vector<IntMatrix> out;
  for (const auto& a : action) {
    auto x = solver.solve_columns(a * basis);
    if (!x) throw std::logic_error("restrict_action: sublattice is not stable");
    out.push_back(std::move(*x));
  }
  return out;
}

}  // namespace detail

// Z^n / im(R) with a G-action lifted to Z^n. Immutable; copies share state.
class FgGModule {
 public:
  FgGModule() = default;

  FgGModule(GroupPtr group, size_t rank, std::vector<IntMatrix> generator_action, IntMatrix relations = IntMatrix())
      : impl_(std::make_shared<Impl>()) {
    auto& d = *impl_;
    d.group = std::move(group);
    d.rank = rank;
    d.gens = std::move(generator_action);
    d.relations = relations.cols() ? std::move(relations) : IntMatrix(rank, 0);
    validate();
  }

  [[nodiscard]] bool valid() const { return static_cast<bool>(impl_); }
  [[nodiscard]] const GroupPtr& group() const { return impl_->group; }
  [[nodiscard]] size_t rank() const { return impl_->rank; }
  [[nodiscard]] const IntMatrix& relations() const { return impl_->relations; }
  [[nodiscard]] const std::vector<IntMatrix>& generator_action() const { return impl_->gens; }
  // Lifted action of an arbitrary group element.
  [[nodiscard]] const IntMatrix& action(size_t element) const { return impl_->elements.at(element); }
  [[nodiscard]] bool is_lattice() const { return impl_->relation_rank == 0; }
  [[nodiscard]] const FiniteAbelianGroup& structure() const { return impl_->structure; }
  [[nodiscard]] bool same_object(const FgGModule& o) const { return impl_ == o.impl_; }

 private:
  struct Impl {
    GroupPtr group;
    size_t rank = 0;
    std::vector<IntMatrix> gens;
    IntMatrix relations;
    std::vector<IntMatrix> elements;
    size_t relation_rank = 0;
    FiniteAbelianGroup structure;
  };

  void validate() {
    auto& d = *impl_;
    if (!d.group) throw std::invalid_argument("module without a group");
    const auto& g = *d.group;
    if (d.gens.size() != g.num_generators())
      throw std::invalid_argument("module needs one action matrix per group generator (" +
                                  std::to_string(g.num_generators()) + "), got " + std::to_string(d.gens.size()));
    for (size_t s = 0; s < d.gens.size(); ++s)
      if (d.gens[s].rows() != d.rank || d.gens[s].cols() != d.rank)
        throw std::invalid_argument("action matrix for generator " + std::to_string(s) + " is not " +
                                    std::to_string(d.rank) + "x" + std::to_string(d.rank));
    if (d.relations.rows() != d.rank) throw std::invalid_argument("relation matrix row count differs from rank");
    d.relation_rank = matrix_rank(d.relations);
    d.structure = cokernel_structure(d.relations);
    const bool lattice = d.relation_rank == 0;
    std::optional<IntegerSolver> rel_solver;
    if (!lattice) rel_solver.emplace(d.relations);
    auto congruent = [&](const IntMatrix& a, const IntMatrix& b) {
      if (lattice) return a == b;
      IntMatrix diff = a - b;
      for (size_t c = 0; c < diff.cols(); ++c)
        if (!rel_solver->solvable(diff.column(c))) return false;
      return true;
    };
    for (size_t s = 0; s < d.gens.size(); ++s) {
      if (lattice && !is_unimodular(d.gens[s]))
        throw std::invalid_argument("action matrix for generator " + std::to_string(s) + " is not unimodular");
      if (!lattice) {
        IntMatrix img = d.gens[s] * d.relations;
        for (size_t c = 0; c < img.cols(); ++c)
          if (!rel_solver->solvable(img.column(c)))
            throw std::invalid_argument("action of generator " + std::to_string(s) +
                                        " does not preserve the relation lattice");
      }
    }
    d.elements.assign(g.order(), IntMatrix());
    d.elements[g.identity()] = identity_matrix(d.rank);
    for (size_t e = 1; e < g.order(); ++e) d.elements[e] = d.elements[g.parent(e)] * d.gens[g.parent_generator(e)];
    for (size_t e = 0; e < g.order(); ++e)
      for (size_t s = 0; s < d.gens.size(); ++s)
        if (!congruent(d.elements[e] * d.gens[s], d.elements[g.mul(e, g.generators()[s])]))
          throw std::invalid_argument("action matrices violate a group relation (element " + std::to_string(e) +
                                      " times generator " + std::to_string(s) + ")");
  }

  std::shared_ptr<Impl> impl_;
};

// Records that the standard basis is a disjoint union of coset bases G/h,
// block by block, ordered as in coset_action(h).
struct PermutationCertificate {
  std::vector<Subgroup> blocks;
};

// A torsion-free G-module, optionally carrying a permutation certificate.
class GLattice {
 public:
  GLattice() = default;
  GLattice(GroupPtr group, size_t rank, std::vector<IntMatrix> generator_action,
           std::optional<PermutationCertificate> certificate = std::nullopt)
      : module_(std::move(group), rank, std::move(generator_action)), certificate_(std::move(certificate)) {}

  // Adopts a module whose relation matrix is zero.
  static GLattice from_module(const FgGModule& m) {
    if (!m.is_lattice()) throw std::invalid_argument("module has relations; use to_lattice for torsion-free quotients");
    if (m.relations().cols() == 0) {
      GLattice l;
      l.module_ = m;
      return l;
    }
    return GLattice(m.group(), m.rank(), m.generator_action());
  }

  [[nodiscard]] const FgGModule& module() const { return module_; }
  [[nodiscard]] const GroupPtr& group() const { return module_.group(); }
  [[nodiscard]] size_t rank() const { return module_.rank(); }
  [[nodiscard]] const std::vector<IntMatrix>& generator_action() const { return module_.generator_action(); }
  [[nodiscard]] const IntMatrix& action(size_t element) const { return module_.action(element); }
  [[nodiscard]] const std::optional<PermutationCertificate>& certificate() const { return certificate_; }

  operator const FgGModule&() const { return module_; }  // NOLINT

 private:
  FgGModule module_;
  std::optional<PermutationCertificate> certificate_;
};

// An equivariant map of presentations: `matrix` is target.rank x source.rank.
struct GModuleMap {
  FgGModule source;
  FgGModule target;
  IntMatrix matrix;

  GModuleMap() = default;
  GModuleMap(FgGModule s, FgGModule t, IntMatrix m, bool check = true)
      : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
    if (check) validate();
  }

  void validate() const {
    if (source.group() != target.group()) throw std::invalid_argument("map between modules over different groups");
    if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
      throw std::invalid_argument("map matrix has shape " + std::to_string(matrix.rows()) + "x" +
                                  std::to_string(matrix.cols()) + ", expected " + std::to_string(target.rank()) +
                                  "x" + std::to_string(source.rank()));
    if (!lattice_contains(target.relations(), matrix * source.relations()))
      throw std::invalid_argument("map does not send relations to relations");
    for (size_t s = 0; s < source.generator_action().size(); ++s) {
      IntMatrix diff = matrix * source.generator_action()[s] - target.generator_action()[s] * matrix;
      if (!lattice_contains(target.relations(), diff))
        throw std::invalid_argument("map is not equivariant for generator " + std::to_string(s));
    }
  }
};

inline GModuleMap compose(const GModuleMap& g, const GModuleMap& f) {
  return GModuleMap(f.source, g.target, g.matrix * f.matrix);
}

// Elements of the module as a subquotient of its ambient lattice.
inline Subquotient as_subquotient(const FgGModule& m) { return Subquotient(identity_matrix(m.rank()), m.relations()); }

inline bool is_injective(const GModuleMap& f) {
  return as_subquotient(f.source).induces_injection(f.matrix, as_subquotient(f.target));
}
inline bool is_surjective(const GModuleMap& f) {
  return as_subquotient(f.source).induces_surjection(f.matrix, as_subquotient(f.target));
}
inline bool is_isomorphism(const GModuleMap& f) { return is_injective(f) && is_surjective(f); }

// Action of generator s on the contragredient: rho(s^-1)^T.
inline std::vector<IntMatrix> dual_generator_action(const FgGModule& m) {
  const auto& g = *m.group();
  std::vector<IntMatrix> out;
  for (size_t s = 0; s < g.num_generators(); ++s) out.push_back(transpose(m.action(g.inverse(g.generators()[s]))));
  return out;
}

inline GLattice permutation_module(const GroupPtr& g, const std::vector<Subgroup>& blocks) {
  size_t n = 0;
  std::vector<CosetAction> actions;
  for (const auto& h : blocks) {
    if (h.parent() != g.get()) throw std::invalid_argument("permutation_module: foreign subgroup");
    actions.push_back(g->coset_action(h));
    n += actions.back().degree();
  }
  std::vector<IntMatrix> gens;
  for (size_t s : g->generators()) {
    IntMatrix m(n, n);
    size_t off = 0;
    for (const auto& a : actions) {
      for (size_t c = 0; c < a.degree(); ++c) m(off + a.image[s][c], off + c) = 1;
      off += a.degree();
    }
    gens.push_back(std::move(m));
  }
  return GLattice(g, n, std::move(gens), PermutationCertificate{blocks});
}

inline GLattice permutation_module(const GroupPtr& g, const std::vector<std::pair<Subgroup, size_t>>& blocks) {
  std::vector<Subgroup> flat;
  for (const auto& [h, k] : blocks)
    for (size_t i = 0; i < k; ++i) flat.push_back(h);
  return permutation_module(g, flat);
}

// Does the certificate describe the lattice's actual action?
inline bool certificate_valid(const GLattice& m) {
  if (!m.certificate()) return false;
  GLattice expected = permutation_module(m.group(), m.certificate()->blocks);
  return expected.rank() == m.rank() && expected.generator_action() == m.generator_action();
}

inline GLattice trivial_lattice(const GroupPtr& g, size_t rank) {
  return GLattice(g, rank, std::vector<IntMatrix>(g->num_generators(), identity_matrix(rank)));
}

// Contragredient lattice. Permutation matrices are orthogonal, so a
// permutation certificate stays valid.
inline GLattice dual(const GLattice& m) {
  return GLattice(m.group(), m.rank(), dual_generator_action(m.module()), m.certificate());
}

// Saturated basis (columns) of the sublattice fixed by h.
inline IntMatrix invariants_sublattice(const GLattice& m, const Subgroup& h) {
  const size_t n = m.rank();
  IntMatrix stacked(0, n);
  for (size_t s : h.generators()) stacked = vstack(stacked, m.action(s) - identity_matrix(n));
  return kernel_basis(stacked);
}

inline FgGModule direct_sum(const FgGModule& a, const FgGModule& b) {
  if (a.group() != b.group()) throw std::invalid_argument("direct_sum: modules over different groups");
  std::vector<IntMatrix> gens;
  for (size_t s = 0; s < a.generator_action().size(); ++s)
    gens.push_back(block_diagonal(a.generator_action()[s], b.generator_action()[s]));
  return FgGModule(a.group(), a.rank() + b.rank(), std::move(gens), block_diagonal(a.relations(), b.relations()));
}

inline GLattice direct_sum(const GLattice& a, const GLattice& b) {
  std::optional<PermutationCertificate> cert;
  if (a.certificate() && b.certificate()) {
    cert = *a.certificate();
    cert->blocks.insert(cert->blocks.end(), b.certificate()->blocks.begin(), b.certificate()->blocks.end());
  }
  std::vector<IntMatrix> gens;
  for (size_t s = 0; s < a.generator_action().size(); ++s)
    gens.push_back(block_diagonal(a.generator_action()[s], b.generator_action()[s]));
  return GLattice(a.group(), a.rank() + b.rank(), std::move(gens), std::move(cert));
}

// M / (extra relations); the added relations must span a G-stable subgroup mod R.
inline FgGModule quotient(const FgGModule& m, const IntMatrix& extra) {
  return FgGModule(m.group(), m.rank(), m.generator_action(), hstack(m.relations(), extra));
}

// The lattice spanned by the columns of `basis` inside a lattice, in basis coordinates.
inline GLattice sublattice(const FgGModule& m, const IntMatrix& basis) {
  if (!m.is_lattice()) throw std::invalid_argument("sublattice: ambient module has relations");
  return GLattice(m.group(), basis.cols(), detail::restrict_action(m.generator_action(), basis));
}

// Coinvariants M_h. The G-action descends when h is normal; otherwise the
// quotient is returned as a module over the trivial group.
inline FgGModule coinvariants(const FgGModule& m, const Subgroup& h) {
  const size_t n = m.rank();
  IntMatrix extra(n, 0);
  for (size_t s : h.generators()) extra = hstack(extra, m.action(s) - identity_matrix(n));
  if (h.parent()->is_normal(h)) return quotient(m, extra);
  return FgGModule(FiniteGroup::trivial(), n, {}, hstack(m.relations(), extra));
}

inline FgGModule coinvariants(const FgGModule& m) { return coinvariants(m, m.group()->whole()); }

// SNF-reduced presentation: relations become diagonal and unit factors are
// dropped. to_normal maps old ambient coordinates to new ones, from_normal
// gives a lift back.
struct NormalizedModule {
  FgGModule module;
  IntMatrix to_normal;
  IntMatrix from_normal;
};

inline NormalizedModule normalize(const FgGModule& m) {
  const size_t n = m.rank();
  auto snf = smith_normal_form(m.relations(), true);
  std::vector<size_t> kept;
  std::vector<Integer> mods;
  for (size_t i = 0; i < n; ++i) {
    if (i < snf.rank) {
      if (snf.D(i, i).is_one()) continue;
      kept.push_back(i);
      mods.push_back(snf.D(i, i));
    } else {
      kept.push_back(i);
    }
  }
  IntMatrix uinv = unimodular_inverse(snf.U);
  IntMatrix to = select_rows(snf.U, kept);
  IntMatrix from = select_columns(uinv, kept);
  std::vector<IntMatrix> gens;
  for (const auto& a : m.generator_action()) gens.push_back(to * a * from);
  IntMatrix rel(kept.size(), mods.size());
  for (size_t j = 0; j < mods.size(); ++j) rel(j, j) = mods[j];
  return {FgGModule(m.group(), kept.size(), std::move(gens), rel), std::move(to), std::move(from)};
}

// Identifies a module with torsion-free underlying group with a lattice.
struct LatticeQuotient {
  GLattice lattice;
  IntMatrix projection;  // module ambient -> lattice
  IntMatrix section;     // lattice -> module ambient
};

inline LatticeQuotient to_lattice(const FgGModule& m) {
  if (!m.structure().torsion().is_trivial()) throw std::invalid_argument("to_lattice: module has torsion");
  if (m.relations().cols() == 0 || m.is_lattice()) {
    return {GLattice::from_module(m), identity_matrix(m.rank()), identity_matrix(m.rank())};
  }
  auto nm = normalize(m);
  return {GLattice(m.group(), nm.module.rank(), nm.module.generator_action()), nm.to_normal, nm.from_normal};
}

struct TorsionSplit {
  FgGModule torsion;
  GLattice free_quotient;
  IntMatrix inclusion;   // torsion ambient -> module ambient
  IntMatrix projection;  // module ambient -> free quotient
};

inline TorsionSplit torsion_free_split(const FgGModule& m) {
  const IntMatrix sat = saturation(m.relations());
  auto coords = IntegerSolver(sat).solve_columns(m.relations());
  if (!coords) throw std::logic_error("torsion_free_split: relations outside their saturation");
  std::vector<IntMatrix> tors_action = sat.cols() ? detail::restrict_action(m.generator_action(), sat)
                                                   : std::vector<IntMatrix>(m.generator_action().size());
  FgGModule tors(m.group(), sat.cols(), std::move(tors_action), *coords);
  auto free = to_lattice(quotient(m, sat));
  return {std::move(tors), std::move(free.lattice), sat, std::move(free.projection)};
}

// Hom(M, Z/n) with (s f)(x) = f(s^-1 x). A homomorphism is a row vector y
// with y^T R = 0 mod n; the ambient lattice is the set of such y, and
// `basis` records it inside Z^rank.
struct HomModule {
  FgGModule module;
  IntMatrix basis;
};

inline HomModule hom_to_zmod_with_basis(const FgGModule& m, const Integer& n) {
  if (n.sign() <= 0) throw std::invalid_argument("hom_to_zmod: modulus must be positive");
  const size_t r = m.rank();
  IntMatrix big = n * identity_matrix(r);
  IntMatrix basis = identity_matrix(r);
  if (m.relations().cols()) {
    const size_t k = m.relations().cols();
    IntMatrix sys = hstack(transpose(m.relations()), -(n * identity_matrix(k)));
    IntMatrix ker = kernel_basis(sys);
    basis = image_basis(hstack(submatrix(ker, 0, 0, r, ker.cols()), big));
  }
  IntegerSolver solver(basis);
  auto rel = solver.solve_columns(big);
  std::vector<IntMatrix> gens;
  for (const auto& a : dual_generator_action(m)) {
    auto x = solver.solve_columns(a * basis);
    if (!x) throw std::logic_error("hom_to_zmod: dual action leaves the homomorphism lattice");
    gens.push_back(std::move(*x));
  }
  return {FgGModule(m.group(), r, std::move(gens), *rel), std::move(basis)};
}

inline FgGModule hom_to_zmod(const FgGModule& m, const Integer& n) { return hom_to_zmod_with_basis(m, n).module; }

inline FgGModule finite_dual(const FgGModule& a) {
  if (!a.structure().is_finite()) throw std::invalid_argument("finite_dual: module is infinite");
  return hom_to_zmod(a, a.structure().exponent());
}

}  // namespace flasque
