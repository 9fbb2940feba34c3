#pragma once

// Coflasque and flasque resolutions of finitely generated G-modules, the
// dualized four-term character sequence, and resolution comparison.

#include "flasque/cohomology.hpp"
#include "flasque/random.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flasque {

enum class ResolutionKind { Coflasque, Flasque };

inline std::string to_string(ResolutionKind k) { return k == ResolutionKind::Coflasque ? "coflasque" : "flasque"; }

// 0 -> left -> middle -> right -> 0
struct Resolution {
  ResolutionKind kind = ResolutionKind::Coflasque;
  GLattice left;
  GLattice middle;
  FgGModule right;
  GModuleMap inclusion;   // left -> middle
  GModuleMap projection;  // middle -> right
};

struct ExactnessAudit {
  bool composite_zero = false;
  bool injective = false;
  bool surjective = false;
  bool middle_exact = false;
  [[nodiscard]] bool ok() const { return composite_zero && injective && surjective && middle_exact; }
};

// Audits 0 -> A -f-> B -g-> C -> 0.
inline ExactnessAudit audit_short_exact(const GModuleMap& f, const GModuleMap& g) {
  ExactnessAudit a;
  a.composite_zero = lattice_contains(g.target.relations(), g.matrix * f.matrix);
  a.injective = is_injective(f);
  a.surjective = is_surjective(g);
  IntMatrix ker = detail::solutions_modulo(g.matrix, g.target.relations());
  a.middle_exact = lattice_contains(hstack(f.matrix, f.target.relations()), ker);
  return a;
}

// Exactness at B of A -f-> B -g-> C (image of f equals kernel of g).
inline bool exact_at(const GModuleMap& f, const GModuleMap& g) {
  if (!lattice_contains(g.target.relations(), g.matrix * f.matrix)) return false;
  IntMatrix ker = detail::solutions_modulo(g.matrix, g.target.relations());
  return lattice_contains(hstack(f.matrix, f.target.relations()), ker);
}

struct ResolutionOptions {
  // Add copies of Z[G/h] only for generators of M^h not already hit by the
  // part of P built so far. When false, every generator of every M^h is used.
  bool greedy = true;
  // Process subgroup representatives in a seeded random order instead of by
  // decreasing order.
  std::optional<uint64_t> shuffle_seed;
};

namespace detail {

// Ambient generators of M^h, as a subquotient of the ambient lattice.
inline Subquotient invariant_subquotient(const FgGModule& m, const Subgroup& h, const IntMatrix& extra_sub) {
  const size_t n = m.rank();
  IntMatrix eq(0, n);
  for (size_t s : h.generators()) eq = vstack(eq, m.action(s) - identity_matrix(n));
  IntMatrix z = solutions_modulo(eq, repeat_diagonal(m.relations(), h.generators().size()));
  return Subquotient(hstack(z, m.relations()), hstack(extra_sub, m.relations()));
}

}  // namespace detail

// 0 -> S+ -> P+ -> M -> 0 with P+ a sum of coset lattices mapped by
// evaluation e_{gh} -> g m for chosen generators m of M^h. P+^h -> M^h is
// onto for every h, which forces H^1(h, S+) = 0.
inline Resolution coflasque_resolution(const FgGModule& m, const ResolutionOptions& opt = {}) {
  const GroupPtr& gp = m.group();
  const auto& g = *gp;
  const size_t n = m.rank();
  std::vector<Subgroup> order = g.subgroup_reps();
  std::reverse(order.begin(), order.end());
  if (opt.shuffle_seed) {
    Rng rng(*opt.shuffle_seed);
    rng.shuffle(order);
  }
  std::vector<Subgroup> blocks;
  std::vector<IntVector> values;   // the vector m attached to each block
  IntMatrix phi(n, 0);
  for (const auto& h : order) {
    IntMatrix hit(n, 0);
    if (opt.greedy) {
      // image of P^h: h-orbit sums of every block
      for (size_t b = 0; b < blocks.size(); ++b) {
        CosetAction act = g.coset_action(blocks[b]);
        std::vector<bool> seen(act.degree(), false);
        for (size_t c = 0; c < act.degree(); ++c) {
          if (seen[c]) continue;
          IntVector sum(n);
          for (size_t x : h.elements()) {
            size_t d = act.image[x][c];
            if (seen[d]) continue;
            seen[d] = true;
            IntVector v = m.action(act.representatives[d]) * std::span<const Integer>(values[b]);
            for (size_t r = 0; r < n; ++r) sum[r] += v[r];
          }
          hit = hstack(hit, column_matrix(sum));
        }
      }
    }
    Subquotient q = detail::invariant_subquotient(m, h, hit);
    const IntMatrix& gens = q.generators();
    for (size_t j = 0; j < gens.cols(); ++j) {
      IntVector v = gens.column(j);
      CosetAction act = g.coset_action(h);
      IntMatrix cols(n, act.degree());
      for (size_t c = 0; c < act.degree(); ++c)
        cols.set_column(c, m.action(act.representatives[c]) * std::span<const Integer>(v));
      phi = hstack(phi, cols);
      blocks.push_back(h);
      values.push_back(std::move(v));
    }
  }
  GLattice p = permutation_module(gp, blocks);
  IntMatrix k = detail::solutions_modulo(phi, m.relations());
  GLattice s = sublattice(p.module(), k);
  Resolution r;
  r.kind = ResolutionKind::Coflasque;
  r.left = s;
  r.middle = p;
  r.right = m;
  r.inclusion = GModuleMap(s.module(), p.module(), k);
  r.projection = GModuleMap(p.module(), m, phi);
  return r;
}

// 0 -> P -> F -> M -> 0 with P permutation and F flasque, by pushout:
// from 0 -> N -> P0 -> M -> 0 (coflasque) and the dual of a coflasque
// resolution of N*, i.e. 0 -> N -> P1 -> Q -> 0 with P1 permutation and Q
// flasque, set F = (P1 + P0) / {(i(x), -j(x))}.
inline Resolution flasque_resolution(const FgGModule& m, const ResolutionOptions& opt = {}) {
  const GroupPtr& gp = m.group();
  Resolution r0 = coflasque_resolution(m, opt);
  const GLattice& nl = r0.left;
  Resolution r1 = coflasque_resolution(dual(nl).module(), opt);
  GLattice p1 = dual(r1.middle);
  IntMatrix iota = transpose(r1.projection.matrix);  // N -> P1
  const IntMatrix& j = r0.inclusion.matrix;           // N -> P0
  const size_t a = p1.rank(), b = r0.middle.rank();
  std::vector<IntMatrix> gens;
  for (size_t s = 0; s < gp->num_generators(); ++s)
    gens.push_back(block_diagonal(p1.generator_action()[s], r0.middle.generator_action()[s]));
  FgGModule e(gp, a + b, std::move(gens), vstack(iota, -j));
  if (!e.structure().torsion().is_trivial()) throw InvariantViolation("pushout of the flasque construction has torsion");
  LatticeQuotient f = to_lattice(e);
  IntMatrix emb = f.projection * vstack(identity_matrix(a), IntMatrix(b, a));
  IntMatrix proj = hstack(IntMatrix(m.rank(), a), r0.projection.matrix) * f.section;
  Resolution r;
  r.kind = ResolutionKind::Flasque;
  r.left = p1;
  r.middle = f.lattice;
  r.right = m;
  r.inclusion = GModuleMap(p1.module(), f.lattice.module(), emb);
  r.projection = GModuleMap(f.lattice.module(), m, proj);
  return r;
}

struct ResolutionAudit {
  ExactnessAudit exactness;
  bool permutation_certified = false;  // valid certificate on the permutation term
  bool end_condition = false;          // left coflasque, or middle flasque
  std::string detail;
  [[nodiscard]] bool ok() const { return exactness.ok() && permutation_certified && end_condition; }
};

inline ResolutionAudit audit_resolution(const Resolution& r) {
  ResolutionAudit a;
  a.exactness = audit_short_exact(r.inclusion, r.projection);
  if (r.kind == ResolutionKind::Coflasque) {
    a.permutation_certified = certificate_valid(r.middle);
    auto v = is_coflasque(r.left);
    a.end_condition = v.holds;
    if (!v.holds) a.detail = "kernel has H^1 = " + v.witness_group.to_string();
  } else {
    a.permutation_certified = certificate_valid(r.left);
    auto v = is_flasque(r.middle);
    a.end_condition = v.holds;
    if (!v.holds) a.detail = "middle has dual H^1 = " + v.witness_group.to_string();
  }
  return a;
}

// 0 -> T* -> P* -> S* -> mu* -> 0
struct FourTermSequence {
  GLattice t_star, p_star, s_star;
  FgGModule mu_star;
  GModuleMap t_to_p, p_to_s, s_to_mu;
  FgGModule m_star;  // cokernel of T* -> P*
};

inline FourTermSequence dualize_resolution(const Resolution& r) {
  if (r.kind != ResolutionKind::Coflasque) throw std::invalid_argument("dualize_resolution expects a coflasque resolution");
  FourTermSequence q;
  q.p_star = dual(r.middle);
  q.s_star = dual(r.left);
  IntMatrix it = transpose(r.inclusion.matrix);  // P* -> S*
  IntMatrix kt = kernel_basis(it);
  q.t_star = sublattice(q.p_star.module(), kt);
  q.mu_star = FgGModule(r.left.group(), q.s_star.rank(), q.s_star.generator_action(), it);
  q.t_to_p = GModuleMap(q.t_star.module(), q.p_star.module(), kt);
  q.p_to_s = GModuleMap(q.p_star.module(), q.s_star.module(), it);
  q.s_to_mu = GModuleMap(q.s_star.module(), q.mu_star, identity_matrix(q.s_star.rank()));
  q.m_star = FgGModule(r.left.group(), q.p_star.rank(), q.p_star.generator_action(), kt);
  return q;
}

struct FourTermAudit {
  bool exact_t = false, exact_p = false, exact_s = false, exact_mu = false;
  bool mu_matches_torsion_dual = false;  // mu* against Hom(torsion(pi1), Q/Z)
  bool rank_matches = false;             // rank T* = free rank of pi1
  bool s_star_flasque = false;
  [[nodiscard]] bool ok() const {
    return exact_t && exact_p && exact_s && exact_mu && mu_matches_torsion_dual && rank_matches && s_star_flasque;
  }
};

inline FourTermAudit audit_four_term(const FourTermSequence& q, const FgGModule& pi1) {
  FourTermAudit a;
  a.exact_t = is_injective(q.t_to_p);
  a.exact_p = exact_at(q.t_to_p, q.p_to_s);
  a.exact_s = exact_at(q.p_to_s, q.s_to_mu);
  a.exact_mu = is_surjective(q.s_to_mu);
  a.rank_matches = q.t_star.rank() == pi1.structure().free_rank();
  FgGModule tors = torsion_free_split(pi1).torsion;
  FgGModule expected = tors.rank() ? finite_dual(tors) : tors;
  a.mu_matches_torsion_dual = invariant_battery(q.mu_star) == invariant_battery(expected);
  a.s_star_flasque = is_flasque(q.s_star).holds;
  return a;
}

struct ResolutionComparison {
  std::vector<Subgroup> subgroups;
  std::vector<FiniteAbelianGroup> first, second;
  bool consistent = true;
};

// Coflasque resolutions are compared through H^1(h, S*), flasque ones
// through H^1(h, F); both are independent of the resolution.
inline ResolutionComparison compare_resolutions(const Resolution& r1, const Resolution& r2) {
  if (r1.kind != r2.kind) throw std::invalid_argument("compare_resolutions: resolutions of different kinds");
  if (!r1.right.same_object(r2.right)) throw std::invalid_argument("compare_resolutions: different right-hand modules");
  auto probe = [](const Resolution& r) {
    return r.kind == ResolutionKind::Coflasque ? dual(r.left).module() : r.middle.module();
  };
  CohomologyEngine e1(probe(r1)), e2(probe(r2));
  ResolutionComparison out;
  for (const auto& h : r1.right.group()->subgroup_reps()) {
    out.subgroups.push_back(h);
    out.first.push_back(e1.space(h, 1).H.group());
    out.second.push_back(e2.space(h, 1).H.group());
    if (out.first.back() != out.second.back()) out.consistent = false;
  }
  return out;
}

}  // namespace flasque
