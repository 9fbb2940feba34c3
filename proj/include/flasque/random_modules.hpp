#pragma once

// Seeded generators for property tests: small groups, permutation lattices,
// equivariant maps between them, modules built as kernels and cokernels of
// such maps, and exact 3x3 diagrams from pairs of sublattices.

#include "flasque/complexes.hpp"
#include "flasque/random.hpp"

#include <string>
#include <vector>

namespace flasque {

inline std::vector<std::string> group_names_up_to(size_t max_order) {
  std::vector<std::string> out;
  for (const auto& n : small_group_names())
    if (n != "1" && named_group(n)->order() <= max_order) out.push_back(n);
  return out;
}

// Sum of coset lattices Z[G/h] of total rank in [1, max_rank].
inline GLattice random_permutation_lattice(Rng& rng, const GroupPtr& g, size_t max_rank) {
  const auto& reps = g->subgroup_reps();
  std::vector<Subgroup> blocks;
  size_t rank = 0;
  const size_t target = 1 + rng.index(max_rank);
  while (rank < target) {
    std::vector<Subgroup> fits;
    for (const auto& h : reps)
      if (rank + g->order() / h.order() <= target) fits.push_back(h);
    const Subgroup& h = rng.pick(fits);
    blocks.push_back(h);
    rank += g->order() / h.order();
  }
  return permutation_module(g, blocks);
}

// A G-map P -> E sending the first basis vector of each block to a random
// vector fixed by that block's subgroup.
inline IntMatrix random_equivariant_map(Rng& rng, const GLattice& p, const FgGModule& e, long bound = 2) {
  const auto& g = *p.group();
  if (!p.certificate()) throw std::invalid_argument("random_equivariant_map: source needs a permutation certificate");
  IntMatrix out(e.rank(), p.rank());
  const GLattice e_lat = GLattice::from_module(e);
  size_t off = 0;
  for (const auto& h : p.certificate()->blocks) {
    IntMatrix basis = invariants_sublattice(e_lat, h);
    IntVector v(e.rank());
    for (size_t j = 0; j < basis.cols(); ++j) {
      Integer c(rng.uniform(-bound, bound));
      for (size_t r = 0; r < e.rank(); ++r) v[r] += c * basis(r, j);
    }
    CosetAction act = g.coset_action(h);
    for (size_t c = 0; c < act.degree(); ++c) out.set_column(off + c, e.action(act.representatives[c]) * std::span<const Integer>(v));
    off += act.degree();
  }
  return out;
}

enum class RandomModuleKind { Cokernel, Kernel, DualKernel };

// Cokernel of P1 -> P2, kernel of P2 -> P1, or the dual of such a kernel.
inline FgGModule random_module(Rng& rng, const GroupPtr& g, size_t max_rank = 6) {
  GLattice p1 = random_permutation_lattice(rng, g, max_rank);
  GLattice p2 = random_permutation_lattice(rng, g, max_rank);
  const auto kind = static_cast<RandomModuleKind>(rng.index(3));
  if (kind == RandomModuleKind::Cokernel) {
    IntMatrix f = random_equivariant_map(rng, p1, p2.module());
    return FgGModule(g, p2.rank(), p2.generator_action(), f);
  }
  IntMatrix f = random_equivariant_map(rng, p2, p1.module());
  IntMatrix k = kernel_basis(f);
  if (k.cols() == 0) return FgGModule(g, 0, std::vector<IntMatrix>(g->num_generators(), IntMatrix(0, 0)));
  GLattice ker = sublattice(p2.module(), k);
  return kind == RandomModuleKind::Kernel ? ker.module() : dual(ker).module();
}

struct RandomCase {
  std::string group_name;
  FgGModule module;
};

inline RandomCase random_case(uint64_t seed, size_t max_order = 12, size_t max_rank = 6) {
  Rng rng(seed);
  auto names = group_names_up_to(max_order);
  RandomCase c;
  c.group_name = rng.pick(names);
  c.module = random_module(rng, named_group(c.group_name), max_rank);
  return c;
}

// Saturated G-stable sublattice spanned by the image of a random G-map.
inline IntMatrix random_stable_sublattice(Rng& rng, const GLattice& e, size_t max_source_rank) {
  GLattice p = random_permutation_lattice(rng, e.group(), max_source_rank);
  return saturation(random_equivariant_map(rng, p, e.module()));
}

struct RandomDiagram {
  std::string group_name;
  NineDiagram diagram;
  size_t attempts = 0;
};

// E a permutation lattice, U and W from random G-maps; redrawn until
// E/(U+W) is torsion-free so that every corner is a lattice.
inline RandomDiagram random_nine_diagram(uint64_t seed, size_t max_order = 8, size_t max_rank = 6) {
  Rng rng(seed);
  auto names = group_names_up_to(max_order);
  RandomDiagram out;
  out.group_name = rng.pick(names);
  auto g = named_group(out.group_name);
  while (true) {
    ++out.attempts;
    GLattice e = random_permutation_lattice(rng, g, max_rank);
    IntMatrix u = random_stable_sublattice(rng, e, e.rank());
    IntMatrix w = random_stable_sublattice(rng, e, e.rank());
    if (!lattice_equal(lattice_sum(u, w), saturation(hstack(u, w)))) continue;
    out.diagram = nine_diagram_from_sublattices(e, u, w);
    return out;
  }
}

}  // namespace flasque
