#pragma once

// Group cohomology in degrees 0, 1, 2 from inhomogeneous cochains, the
// flasque / coflasque / permutation predicates, and Sha-omega groups.
//
// Conventions: left modules; (df)(a,b) = a f(b) - f(ab) + f(a) and
// (df)(a,b,c) = a f(b,c) - f(ab,c) + f(a,bc) - f(a,b).
//
// Degree-1 cocycles are parametrized by their values on the generators of
// the subgroup; the remaining values follow from f(xs) = f(x) + x f(s) and
// every non-tree edge of the Cayley graph contributes an equation. Degree-2
// cochains are normalized (zero when an argument is the identity), and the
// cocycle identity is imposed for c in the generating set only, which is
// enough because the coboundary of f is itself a 3-cocycle.

#include "flasque/errors.hpp"
#include "flasque/module.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flasque {

struct CohomologyResult {
  Subgroup subgroup;
  int degree = 0;
  FiniteAbelianGroup group;
  // Ambient representatives of the canonical generators: module vectors in
  // degree 0, the values f(g) for g in subgroup().elements() in degree 1,
  // the values f(a,b) in row-major (a,b) order in degree 2.
  std::vector<IntVector> representatives;
};

class CohomologyEngine {
 public:
  struct Space {
    Subgroup h;
    int degree = 0;
    Subquotient H;                  // cocycles modulo coboundaries, in cochain coordinates
    std::vector<size_t> elements;   // h.elements()
    std::vector<size_t> nonidentity;
    IntMatrix expansion;            // degree 1: all values from generator values
  };

  explicit CohomologyEngine(const FgGModule& m) : original_(m) {
    if (m.relations().cols() == 0) {
      module_ = m;
      from_normal_ = identity_matrix(m.rank());
    } else {
      auto nm = normalize(m);
      module_ = nm.module;
      from_normal_ = nm.from_normal;
    }
  }

  [[nodiscard]] const FgGModule& module() const { return module_; }

  const Space& space(const Subgroup& h, int degree) {
    if (degree < 0 || degree > 2) throw std::invalid_argument("cohomology degree must be 0, 1 or 2");
    auto key = std::make_pair(degree, h.elements());
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    auto sp = std::make_unique<Space>(build(h, degree));
    return *cache_.emplace(key, std::move(sp)).first->second;
  }

  // Restriction from H^i(big) to H^i(small), in cochain coordinates.
  IntMatrix restriction(const Space& big, const Space& small) const {
    const size_t n = module_.rank();
    if (big.degree != small.degree) throw std::invalid_argument("restriction between different degrees");
    if (big.degree == 0) return identity_matrix(n);
    if (big.degree == 1) {
      const auto& gens = small.h.generators();
      IntMatrix out(n * gens.size(), big.H.ambient_dim());
      for (size_t j = 0; j < gens.size(); ++j) {
        size_t pos = local_index(big.elements, gens[j]);
        for (size_t r = 0; r < n; ++r)
          for (size_t c = 0; c < out.cols(); ++c) out(j * n + r, c) = big.expansion(pos * n + r, c);
      }
      return out;
    }
    const size_t mb = big.nonidentity.size(), ms = small.nonidentity.size();
    IntMatrix out(n * ms * ms, n * mb * mb);
    for (size_t a = 0; a < ms; ++a)
      for (size_t b = 0; b < ms; ++b) {
        size_t ba = local_index(big.nonidentity, small.nonidentity[a]);
        size_t bb = local_index(big.nonidentity, small.nonidentity[b]);
        for (size_t r = 0; r < n; ++r) out((a * ms + b) * n + r, (ba * mb + bb) * n + r) = 1;
      }
    return out;
  }

  CohomologyResult result(const Subgroup& h, int degree) {
    const Space& sp = space(h, degree);
    CohomologyResult res{h, degree, sp.H.group(), {}};
    const IntMatrix& gens = sp.H.generators();
    for (size_t j = 0; j < gens.cols(); ++j) res.representatives.push_back(expand(sp, gens.column(j)));
    return res;
  }

  // Sha^i_omega: classes of H^i(G) restricting to zero on every cyclic subgroup.
  Subquotient sha(int degree) {
    const auto& g = *module_.group();
    const Space& top = space(g.whole(), degree);
    Subquotient cur = top.H;
    for (const auto& c : g.cyclic_subgroup_reps()) {
      const Space& sc = space(c, degree);
      cur = cur.kernel_of(restriction(top, sc), sc.H);
      if (cur.group().is_trivial()) break;
    }
    return cur;
  }

  // Full ambient cochain for a vector of cochain coordinates.
  [[nodiscard]] IntVector expand(const Space& sp, std::span<const Integer> x) const {
    const size_t n = module_.rank(), on = original_.rank();
    auto lift = [&](const IntVector& v) { return from_normal_ * std::span<const Integer>(v); };
    auto block = [&](std::span<const Integer> v, size_t i) { return IntVector(v.begin() + i * n, v.begin() + (i + 1) * n); };
    if (sp.degree == 0) return lift(IntVector(x.begin(), x.end()));
    if (sp.degree == 1) {
      IntVector full = sp.expansion * x;
      IntVector out;
      for (size_t i = 0; i < sp.elements.size(); ++i) {
        auto v = lift(block(full, i));
        out.insert(out.end(), v.begin(), v.end());
      }
      return out;
    }
    const size_t o = sp.elements.size(), m = sp.nonidentity.size();
    IntVector out(o * o * on);
    for (size_t a = 0; a < m; ++a)
      for (size_t b = 0; b < m; ++b) {
        auto v = lift(block(x, a * m + b));
        size_t pa = local_index(sp.elements, sp.nonidentity[a]);
        size_t pb = local_index(sp.elements, sp.nonidentity[b]);
        for (size_t r = 0; r < on; ++r) out[(pa * o + pb) * on + r] = v[r];
      }
    return out;
  }

 private:
  static size_t local_index(const std::vector<size_t>& sorted, size_t e) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), e);
    if (it == sorted.end() || *it != e) throw std::logic_error("element outside subgroup");
    return static_cast<size_t>(it - sorted.begin());
  }

  Space build(const Subgroup& h, int degree) const {
    const auto& g = *module_.group();
    if (h.parent() != &g) throw std::invalid_argument("subgroup of a different group");
    const size_t n = module_.rank();
    const IntMatrix& rel = module_.relations();
    const IntMatrix id = identity_matrix(n);
    Space sp;
    sp.h = h;
    sp.degree = degree;
    sp.elements = h.elements();
    for (size_t e : sp.elements)
      if (e != g.identity()) sp.nonidentity.push_back(e);
    const auto& gens = h.generators();
    const size_t k = gens.size();

    if (degree == 0) {
      IntMatrix eq(0, n);
      for (size_t s : gens) eq = vstack(eq, module_.action(s) - id);
      IntMatrix z = detail::solutions_modulo(eq, repeat_diagonal(rel, k));
      sp.H = Subquotient(hstack(z, rel), rel);
      return sp;
    }

    if (degree == 1) {
      const size_t dim = n * k;
      std::vector<std::optional<IntMatrix>> c(g.order());
      c[g.identity()] = IntMatrix(n, dim);
      std::vector<size_t> queue{g.identity()};
      IntMatrix eq(0, dim);
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        size_t x = queue[qi];
        for (size_t j = 0; j < k; ++j) {
          size_t y = g.mul(x, gens[j]);
          IntMatrix term = *c[x];
          const IntMatrix& rx = module_.action(x);
          for (size_t r = 0; r < n; ++r)
            for (size_t q = 0; q < n; ++q) term(r, j * n + q) += rx(r, q);
          if (!c[y]) {
            c[y] = std::move(term);
            queue.push_back(y);
          } else {
            eq = vstack(eq, term - *c[y]);
          }
        }
      }
      sp.expansion = IntMatrix(n * sp.elements.size(), dim);
      for (size_t i = 0; i < sp.elements.size(); ++i) {
        const IntMatrix& ci = *c[sp.elements[i]];
        for (size_t r = 0; r < n; ++r)
          for (size_t q = 0; q < dim; ++q) sp.expansion(i * n + r, q) = ci(r, q);
      }
      IntMatrix z = detail::solutions_modulo(eq, repeat_diagonal(rel, eq.rows() / std::max<size_t>(n, 1)));
      IntMatrix d0(0, n);
      for (size_t s : gens) d0 = vstack(d0, module_.action(s) - id);
      IntMatrix b = hstack(d0, repeat_diagonal(rel, k));
      if (dim == 0) b = IntMatrix(0, 0);
      sp.H = Subquotient(z, b);
      return sp;
    }

    // degree 2, normalized cochains on the non-identity elements
    const size_t m = sp.nonidentity.size();
    const size_t dim = n * m * m;
    std::vector<size_t> loc(g.order(), SIZE_MAX);
    for (size_t i = 0; i < m; ++i) loc[sp.nonidentity[i]] = i;
    auto add = [&](IntMatrix& mat, size_t row0, const IntMatrix* coeff, int sign, size_t a, size_t b) {
      if (loc[a] == SIZE_MAX || loc[b] == SIZE_MAX) return;
      size_t col0 = (loc[a] * m + loc[b]) * n;
      for (size_t r = 0; r < n; ++r)
        for (size_t q = 0; q < n; ++q) {
          Integer v = coeff ? (*coeff)(r, q) : Integer(r == q ? 1 : 0);
          if (v.is_zero()) continue;
          if (sign > 0) mat(row0 + r, col0 + q) += v;
          else mat(row0 + r, col0 + q) -= v;
        }
    };
    IntMatrix eq(n * m * m * k, dim);
    size_t row = 0;
    for (size_t a : sp.nonidentity)
      for (size_t b : sp.nonidentity)
        for (size_t s : gens) {
          add(eq, row, &module_.action(a), +1, b, s);
          add(eq, row, nullptr, -1, g.mul(a, b), s);
          add(eq, row, nullptr, +1, a, g.mul(b, s));
          add(eq, row, nullptr, -1, a, b);
          row += n;
        }
    IntMatrix z = detail::solutions_modulo(eq, repeat_diagonal(rel, m * m * k));
    // coboundaries of normalized 1-cochains f(a), a != e
    IntMatrix d1(dim, n * m);
    for (size_t a : sp.nonidentity)
      for (size_t b : sp.nonidentity) {
        size_t r0 = (loc[a] * m + loc[b]) * n;
        auto put = [&](size_t x, const IntMatrix* coeff, int sign) {
          if (loc[x] == SIZE_MAX) return;
          for (size_t r = 0; r < n; ++r)
            for (size_t q = 0; q < n; ++q) {
              Integer v = coeff ? (*coeff)(r, q) : Integer(r == q ? 1 : 0);
              if (sign > 0) d1(r0 + r, loc[x] * n + q) += v;
              else d1(r0 + r, loc[x] * n + q) -= v;
            }
        };
        put(b, &module_.action(a), +1);
        put(g.mul(a, b), nullptr, -1);
        put(a, nullptr, +1);
      }
    IntMatrix b = hstack(d1, repeat_diagonal(rel, m * m));
    if (dim == 0) b = IntMatrix(0, 0);
    sp.H = Subquotient(z, b);
    return sp;
  }

  FgGModule original_;
  FgGModule module_;
  IntMatrix from_normal_;
  std::map<std::pair<int, std::vector<size_t>>, std::unique_ptr<Space>> cache_;
};

inline CohomologyResult h_i(const Subgroup& h, const FgGModule& m, int degree) {
  CohomologyEngine eng(m);
  return eng.result(h, degree);
}

inline FiniteAbelianGroup sha_omega(int degree, const FgGModule& m) {
  if (degree != 1 && degree != 2) throw std::invalid_argument("sha_omega: degree must be 1 or 2");
  CohomologyEngine eng(m);
  return eng.sha(degree).group();
}

// Sha^1_omega(G, Hom(M, Q/Z)), computed through the finite levels
// Hom(M, Z/m). Every class at level m comes from the colimit, and a class of
// Sha at the colimit is already represented at level m2 = |G| m1 by a class
// in Sha(m2) after one further multiplication by |G|; so the image of
// Sha(m2) -> Sha(m3) is the answer. The image of Sha(m1) -> Sha(m2) must
// agree; otherwise one more level is tried before giving up.
inline FiniteAbelianGroup sha1_omega_qz_dual(const FgGModule& m) {
  const Integer order(m.group()->order());
  Integer e = m.structure().torsion().exponent();
  struct Level {
    Integer modulus;
    HomModule hom;
    std::unique_ptr<CohomologyEngine> eng;
    NormalizedModule norm;
    Subquotient sha;
  };
  auto make = [&](const Integer& lv) {
    auto lvl = std::make_unique<Level>();
    lvl->modulus = lv;
    lvl->hom = hom_to_zmod_with_basis(m, lv);
    lvl->eng = std::make_unique<CohomologyEngine>(lvl->hom.module);
    lvl->norm = normalize(lvl->hom.module);
    lvl->sha = lvl->eng->sha(1);
    return lvl;
  };
  const size_t k = m.group()->num_generators();
  // Image of Sha at level a inside H^1(G) at level b.
  auto image = [&](const Level& a, Level& b) {
    IntMatrix amb = *IntegerSolver(b.hom.basis).solve_columns((b.modulus / a.modulus) * a.hom.basis);
    IntMatrix f = b.norm.to_normal * amb * a.norm.from_normal;
    const auto& top = b.eng->space(m.group()->whole(), 1);
    return a.sha.image_in(repeat_diagonal(f, k), top.H).group();
  };
  auto l1 = make(order * e);
  auto l2 = make(order * l1->modulus);
  auto l3 = make(order * l2->modulus);
  FiniteAbelianGroup i12 = image(*l1, *l2), i23 = image(*l2, *l3);
  if (i12 == i23) return i23;
  auto l4 = make(order * l3->modulus);
  FiniteAbelianGroup i34 = image(*l3, *l4);
  if (i34 == i23) return i23;
  throw InvariantViolation("Sha^1_omega of the Q/Z dual did not stabilize (" + i12.to_string() + ", " +
                           i23.to_string() + ", " + i34.to_string() + ")");
}

struct VanishingVerdict {
  bool holds = true;
  std::optional<Subgroup> witness;
  FiniteAbelianGroup witness_group;
};

// H^1(h, M) = 0 for every subgroup representative h.
inline VanishingVerdict h1_vanishes_everywhere(const FgGModule& m) {
  CohomologyEngine eng(m);
  for (const auto& h : m.group()->subgroup_reps()) {
    const auto& grp = eng.space(h, 1).H.group();
    if (!grp.is_trivial()) return {false, h, grp};
  }
  return {};
}

inline VanishingVerdict is_coflasque(const GLattice& m) { return h1_vanishes_everywhere(m.module()); }
inline VanishingVerdict is_flasque(const GLattice& m) { return h1_vanishes_everywhere(dual(m).module()); }

enum class Certainty { Yes, No, Unknown };

inline std::string to_string(Certainty c) {
  switch (c) {
    case Certainty::Yes: return "yes";
    case Certainty::No: return "no";
    default: return "unknown";
  }
}

struct PermutationVerdict {
  Certainty verdict = Certainty::Unknown;
  std::optional<IntMatrix> basis;  // columns: a G-permuted basis
  std::vector<Subgroup> blocks;    // stabilizers of the orbit representatives
  std::string reason;
};

struct PermutationSearchOptions {
  int coefficient_bound = 2;
  size_t candidate_budget = 20000;
  size_t vector_budget = 200000;
};

namespace detail {

inline bool saturated_independent(const IntMatrix& cols) {
  if (cols.cols() == 0) return true;
  auto snf = smith_normal_form(cols, false);
  return snf.rank == cols.cols() && snf.invariant_factors.empty();
}

}  // namespace detail

// Semi-decision for the existence of a G-permuted Z-basis.
inline PermutationVerdict is_permutation(const GLattice& m, const PermutationSearchOptions& opt = {}) {
  PermutationVerdict out;
  if (m.certificate()) {
    out.verdict = Certainty::Yes;
    out.basis = identity_matrix(m.rank());
    out.blocks = m.certificate()->blocks;
    out.reason = "construction certificate";
    return out;
  }
  const auto& g = *m.group();
  const size_t n = m.rank();
  if (auto v = is_coflasque(m); !v.holds) {
    out.verdict = Certainty::No;
    out.reason = "H^1 of a subgroup of order " + std::to_string(v.witness->order()) + " is " +
                 v.witness_group.to_string();
    return out;
  }
  if (auto v = is_flasque(m); !v.holds) {
    out.verdict = Certainty::No;
    out.reason = "H^1 of the dual on a subgroup of order " + std::to_string(v.witness->order()) + " is " +
                 v.witness_group.to_string();
    return out;
  }
  // Character comparison against sums of coset characters.
  const auto& reps = g.subgroup_reps();
  std::vector<CosetAction> acts;
  std::vector<std::vector<long>> chars;
  for (const auto& h : reps) {
    acts.push_back(g.coset_action(h));
    std::vector<long> ch(g.order());
    for (size_t e = 0; e < g.order(); ++e)
      for (size_t c = 0; c < acts.back().degree(); ++c) ch[e] += acts.back().image[e][c] == c;
    chars.push_back(std::move(ch));
  }
  std::vector<long> chi(g.order());
  for (size_t e = 0; e < g.order(); ++e) {
    Integer t = 0;
    for (size_t i = 0; i < n; ++i) t += m.action(e)(i, i);
    chi[e] = t.to_int64();
  }
  std::vector<std::vector<size_t>> candidates;
  size_t nodes = 0;
  bool exhausted = true;
  std::vector<size_t> cur;
  std::function<void(size_t, std::vector<long>&)> dfs = [&](size_t start, std::vector<long>& rest) {
    if (++nodes > opt.candidate_budget) {
      exhausted = false;
      return;
    }
    if (std::all_of(rest.begin(), rest.end(), [](long x) { return x == 0; })) {
      candidates.push_back(cur);
      return;
    }
    for (size_t i = start; i < reps.size(); ++i) {
      bool ok = true;
      for (size_t e = 0; e < g.order() && ok; ++e) ok = rest[e] >= chars[i][e];
      if (!ok) continue;
      for (size_t e = 0; e < g.order(); ++e) rest[e] -= chars[i][e];
      cur.push_back(i);
      dfs(i, rest);
      cur.pop_back();
      for (size_t e = 0; e < g.order(); ++e) rest[e] += chars[i][e];
      if (!exhausted) return;
    }
  };
  dfs(0, chi);
  if (candidates.empty() && exhausted) {
    out.verdict = Certainty::No;
    out.reason = "rational character is not a sum of coset characters";
    return out;
  }
  size_t budget = opt.vector_budget;
  const int bound = opt.coefficient_bound;
  for (auto cand : candidates) {
    // smallest orbits first
    std::sort(cand.begin(), cand.end(), [&](size_t a, size_t b) { return reps[a].order() > reps[b].order(); });
    std::vector<IntMatrix> inv;
    for (size_t i : cand) inv.push_back(invariants_sublattice(m, reps[i]));
    std::vector<Subgroup> blocks;
    std::function<std::optional<IntMatrix>(size_t, const IntMatrix&)> place =
        [&](size_t idx, const IntMatrix& acc) -> std::optional<IntMatrix> {
      if (idx == cand.size()) {
        if (abs(determinant(acc)).is_one()) return acc;
        return std::nullopt;
      }
      const Subgroup& h = reps[cand[idx]];
      const IntMatrix& b = inv[idx];
      const size_t d = b.cols();
      if (d == 0) return std::nullopt;
      std::vector<int> coeff(d, -bound);
      while (true) {
        if (budget == 0) return std::nullopt;
        --budget;
        // first nonzero coefficient positive
        size_t first = 0;
        while (first < d && coeff[first] == 0) ++first;
        if (first < d && coeff[first] > 0) {
          IntVector v(n);
          for (size_t j = 0; j < d; ++j)
            if (coeff[j])
              for (size_t r = 0; r < n; ++r) v[r] += Integer(coeff[j]) * b(r, j);
          bool stab_ok = true;
          for (size_t e = 0; e < g.order() && stab_ok; ++e) {
            bool fixed = (m.action(e) * std::span<const Integer>(v)) == v;
            stab_ok = fixed == h.contains(e);
          }
          if (stab_ok) {
            IntMatrix orbit(n, acts[cand[idx]].degree());
            for (size_t c = 0; c < orbit.cols(); ++c)
              orbit.set_column(c, m.action(acts[cand[idx]].representatives[c]) * std::span<const Integer>(v));
            IntMatrix next = hstack(acc, orbit);
            if (detail::saturated_independent(next)) {
              blocks.push_back(h);
              if (auto r = place(idx + 1, next)) return r;
              blocks.pop_back();
            }
          }
        }
        size_t j = 0;
        while (j < d && coeff[j] == bound) coeff[j++] = -bound;
        if (j == d) break;
        ++coeff[j];
      }
      return std::nullopt;
    };
    if (auto basis = place(0, IntMatrix(n, 0))) {
      out.verdict = Certainty::Yes;
      out.basis = *basis;
      out.blocks = blocks;
      out.reason = "orbit basis found by bounded search";
      return out;
    }
    if (budget == 0) break;
  }
  out.verdict = Certainty::Unknown;
  out.reason = "bounded search exhausted without a permuted basis";
  return out;
}

// Comparison data for modules over the same group: structure, and for every
// subgroup representative the groups H^0, H^1 and the coinvariant torsion.
struct InvariantBattery {
  FiniteAbelianGroup structure;
  std::vector<FiniteAbelianGroup> h0, h1;
  FiniteAbelianGroup coinvariants;

  friend bool operator==(const InvariantBattery& a, const InvariantBattery& b) {
    return a.structure == b.structure && a.h0 == b.h0 && a.h1 == b.h1 && a.coinvariants == b.coinvariants;
  }
};

inline InvariantBattery invariant_battery(const FgGModule& m) {
  InvariantBattery out;
  out.structure = m.structure();
  CohomologyEngine eng(m);
  for (const auto& h : m.group()->subgroup_reps()) {
    out.h0.push_back(eng.space(h, 0).H.group());
    out.h1.push_back(eng.space(h, 1).H.group());
  }
  out.coinvariants = coinvariants(m).structure();
  return out;
}

}  // namespace flasque
