#pragma once

// Finitely generated abelian groups in canonical invariant-factor form, and
// subquotients L/K of Z^n with explicit coordinate maps.

#include "flasque/zlinalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace flasque {

// Z/d_1 x ... x Z/d_k x Z^r with 1 < d_1 | d_2 | ... | d_k.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  // Canonicalizes an arbitrary product of cyclic groups; orders of 1 are dropped
  // and orders of 0 count as free factors.
  static FiniteAbelianGroup from_cyclic_orders(const std::vector<Integer>& orders, size_t free_rank = 0) {
    std::vector<Integer> finite;
    for (const auto& o : orders) {
      if (o.is_zero()) ++free_rank;
      else if (!abs(o).is_one()) finite.push_back(abs(o));
    }
    FiniteAbelianGroup g;
    g.free_rank_ = free_rank;
    if (finite.empty()) return g;
    IntMatrix d = diagonal_matrix(finite);
    auto snf = smith_normal_form(d, false);
    g.factors_ = snf.invariant_factors;
    return g;
  }

  // Only for factor lists already satisfying the divisibility chain.
  static FiniteAbelianGroup from_invariant_factors(std::vector<Integer> factors, size_t free_rank) {
    for (size_t i = 0; i < factors.size(); ++i) {
      if (compare(factors[i], Integer(1)) <= 0)
        throw std::invalid_argument("invariant factors must exceed 1");
      if (i && !(factors[i] % factors[i - 1]).is_zero())
        throw std::invalid_argument("invariant factors must form a divisibility chain");
    }
    FiniteAbelianGroup g;
    g.factors_ = std::move(factors);
    g.free_rank_ = free_rank;
    return g;
  }

  [[nodiscard]] const std::vector<Integer>& invariant_factors() const { return factors_; }
  [[nodiscard]] size_t free_rank() const { return free_rank_; }
  [[nodiscard]] bool is_trivial() const { return factors_.empty() && free_rank_ == 0; }
  [[nodiscard]] bool is_finite() const { return free_rank_ == 0; }

  [[nodiscard]] Integer order() const {
    if (free_rank_) throw std::domain_error("order of an infinite group");
    Integer o = 1;
    for (const auto& d : factors_) o *= d;
    return o;
  }
  [[nodiscard]] Integer exponent() const {
    if (free_rank_) return Integer(0);
    return factors_.empty() ? Integer(1) : factors_.back();
  }
  [[nodiscard]] FiniteAbelianGroup torsion() const { return from_invariant_factors(factors_, 0); }

  [[nodiscard]] std::string to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    for (const auto& d : factors_) {
      if (!s.empty()) s += " x ";
      s += "Z/" + d.str();
    }
    if (free_rank_) {
      if (!s.empty()) s += " x ";
      s += free_rank_ == 1 ? std::string("Z") : "Z^" + std::to_string(free_rank_);
    }
    return s;
  }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.factors_ == b.factors_;
  }
  friend bool operator!=(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) { return !(a == b); }

  friend FiniteAbelianGroup direct_sum(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    std::vector<Integer> all = a.factors_;
    all.insert(all.end(), b.factors_.begin(), b.factors_.end());
    return from_cyclic_orders(all, a.free_rank_ + b.free_rank_);
  }

 private:
  std::vector<Integer> factors_;
  size_t free_rank_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const FiniteAbelianGroup& g) { return os << g.to_string(); }

// Structure of Z^rows / image(a).
inline FiniteAbelianGroup cokernel_structure(const IntMatrix& a) {
  auto snf = smith_normal_form(a, false);
  return FiniteAbelianGroup::from_invariant_factors(snf.invariant_factors, a.rows() - snf.rank);
}

// The subquotient L/K of Z^n, where L is spanned by the columns of `lattice`
// and K (contained in L) by the columns of `sub`. Elements of L are mapped to
// canonical coordinates: one residue per invariant factor, then one integer
// per free factor.
class Subquotient {
 public:
  Subquotient() = default;

  Subquotient(const IntMatrix& lattice, const IntMatrix& sub) : dim_(lattice.rows()) {
    if (sub.cols() && sub.rows() != dim_) throw std::invalid_argument("Subquotient: ambient mismatch");
    basis_ = image_basis(lattice);
    solver_ = std::make_shared<IntegerSolver>(basis_);
    const size_t k = basis_.cols();
    IntMatrix coords(k, 0);
    if (sub.cols()) {
      auto c = solver_->solve_columns(sub);
      if (!c) throw std::invalid_argument("Subquotient: sublattice not contained in lattice");
      coords = image_basis(*c);
    }
    auto snf = smith_normal_form(coords, true);
    transform_ = std::move(snf.U);
    for (size_t i = 0; i < k; ++i) {
      if (i < snf.rank) {
        if (snf.D(i, i).is_one()) continue;
        kept_.push_back(i);
        moduli_.push_back(snf.D(i, i));
      } else {
        kept_.push_back(i);
        moduli_.push_back(Integer(0));
      }
    }
    sub_ = sub.cols() ? basis_ * coords : IntMatrix(dim_, 0);
    std::vector<Integer> factors;
    size_t free = 0;
    for (const auto& m : moduli_) {
      if (m.is_zero()) ++free;
      else factors.push_back(m);
    }
    group_ = FiniteAbelianGroup::from_invariant_factors(factors, free);
    IntMatrix uinv = k ? unimodular_inverse(transform_) : IntMatrix(0, 0);
    generators_ = basis_ * select_columns(uinv, kept_);
  }

  [[nodiscard]] size_t ambient_dim() const { return dim_; }
  [[nodiscard]] const FiniteAbelianGroup& group() const { return group_; }
  [[nodiscard]] const IntMatrix& lattice_basis() const { return basis_; }
  [[nodiscard]] const IntMatrix& sub_generators() const { return sub_; }
  // Ambient representatives of the canonical generators.
  [[nodiscard]] const IntMatrix& generators() const { return generators_; }
  [[nodiscard]] const std::vector<Integer>& moduli() const { return moduli_; }
  [[nodiscard]] size_t canonical_dim() const { return kept_.size(); }

  [[nodiscard]] bool contains(std::span<const Integer> x) const { return solver_->solvable(x); }

  [[nodiscard]] IntVector coordinates(std::span<const Integer> x) const {
    auto c = solver_->solve(x);
    if (!c) throw std::invalid_argument("Subquotient: element outside the lattice");
    IntVector y = transform_ * std::span<const Integer>(*c);
    IntVector out(kept_.size());
    for (size_t j = 0; j < kept_.size(); ++j) {
      out[j] = y[kept_[j]];
      if (!moduli_[j].is_zero()) out[j] = mod_floor(out[j], moduli_[j]);
    }
    return out;
  }

  [[nodiscard]] bool is_zero_element(std::span<const Integer> x) const {
    for (const auto& c : coordinates(x))
      if (!c.is_zero()) return false;
    return true;
  }

  // Matrix of the induced map in canonical coordinates, for an ambient map
  // `f` (target.ambient_dim x ambient_dim) sending L into L' and K into K'.
  [[nodiscard]] IntMatrix induced_matrix(const IntMatrix& f, const Subquotient& target) const {
    IntMatrix images = f * generators_;
    IntMatrix out(target.canonical_dim(), canonical_dim());
    for (size_t j = 0; j < canonical_dim(); ++j) out.set_column(j, target.coordinates(images.column(j)));
    return out;
  }

  // Kernel of the induced map, as a subquotient with the same K.
  [[nodiscard]] Subquotient kernel_of(const IntMatrix& f, const Subquotient& target) const {
    IntMatrix m = induced_matrix(f, target);
    const size_t a = canonical_dim(), b = target.canonical_dim();
    IntMatrix rel(b, b);
    for (size_t i = 0; i < b; ++i) rel(i, i) = target.moduli_[i];
    IntMatrix k = kernel_basis(hstack(m, -rel));
    IntMatrix lam = submatrix(k, 0, 0, a, k.cols());
    return Subquotient(hstack(generators_ * lam, sub_), sub_);
  }

  // Image of the induced map inside the target, as a subquotient of the target ambient.
  [[nodiscard]] Subquotient image_in(const IntMatrix& f, const Subquotient& target) const {
    return Subquotient(hstack(f * basis_, target.sub_), target.sub_);
  }

  [[nodiscard]] bool induces_injection(const IntMatrix& f, const Subquotient& target) const {
    return kernel_of(f, target).group().is_trivial();
  }
  [[nodiscard]] bool induces_surjection(const IntMatrix& f, const Subquotient& target) const {
    return lattice_contains(hstack(f * basis_, target.sub_), target.basis_);
  }

 private:
  size_t dim_ = 0;
  IntMatrix basis_, sub_, transform_, generators_;
  std::shared_ptr<const IntegerSolver> solver_;
  std::vector<size_t> kept_;
  std::vector<Integer> moduli_;
  FiniteAbelianGroup group_;
};

}  // namespace flasque
