#pragma once

// Enumerated finite groups given by permutation or unimodular matrix
// generators, with subgroup and coset machinery.

#include "flasque/zlinalg.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace flasque {

constexpr size_t kDefaultOrderCap = 64;

// Images of 0..d-1. Composition (a*b)(x) = a(b(x)).
using Permutation = std::vector<int>;

inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

inline bool is_permutation_of_degree(const Permutation& p, size_t degree) {
  if (p.size() != degree) return false;
  std::vector<bool> seen(degree, false);
  for (int x : p) {
    if (x < 0 || static_cast<size_t>(x) >= degree || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

// Parses one-line cycle notation over {1..degree}, e.g. "(1 2)(3 4 5)".
// "()" and "" give the identity.
inline Permutation parse_cycles(const std::string& text, size_t degree) {
  Permutation p(degree);
  for (size_t i = 0; i < degree; ++i) p[i] = static_cast<int>(i);
  std::vector<int> cycle;
  bool open = false;
  std::string token;
  auto flush_token = [&] {
    if (token.empty()) return;
    int v = std::stoi(token);
    if (v < 1 || static_cast<size_t>(v) > degree)
      throw std::invalid_argument("cycle entry " + token + " outside 1.." + std::to_string(degree));
    cycle.push_back(v - 1);
    token.clear();
  };
  for (char ch : text) {
    if (ch == '(') {
      if (open) throw std::invalid_argument("nested parenthesis in cycle notation: " + text);
      open = true;
      cycle.clear();
    } else if (ch == ')') {
      if (!open) throw std::invalid_argument("unbalanced parenthesis in cycle notation: " + text);
      flush_token();
      Permutation c(degree);
      for (size_t i = 0; i < degree; ++i) c[i] = static_cast<int>(i);
      for (size_t i = 0; i < cycle.size(); ++i) c[cycle[i]] = cycle[(i + 1) % cycle.size()];
      std::set<int> distinct(cycle.begin(), cycle.end());
      if (distinct.size() != cycle.size()) throw std::invalid_argument("repeated point in cycle: " + text);
      p = compose(c, p);  // product read right to left
      open = false;
    } else if (ch == ' ' || ch == ',' || ch == '\t') {
      flush_token();
    } else if (ch >= '0' && ch <= '9') {
      if (!open) throw std::invalid_argument("digit outside a cycle: " + text);
      token += ch;
    } else {
      throw std::invalid_argument("unexpected character in cycle notation: " + text);
    }
  }
  if (open) throw std::invalid_argument("unterminated cycle: " + text);
  return p;
}

inline std::string cycle_string(const Permutation& p) {
  std::string s;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    s += "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) s += " ";
      s += std::to_string(j + 1);
      first = false;
      j = static_cast<size_t>(p[j]);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// A subgroup of an enumerated group, stored as a sorted element index set.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(const FiniteGroup* parent, std::vector<size_t> elements, std::vector<size_t> generators);

  [[nodiscard]] size_t order() const { return elements_.size(); }
  [[nodiscard]] const std::vector<size_t>& elements() const { return elements_; }
  // Small generating set (no identity), chosen greedily by element order.
  [[nodiscard]] const std::vector<size_t>& generators() const { return generators_; }
  [[nodiscard]] bool contains(size_t e) const { return e < member_.size() && member_[e]; }
  [[nodiscard]] bool is_cyclic() const { return cyclic_generator_.has_value(); }
  [[nodiscard]] std::optional<size_t> cyclic_generator() const { return cyclic_generator_; }
  [[nodiscard]] const FiniteGroup* parent() const { return parent_; }
  [[nodiscard]] bool is_trivial() const { return elements_.size() == 1; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.elements_ == b.elements_;
  }

 private:
  const FiniteGroup* parent_ = nullptr;
  std::vector<size_t> elements_;
  std::vector<size_t> generators_;
  std::vector<bool> member_;
  std::optional<size_t> cyclic_generator_;
};

// The action of G on the left cosets G/H.
struct CosetAction {
  std::vector<size_t> representatives;    // smallest element index of each coset
  std::vector<size_t> coset_of;           // element -> coset index
  std::vector<std::vector<size_t>> image; // image[g][c] = coset index of g * c
  [[nodiscard]] size_t degree() const { return representatives.size(); }
};

class FiniteGroup {
 public:
  enum class Kind { Permutation, Matrix };

  FiniteGroup(const FiniteGroup&) = delete;
  FiniteGroup& operator=(const FiniteGroup&) = delete;

  static GroupPtr from_permutations(const std::vector<Permutation>& gens, size_t degree,
                                    size_t order_cap = kDefaultOrderCap, std::string name = {}) {
    for (const auto& g : gens)
      if (!is_permutation_of_degree(g, degree))
        throw std::invalid_argument("generator is not a permutation of degree " + std::to_string(degree));
    std::shared_ptr<FiniteGroup> grp(new FiniteGroup());
    grp->kind_ = Kind::Permutation;
    grp->degree_ = degree;
    grp->name_ = std::move(name);
    Permutation id(degree);
    for (size_t i = 0; i < degree; ++i) id[i] = static_cast<int>(i);
    std::map<Permutation, size_t> index;
    auto key = [](const Permutation& p) { return p; };
    grp->enumerate<Permutation>(
        id, gens, order_cap, [](const Permutation& a, const Permutation& b) { return compose(a, b); }, key,
        index, grp->perms_);
    return grp;
  }

  static GroupPtr from_matrices(const std::vector<IntMatrix>& gens, size_t order_cap = kDefaultOrderCap,
                                std::string name = {}) {
    if (gens.empty()) throw std::invalid_argument("matrix group needs at least one generator to fix the size");
    const size_t n = gens.front().rows();
    for (const auto& g : gens) {
      if (g.rows() != n || g.cols() != n)
        throw std::invalid_argument("matrix generators must be square of one size");
      if (!is_unimodular(g)) throw std::invalid_argument("matrix generator is not invertible over the integers");
    }
    std::shared_ptr<FiniteGroup> grp(new FiniteGroup());
    grp->kind_ = Kind::Matrix;
    grp->degree_ = n;
    grp->name_ = std::move(name);
    std::map<std::vector<Integer>, size_t> index;
    auto key = [](const IntMatrix& m) { return m.data(); };
    grp->enumerate<IntMatrix>(
        identity_matrix(n), gens, order_cap, [](const IntMatrix& a, const IntMatrix& b) { return a * b; }, key,
        index, grp->matrices_);
    return grp;
  }

  static GroupPtr trivial() {
    static GroupPtr g = from_permutations({}, 1, kDefaultOrderCap, "1");
    return g;
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] size_t degree() const { return degree_; }
  [[nodiscard]] size_t order() const { return table_.size(); }
  [[nodiscard]] size_t identity() const { return 0; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] size_t mul(size_t a, size_t b) const { return table_[a][b]; }
  [[nodiscard]] size_t inverse(size_t a) const { return inverse_[a]; }
  [[nodiscard]] size_t conjugate(size_t g, size_t x) const { return mul(mul(g, x), inverse(g)); }
  // Element indices of the defining generators, in input order.
  [[nodiscard]] const std::vector<size_t>& generators() const { return generators_; }
  [[nodiscard]] size_t num_generators() const { return generators_.size(); }
  // BFS parent data: element e equals mul(parent(e), generators()[parent_generator(e)]).
  [[nodiscard]] size_t parent(size_t e) const { return parent_[e]; }
  [[nodiscard]] size_t parent_generator(size_t e) const { return parent_gen_[e]; }
  [[nodiscard]] const Permutation& permutation(size_t e) const { return perms_.at(e); }
  [[nodiscard]] const IntMatrix& matrix(size_t e) const { return matrices_.at(e); }

  [[nodiscard]] size_t element_order(size_t e) const {
    size_t k = 1;
    for (size_t x = e; x != identity(); x = mul(x, e)) ++k;
    return k;
  }

  [[nodiscard]] std::string element_label(size_t e) const {
    if (kind_ == Kind::Permutation) return cycle_string(perms_[e]);
    return to_string(matrices_[e]);
  }

  [[nodiscard]] bool is_abelian() const {
    for (size_t a = 0; a < order(); ++a)
      for (size_t b = 0; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  // Closure of a set of elements; sorted element list.
  [[nodiscard]] std::vector<size_t> closure(const std::vector<size_t>& gens) const {
    std::vector<bool> in(order(), false);
    std::vector<size_t> elems{identity()};
    in[identity()] = true;
    for (size_t i = 0; i < elems.size(); ++i)
      for (size_t g : gens) {
        size_t y = mul(elems[i], g);
        if (!in[y]) {
          in[y] = true;
          elems.push_back(y);
        }
      }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  [[nodiscard]] Subgroup subgroup_from_elements(std::vector<size_t> elements) const {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (closure(elements) != elements) throw std::invalid_argument("element set is not a subgroup");
    return Subgroup(this, elements, greedy_generators(elements));
  }

  [[nodiscard]] Subgroup subgroup_generated_by(const std::vector<size_t>& gens) const {
    return subgroup_from_elements(closure(gens));
  }

  [[nodiscard]] Subgroup whole() const {
    std::vector<size_t> all(order());
    for (size_t i = 0; i < order(); ++i) all[i] = i;
    return subgroup_from_elements(all);
  }
  [[nodiscard]] Subgroup trivial_subgroup() const { return subgroup_from_elements({identity()}); }

  [[nodiscard]] bool is_normal(const Subgroup& h) const {
    for (size_t g : generators_)
      for (size_t x : h.elements())
        if (!h.contains(conjugate(g, x))) return false;
    return true;
  }

  // Every subgroup, sorted by (order, element list).
  [[nodiscard]] const std::vector<Subgroup>& all_subgroups() const {
    std::call_once(subgroups_once_, [this] { compute_subgroups(); });
    return all_subgroups_;
  }

  // One representative per conjugacy class, sorted by (order, element list).
  [[nodiscard]] const std::vector<Subgroup>& subgroup_reps() const {
    std::call_once(subgroups_once_, [this] { compute_subgroups(); });
    return reps_;
  }

  [[nodiscard]] std::vector<Subgroup> cyclic_subgroup_reps() const {
    std::vector<Subgroup> out;
    for (const auto& h : subgroup_reps())
      if (h.is_cyclic()) out.push_back(h);
    return out;
  }

  // Index into subgroup_reps() of the class containing h.
  [[nodiscard]] size_t conjugacy_class_of(const Subgroup& h) const {
    auto key = canonical_conjugate(h.elements());
    const auto& reps = subgroup_reps();
    for (size_t i = 0; i < reps.size(); ++i)
      if (canonical_conjugate(reps[i].elements()) == key) return i;
    throw std::logic_error("subgroup class not found");
  }

  [[nodiscard]] CosetAction coset_action(const Subgroup& h) const {
    if (h.parent() != this) throw std::invalid_argument("subgroup belongs to a different group");
    CosetAction act;
    const size_t n = order();
    act.coset_of.assign(n, n);
    for (size_t x = 0; x < n; ++x) {
      if (act.coset_of[x] != n) continue;
      size_t idx = act.representatives.size();
      act.representatives.push_back(x);
      for (size_t y : h.elements()) act.coset_of[mul(x, y)] = idx;
    }
    act.image.assign(n, std::vector<size_t>(act.degree()));
    for (size_t g = 0; g < n; ++g)
      for (size_t c = 0; c < act.degree(); ++c) act.image[g][c] = act.coset_of[mul(g, act.representatives[c])];
    return act;
  }

 private:
  FiniteGroup() = default;

  template <class Elem, class KeyFn, class Key>
  void enumerate(const Elem& id, const std::vector<Elem>& gens, size_t cap,
                 const std::function<Elem(const Elem&, const Elem&)>& mult, KeyFn key,
                 std::map<Key, size_t>& index, std::vector<Elem>& store) {
    store.push_back(id);
    index.emplace(key(id), 0);
    parent_.push_back(0);
    parent_gen_.push_back(0);
    for (size_t i = 0; i < store.size(); ++i) {
      for (size_t s = 0; s < gens.size(); ++s) {
        Elem y = mult(store[i], gens[s]);
        auto k = key(y);
        if (index.count(k)) continue;
        if (store.size() >= cap)
          throw std::invalid_argument("group order exceeds the configured cap of " + std::to_string(cap));
        index.emplace(std::move(k), store.size());
        store.push_back(std::move(y));
        parent_.push_back(i);
        parent_gen_.push_back(s);
      }
    }
    for (const auto& g : gens) generators_.push_back(index.at(key(g)));
    const size_t n = store.size();
    table_.assign(n, std::vector<size_t>(n));
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) table_[a][b] = index.at(key(mult(store[a], store[b])));
    inverse_.assign(n, 0);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        if (table_[a][b] == 0) inverse_[a] = b;
  }

  [[nodiscard]] std::vector<size_t> greedy_generators(const std::vector<size_t>& elements) const {
    std::vector<size_t> cand;
    for (size_t e : elements)
      if (e != identity()) cand.push_back(e);
    std::stable_sort(cand.begin(), cand.end(),
                     [this](size_t a, size_t b) { return element_order(a) > element_order(b); });
    std::vector<size_t> gens;
    std::vector<size_t> span{identity()};
    for (size_t c : cand) {
      if (std::binary_search(span.begin(), span.end(), c)) continue;
      gens.push_back(c);
      span = closure(gens);
      if (span.size() == elements.size()) break;
    }
    return gens;
  }

  [[nodiscard]] std::vector<size_t> canonical_conjugate(const std::vector<size_t>& elems) const {
    std::vector<size_t> best;
    for (size_t g = 0; g < order(); ++g) {
      std::vector<size_t> c;
      c.reserve(elems.size());
      for (size_t x : elems) c.push_back(conjugate(g, x));
      std::sort(c.begin(), c.end());
      if (best.empty() || c < best) best = std::move(c);
    }
    return best;
  }

  void compute_subgroups() const {
    std::set<std::vector<size_t>> seen;
    std::vector<std::vector<size_t>> cyclic;
    for (size_t g = 0; g < order(); ++g) {
      auto c = closure({g});
      if (seen.insert(c).second) cyclic.push_back(c);
    }
    std::vector<std::vector<size_t>> all(cyclic.begin(), cyclic.end());
    std::vector<std::vector<size_t>> frontier = all;
    while (!frontier.empty()) {
      std::vector<std::vector<size_t>> next;
      for (const auto& h : frontier) {
        for (const auto& c : cyclic) {
          if (std::includes(h.begin(), h.end(), c.begin(), c.end())) continue;
          std::vector<size_t> gens = h;
          gens.insert(gens.end(), c.begin(), c.end());
          auto j = closure(greedy_generators_unsorted(gens));
          if (seen.insert(j).second) {
            next.push_back(j);
            all.push_back(j);
          }
        }
      }
      frontier = std::move(next);
    }
    auto less = [](const std::vector<size_t>& a, const std::vector<size_t>& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    };
    std::sort(all.begin(), all.end(), less);
    std::map<std::vector<size_t>, bool> class_seen;
    for (const auto& e : all) {
      Subgroup s(this, e, greedy_generators(e));
      auto key = canonical_conjugate(e);
      if (!class_seen.count(key)) {
        class_seen[key] = true;
        reps_.push_back(s);
      }
      all_subgroups_.push_back(std::move(s));
    }
  }

  // Generators for the closure of a set; just drops elements already generated.
  [[nodiscard]] std::vector<size_t> greedy_generators_unsorted(const std::vector<size_t>& elems) const {
    std::vector<size_t> gens;
    std::vector<size_t> span{identity()};
    for (size_t e : elems) {
      if (std::binary_search(span.begin(), span.end(), e)) continue;
      gens.push_back(e);
      span = closure(gens);
    }
    return gens;
  }

  Kind kind_ = Kind::Permutation;
  size_t degree_ = 0;
  std::string name_;
  std::vector<Permutation> perms_;
  std::vector<IntMatrix> matrices_;
  std::vector<size_t> generators_;
  std::vector<size_t> parent_, parent_gen_;
  std::vector<std::vector<size_t>> table_;
  std::vector<size_t> inverse_;

  mutable std::once_flag subgroups_once_;
  mutable std::vector<Subgroup> all_subgroups_;
  mutable std::vector<Subgroup> reps_;
};

inline Subgroup::Subgroup(const FiniteGroup* parent, std::vector<size_t> elements, std::vector<size_t> generators)
    : parent_(parent), elements_(std::move(elements)), generators_(std::move(generators)) {
  member_.assign(parent_->order(), false);
  for (size_t e : elements_) member_[e] = true;
  for (size_t e : elements_)
    if (parent_->element_order(e) == elements_.size()) {
      cyclic_generator_ = e;
      break;
    }
  if (elements_.size() == 1) cyclic_generator_ = parent_->identity();
}

inline std::vector<Subgroup> subgroup_reps(const FiniteGroup& g) { return g.subgroup_reps(); }
inline std::vector<Subgroup> cyclic_subgroup_reps(const FiniteGroup& g) { return g.cyclic_subgroup_reps(); }
inline CosetAction coset_permutation_action(const FiniteGroup& g, const Subgroup& h) { return g.coset_action(h); }

inline GroupPtr group_from_generators(const std::vector<Permutation>& gens, size_t degree,
                                      size_t order_cap = kDefaultOrderCap) {
  return FiniteGroup::from_permutations(gens, degree, order_cap);
}
inline GroupPtr group_from_generators(const std::vector<IntMatrix>& gens, size_t order_cap = kDefaultOrderCap) {
  return FiniteGroup::from_matrices(gens, order_cap);
}

}  // namespace flasque
