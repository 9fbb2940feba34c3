#pragma once

// Named finite groups: every group of order at most 16, plus a few
// permutation groups used by presets.
//
// Naming: Cn cyclic, Dn dihedral of order 2n, Qn generalized quaternion of
// order n, Dic3 dicyclic of order 12, SD16 semidihedral, M16 = C8:C2 with
// x -> x^5, products written AxB.

#include "flasque/group.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace flasque {

// A group law on {0..order-1} with identity 0.
struct GroupLaw {
  size_t order = 1;
  std::function<size_t(size_t, size_t)> mul;
  std::vector<size_t> generators;
};

inline GroupLaw cyclic_law(size_t n) {
  GroupLaw l;
  l.order = n;
  l.mul = [n](size_t a, size_t b) { return (a + b) % n; };
  if (n > 1) l.generators = {1};
  return l;
}

inline GroupLaw product_law(const GroupLaw& a, const GroupLaw& b) {
  GroupLaw l;
  l.order = a.order * b.order;
  const size_t nb = b.order;
  l.mul = [a, b, nb](size_t x, size_t y) {
    return a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  };
  for (size_t g : a.generators) l.generators.push_back(g * nb);
  for (size_t g : b.generators) l.generators.push_back(g);
  return l;
}

// C_n : C_2 with x a x^-1 = a^r; elements a^i x^j encoded as j*n + i.
inline GroupLaw metacyclic_law(size_t n, size_t r) {
  GroupLaw l;
  l.order = 2 * n;
  l.mul = [n, r](size_t p, size_t q) {
    size_t i1 = p % n, j1 = p / n, i2 = q % n, j2 = q / n;
    size_t i = (i1 + (j1 ? r * i2 : i2)) % n;
    return ((j1 + j2) % 2) * n + i;
  };
  l.generators = {1 % l.order, n};
  return l;
}

// Dicyclic group of order 4m: a^{2m} = 1, x^2 = a^m, x a x^-1 = a^-1.
inline GroupLaw dicyclic_law(size_t m) {
  const size_t n = 2 * m;
  GroupLaw l;
  l.order = 2 * n;
  l.mul = [n, m](size_t p, size_t q) {
    size_t i1 = p % n, j1 = p / n, i2 = q % n, j2 = q / n;
    if (!j1) return j2 * n + (i1 + i2) % n;
    size_t i = (i1 + n - i2) % n;
    if (j2) return (i + m) % n;
    return n + i;
  };
  l.generators = {1, n};
  return l;
}

inline GroupPtr group_from_law(const GroupLaw& l, std::string name) {
  std::vector<Permutation> gens;
  for (size_t g : l.generators) {
    Permutation p(l.order);
    for (size_t x = 0; x < l.order; ++x) p[x] = static_cast<int>(l.mul(g, x));
    gens.push_back(std::move(p));
  }
  return FiniteGroup::from_permutations(gens, l.order, kDefaultOrderCap, std::move(name));
}

namespace detail {

inline GroupLaw c4_semidirect_c4() {
  GroupLaw l;
  l.order = 16;
  l.mul = [](size_t p, size_t q) {
    size_t i1 = p % 4, j1 = p / 4, i2 = q % 4, j2 = q / 4;
    size_t i = (i1 + ((j1 % 2) ? 4 - i2 : i2)) % 4;
    return ((j1 + j2) % 4) * 4 + i;
  };
  l.generators = {1, 4};
  return l;
}

// (C4 x C2) : C2 with c (i, j) c = (i, j + i mod 2); encoded (k*2 + j)*4 + i.
inline GroupLaw c4c2_semidirect_c2() {
  GroupLaw l;
  l.order = 16;
  l.mul = [](size_t p, size_t q) {
    size_t i1 = p % 4, j1 = (p / 4) % 2, k1 = p / 8;
    size_t i2 = q % 4, j2 = (q / 4) % 2, k2 = q / 8;
    size_t i = (i1 + i2) % 4, j = (j1 + j2 + k1 * i2) % 2, k = (k1 + k2) % 2;
    return (k * 2 + j) * 4 + i;
  };
  l.generators = {1, 4, 8};
  return l;
}

// Pauli group: i^k X^x Z^z encoded (z*2 + x)*4 + k; Z X = -X Z.
inline GroupLaw pauli_law() {
  GroupLaw l;
  l.order = 16;
  l.mul = [](size_t p, size_t q) {
    size_t k1 = p % 4, x1 = (p / 4) % 2, z1 = p / 8;
    size_t k2 = q % 4, x2 = (q / 4) % 2, z2 = q / 8;
    size_t k = (k1 + k2 + 2 * z1 * x2) % 4;
    return (((z1 + z2) % 2) * 2 + (x1 + x2) % 2) * 4 + k;
  };
  l.generators = {4, 8, 1};
  return l;
}

inline GroupLaw alternating4_law() {
  // elements of A4 as permutations of 4 points, enumerated by closure
  std::vector<Permutation> elems{{0, 1, 2, 3}};
  const std::vector<Permutation> gens{{1, 2, 0, 3}, {1, 0, 3, 2}};
  for (size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      Permutation y = compose(elems[i], g);
      if (std::find(elems.begin(), elems.end(), y) == elems.end()) elems.push_back(y);
    }
  GroupLaw l;
  l.order = elems.size();
  l.mul = [elems](size_t a, size_t b) {
    Permutation y = compose(elems[a], elems[b]);
    return static_cast<size_t>(std::find(elems.begin(), elems.end(), y) - elems.begin());
  };
  for (const auto& g : gens)
    l.generators.push_back(static_cast<size_t>(std::find(elems.begin(), elems.end(), g) - elems.begin()));
  return l;
}

inline GroupLaw law_by_name(const std::string& name);

inline GroupLaw product_of(const std::string& name) {
  GroupLaw l = cyclic_law(1);
  bool first = true;
  size_t start = 0;
  while (start <= name.size()) {
    size_t x = name.find('x', start);
    std::string part = name.substr(start, x == std::string::npos ? std::string::npos : x - start);
    GroupLaw f = law_by_name(part);
    l = first ? f : product_law(l, f);
    first = false;
    if (x == std::string::npos) break;
    start = x + 1;
  }
  return l;
}

inline size_t parse_index(const std::string& s, size_t from) {
  if (from >= s.size()) throw std::invalid_argument("unknown group name: " + s);
  for (size_t i = from; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("unknown group name: " + s);
  return std::stoul(s.substr(from));
}

inline GroupLaw law_by_name(const std::string& name) {
  if (name == "1" || name == "C1" || name == "trivial") return cyclic_law(1);
  if (name == "V4" || name == "K4") return product_law(cyclic_law(2), cyclic_law(2));
  if (name == "S3") return metacyclic_law(3, 2);
  if (name == "A4") return alternating4_law();
  if (name == "Q8") return dicyclic_law(2);
  if (name == "Q16") return dicyclic_law(4);
  if (name == "Dic3") return dicyclic_law(3);
  if (name == "SD16") return metacyclic_law(8, 3);
  if (name == "M16") return metacyclic_law(8, 5);
  if (name == "C4:C4") return c4_semidirect_c4();
  if (name == "(C4xC2):C2") return c4c2_semidirect_c2();
  if (name == "C4oD4" || name == "Pauli") return pauli_law();
  if (name.find('x') != std::string::npos) return product_of(name);
  if (name.size() >= 2 && name[0] == 'C') {
    size_t n = parse_index(name, 1);
    if (n == 0 || n > kDefaultOrderCap) throw std::invalid_argument("unsupported cyclic order in " + name);
    return cyclic_law(n);
  }
  if (name.size() >= 2 && name[0] == 'D') {
    size_t n = parse_index(name, 1);
    if (n < 2 || 2 * n > kDefaultOrderCap) throw std::invalid_argument("unsupported dihedral order in " + name);
    return metacyclic_law(n, n - 1);
  }
  throw std::invalid_argument("unknown group name: " + name);
}

}  // namespace detail

// Group by catalog name, realized by its left regular permutation representation.
inline GroupPtr named_group(const std::string& name) {
  if (name == "1" || name == "C1" || name == "trivial") return FiniteGroup::trivial();
  if (name == "S3") {
    return FiniteGroup::from_permutations({{1, 2, 0}, {1, 0, 2}}, 3, kDefaultOrderCap, "S3");
  }
  return group_from_law(detail::law_by_name(name), name);
}

// Every group of order <= 16 up to isomorphism, one name each.
inline std::vector<std::string> small_group_names() {
  return {"1",      "C2",    "C3",       "C4",         "V4",    "C5",    "C6",    "S3",    "C7",
          "C8",     "C4xC2", "C2xC2xC2", "D4",         "Q8",    "C9",    "C3xC3", "C10",   "D5",
          "C11",    "C12",   "C6xC2",    "D6",         "A4",    "Dic3",  "C13",   "C14",   "D7",
          "C15",    "C16",   "C4xC4",    "C8xC2",      "C4xC2xC2", "C2xC2xC2xC2", "D8", "Q16", "SD16",
          "M16",    "C4:C4", "C2xD4",    "C2xQ8",      "(C4xC2):C2", "C4oD4"};
}

}  // namespace flasque
