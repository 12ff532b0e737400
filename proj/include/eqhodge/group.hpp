#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "eqhodge/error.hpp"

namespace eqhodge {

/// Finite group given by its multiplication table; table[a][b] = a·b.
/// Elements are the indices 0..order-1.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<int>>{{0}}) {}

  /// Checks closure, associativity, identity and inverses.
  explicit FiniteGroup(std::vector<std::vector<int>> table) : table_(std::move(table)) {
    const int n = order();
    if (n == 0) throw Error("cover", "FiniteGroup", "empty multiplication table");
    for (const auto& row : table_) {
      if (static_cast<int>(row.size()) != n) throw Error("cover", "FiniteGroup", "multiplication table is not square");
      for (int v : row)
        if (v < 0 || v >= n) throw Error("cover", "FiniteGroup", "table entry out of range");
    }
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
      bool ok = true;
      for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
      if (ok) identity_ = e;
    }
    if (identity_ < 0) throw Error("cover", "FiniteGroup", "no identity element");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw Error("cover", "FiniteGroup", "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
    inverse_.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b)
        if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[static_cast<std::size_t>(a)] = b;
      if (inverse_[static_cast<std::size_t>(a)] < 0) throw Error("cover", "FiniteGroup", "element " + std::to_string(a) + " has no inverse");
    }
  }

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  bool contains(int a) const { return a >= 0 && a < order(); }

 private:
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
  std::vector<int> inverse_;
};

/// Z/m with element i = i mod m.
inline FiniteGroup cyclic_group(int m) {
  if (m < 1) throw Error("cover", "cyclic_group", "order must be positive");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % m;
  return FiniteGroup(std::move(t));
}

/// Permutations of {0,1,2} in lexicographic order:
/// 0=id, 1=(1 2), 2=(0 1), 3=(0 1 2), 4=(0 2 1), 5=(0 2).
/// Product is composition: (a·b)(x) = a(b(x)).
inline FiniteGroup symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = perms.size();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[static_cast<std::size_t>(x)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(x)])];
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return FiniteGroup(std::move(t));
}

struct ConjugacyClass {
  int representative = 0;
  std::vector<int> members;  // ascending
  std::size_t size() const { return members.size(); }
  bool contains(int h) const { return std::binary_search(members.begin(), members.end(), h); }
};

/// Partition of G into conjugacy classes, ordered by minimal member; the
/// representative is that minimal member, so the class of the identity
/// comes first whenever the identity has index 0.
inline std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& G) {
  const int n = G.order();
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  std::vector<ConjugacyClass> out;
  for (int g = 0; g < n; ++g) {
    if (owner[static_cast<std::size_t>(g)] >= 0) continue;
    ConjugacyClass c;
    c.representative = g;
    for (int h = 0; h < n; ++h) {
      const int conj = G.mul(G.mul(h, g), G.inverse(h));
      if (owner[static_cast<std::size_t>(conj)] < 0) {
        owner[static_cast<std::size_t>(conj)] = static_cast<int>(out.size());
        c.members.push_back(conj);
      }
    }
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

inline const ConjugacyClass& class_of(const std::vector<ConjugacyClass>& classes, int g) {
  for (const auto& c : classes)
    if (c.contains(g)) return c;
  throw Error("cover", "class_of", "element " + std::to_string(g) + " not in any class");
}

}  // namespace eqhodge
