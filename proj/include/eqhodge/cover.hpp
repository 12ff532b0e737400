#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <queue>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "eqhodge/complex.hpp"
#include "eqhodge/error.hpp"
#include "eqhodge/group.hpp"

namespace eqhodge {

/// Group labels on oriented base edges. Stored for (u,v) with u<v; the
/// reversed edge carries the inverse, unlisted edges carry the identity.
class VoltageAssignment {
 public:
  void set(int u, int v, int g) {
    if (u == v) throw Error("cover", "VoltageAssignment", "loop edge");
    if (u < v)
      values_[{u, v}] = g;
    else
      reversed_.emplace_back(u, v, g);
  }

  /// Resolves edges that were given in reverse order once the group is known.
  void normalize(const FiniteGroup& G) {
    for (const auto& [u, v, g] : reversed_) values_[{v, u}] = G.inverse(g);
    reversed_.clear();
  }

  int get(const FiniteGroup& G, int u, int v) const {
    if (u == v) return G.identity();
    const bool flip = u > v;
    auto it = values_.find(flip ? std::make_pair(v, u) : std::make_pair(u, v));
    const int g = it == values_.end() ? G.identity() : it->second;
    return flip ? G.inverse(g) : g;
  }

  const std::map<std::pair<int, int>, int>& values() const { return values_; }

 private:
  std::map<std::pair<int, int>, int> values_;
  std::vector<std::tuple<int, int, int>> reversed_;
};

/// Image of an oriented simplex under a simplicial map: target index and
/// the orientation sign picked up when re-sorting the vertex tuple.
struct SignedIndex {
  std::size_t index = 0;
  int sign = 1;
};

/// Regular covering complex built from a voltage assignment.
///
/// Cover vertex (v, g) has index v·|G| + g. The lift of base simplex
/// {v0<...<vk} at sheet g is {(v0,g), (v1, g·α(v0,v1)), ..., (vk, g·α(v0,vk))};
/// the deck transformation h acts by (v,g) -> (v, h·g).
class CoverComplex {
 public:
  const SimplicialComplex& base() const { return base_; }
  const SimplicialComplex& total() const { return total_; }
  const FiniteGroup& group() const { return group_; }
  const VoltageAssignment& voltage() const { return voltage_; }
  int dimension() const { return base_.dimension(); }
  int order() const { return group_.order(); }

  /// Total-space index of the lift of base simplex `sigma` at sheet g.
  std::size_t lift(int k, std::size_t sigma, int g) const {
    return lifts_[static_cast<std::size_t>(k)][sigma * static_cast<std::size_t>(order()) + static_cast<std::size_t>(g)];
  }
  /// Lift at the identity sheet.
  std::size_t fundamental_lift(int k, std::size_t sigma) const { return lift(k, sigma, group_.identity()); }

  std::size_t project(int k, std::size_t total_index) const { return projection_[static_cast<std::size_t>(k)][total_index]; }
  int sheet(int k, std::size_t total_index) const { return sheets_[static_cast<std::size_t>(k)][total_index]; }

  /// Deck transformation h applied to total k-simplex i.
  const SignedIndex& deck(int h, int k, std::size_t i) const {
    return deck_[static_cast<std::size_t>(k)][static_cast<std::size_t>(h) * total_.count(k) + i];
  }

  friend CoverComplex build_cover(const SimplicialComplex& K, const FiniteGroup& G, VoltageAssignment alpha);

 private:
  SimplicialComplex base_;
  FiniteGroup group_;
  VoltageAssignment voltage_;
  SimplicialComplex total_;
  std::vector<std::vector<std::size_t>> lifts_;
  std::vector<std::vector<std::size_t>> projection_;
  std::vector<std::vector<int>> sheets_;
  std::vector<std::vector<SignedIndex>> deck_;
};

namespace detail {

// Sorts in place; returns the parity of the sorting permutation as ±1.
inline int sort_with_sign(Simplex& s) {
  int sign = 1;
  for (std::size_t i = 1; i < s.size(); ++i)
    for (std::size_t j = i; j > 0 && s[j - 1] > s[j]; --j) {
      std::swap(s[j - 1], s[j]);
      sign = -sign;
    }
  return sign;
}

inline Simplex lifted_vertices(const Simplex& sigma, const FiniteGroup& G, const VoltageAssignment& alpha, int g) {
  const int m = G.order();
  Simplex out;
  out.reserve(sigma.size());
  for (int v : sigma) out.push_back(v * m + G.mul(g, alpha.get(G, sigma.front(), v)));
  return out;
}

}  // namespace detail

/// Throws with the offending triangle if α(u,v)·α(v,w) != α(u,w).
inline void check_cocycle(const SimplicialComplex& K, const FiniteGroup& G, const VoltageAssignment& alpha) {
  if (K.dimension() < 2) return;
  for (const auto& t : K.simplices(2)) {
    const int lhs = G.mul(alpha.get(G, t[0], t[1]), alpha.get(G, t[1], t[2]));
    if (lhs != alpha.get(G, t[0], t[2]))
      throw Error("cover", "build_cover", "cocycle condition fails on triangle [" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "]");
  }
}

inline CoverComplex build_cover(const SimplicialComplex& K, const FiniteGroup& G, VoltageAssignment alpha) {
  alpha.normalize(G);
  for (const auto& [edge, g] : alpha.values()) {
    if (!K.index_of(Simplex{edge.first, edge.second}))
      throw Error("cover", "build_cover", "voltage on edge [" + std::to_string(edge.first) + "," + std::to_string(edge.second) + "] which is not in the complex");
    if (!G.contains(g)) throw Error("cover", "build_cover", "voltage group element out of range");
  }
  check_cocycle(K, G, alpha);

  CoverComplex C;
  C.base_ = K;
  C.group_ = G;
  C.voltage_ = alpha;
  const int m = G.order();
  const auto um = static_cast<std::size_t>(m);

  std::vector<Simplex> facets;
  for (const auto& f : K.maximal_simplices())
    for (int g = 0; g < m; ++g) facets.push_back(detail::lifted_vertices(f, G, alpha, g));
  C.total_ = build_complex(facets);

  const int n = K.dimension();
  C.lifts_.resize(static_cast<std::size_t>(n + 1));
  C.projection_.resize(static_cast<std::size_t>(n + 1));
  C.sheets_.resize(static_cast<std::size_t>(n + 1));
  C.deck_.resize(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    if (C.total_.count(k) != um * K.count(k))
      throw Error("cover", "build_cover", "fiber size mismatch in degree " + std::to_string(k));
    C.lifts_[uk].resize(um * K.count(k));
    C.projection_[uk].resize(C.total_.count(k));
    C.sheets_[uk].resize(C.total_.count(k));
    for (std::size_t s = 0; s < K.count(k); ++s)
      for (int g = 0; g < m; ++g) {
        Simplex lifted = detail::lifted_vertices(K.simplex(k, s), G, alpha, g);
        detail::sort_with_sign(lifted);
        const auto idx = C.total_.index_of(lifted);
        if (!idx) throw Error("cover", "build_cover", "lift missing from total complex");
        C.lifts_[uk][s * um + static_cast<std::size_t>(g)] = *idx;
        C.projection_[uk][*idx] = s;
        C.sheets_[uk][*idx] = g;
      }
    C.deck_[uk].resize(um * C.total_.count(k));
    for (int h = 0; h < m; ++h)
      for (std::size_t i = 0; i < C.total_.count(k); ++i) {
        Simplex img;
        for (int w : C.total_.simplex(k, i)) img.push_back((w / m) * m + G.mul(h, w % m));
        const int sign = detail::sort_with_sign(img);
        C.deck_[uk][static_cast<std::size_t>(h) * C.total_.count(k) + i] = SignedIndex{*C.total_.index_of(img), sign};
      }
  }
  return C;
}

/// Signed permutation matrix U_h on k-cochains: U_h e_i = sign · e_{h·i}.
inline Eigen::MatrixXd deck_matrix(const CoverComplex& C, int h, int k) {
  if (!C.group().contains(h)) throw Error("cover", "deck_matrix", "group element out of range");
  if (k < 0 || k > C.dimension()) throw Error("cover", "deck_matrix", "degree out of range");
  const auto n = static_cast<Eigen::Index>(C.total().count(k));
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& img = C.deck(h, k, static_cast<std::size_t>(i));
    U(static_cast<Eigen::Index>(img.index), i) = img.sign;
  }
  return U;
}

/// U_h · A · U_h^T without forming U_h.
inline Eigen::MatrixXd conjugate_by_deck(const CoverComplex& C, int h, int k, const Eigen::MatrixXd& A) {
  const auto n = A.rows();
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& cj = C.deck(h, k, static_cast<std::size_t>(j));
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& ci = C.deck(h, k, static_cast<std::size_t>(i));
      out(static_cast<Eigen::Index>(ci.index), static_cast<Eigen::Index>(cj.index)) = ci.sign * cj.sign * A(i, j);
    }
  }
  return out;
}

/// Pullback of a base vertex function: f̃(v,g) = f(v).
inline std::vector<double> lift_vertex_function(const CoverComplex& C, const std::vector<double>& f) {
  if (f.size() != C.base().vertex_count())
    throw Error("cover", "lift_vertex_function", "expected " + std::to_string(C.base().vertex_count()) + " values, got " + std::to_string(f.size()));
  std::vector<double> out(C.total().vertex_count());
  const auto m = static_cast<std::size_t>(C.order());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i / m];
  return out;
}

/// Z/2-valued orientation character of a 2-dimensional complex whose vertex
/// stars are orientable (surfaces, with or without boundary). Element 1 of
/// Z/2 marks edges across which local orientations disagree; the resulting
/// cover is the orientation double cover.
inline VoltageAssignment orientation_voltage(const SimplicialComplex& K) {
  VoltageAssignment alpha;
  if (K.dimension() < 2) return alpha;
  // Boundary coefficient of the edge {a,b} in triangle t.
  auto coef = [](const Simplex& t, int a, int b) {
    for (std::size_t i = 0; i < 3; ++i)
      if (t[i] != a && t[i] != b) return (i % 2 == 0) ? 1 : -1;
    return 0;
  };
  const auto& tris = K.simplices(2);
  std::vector<std::map<std::size_t, int>> star_sign(K.vertex_count());
  for (std::size_t v = 0; v < K.vertex_count(); ++v) {
    std::vector<std::size_t> star;
    for (std::size_t t = 0; t < tris.size(); ++t)
      if (std::find(tris[t].begin(), tris[t].end(), static_cast<int>(v)) != tris[t].end()) star.push_back(t);
    auto& sign = star_sign[v];
    for (std::size_t seed : star) {
      if (sign.count(seed)) continue;
      sign[seed] = 1;
      std::queue<std::size_t> q;
      q.push(seed);
      while (!q.empty()) {
        const std::size_t t = q.front();
        q.pop();
        for (std::size_t u : star) {
          if (u == t) continue;
          std::vector<int> shared;
          std::set_intersection(tris[t].begin(), tris[t].end(), tris[u].begin(), tris[u].end(), std::back_inserter(shared));
          if (shared.size() != 2) continue;
          const int want = -sign[t] * coef(tris[t], shared[0], shared[1]) * coef(tris[u], shared[0], shared[1]);
          auto it = sign.find(u);
          if (it == sign.end()) {
            sign[u] = want;
            q.push(u);
          } else if (it->second != want) {
            throw Error("cover", "orientation_voltage", "star of vertex " + std::to_string(v) + " is not orientable");
          }
        }
      }
    }
  }
  for (const auto& e : K.simplices(1)) {
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const auto& tri = tris[t];
      if (std::find(tri.begin(), tri.end(), e[0]) == tri.end() || std::find(tri.begin(), tri.end(), e[1]) == tri.end()) continue;
      if (star_sign[static_cast<std::size_t>(e[0])].at(t) != star_sign[static_cast<std::size_t>(e[1])].at(t)) alpha.set(e[0], e[1], 1);
      break;
    }
  }
  return alpha;
}

}  // namespace eqhodge

namespace eqhodge {

/// K viewed as its own one-sheeted cover.
inline CoverComplex trivial_cover(const SimplicialComplex& K) { return build_cover(K, cyclic_group(1), VoltageAssignment{}); }

}  // namespace eqhodge
