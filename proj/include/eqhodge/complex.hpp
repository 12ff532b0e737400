#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eqhodge/error.hpp"
#include "eqhodge/exact.hpp"

namespace eqhodge {

/// Strictly increasing vertex tuple. A k-simplex has k+1 entries.
using Simplex = std::vector<int>;

/// Finite abstract simplicial complex, closed under taking faces.
///
/// Simplices of each dimension are stored in lexicographic order; each is
/// oriented by increasing vertex order. Vertices are 0..vertex_count()-1,
/// all of them present as 0-simplices.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  std::size_t vertex_count() const { return simplices_.empty() ? 0 : simplices_[0].size(); }
  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }

  std::size_t count(int k) const {
    if (k < 0 || k > dimension()) return 0;
    return simplices_[static_cast<std::size_t>(k)].size();
  }
  const std::vector<Simplex>& simplices(int k) const { return simplices_.at(static_cast<std::size_t>(k)); }
  const Simplex& simplex(int k, std::size_t i) const { return simplices(k).at(i); }

  std::optional<std::size_t> index_of(const Simplex& s) const {
    const int k = static_cast<int>(s.size()) - 1;
    if (k < 0 || k > dimension()) return std::nullopt;
    const auto& idx = index_[static_cast<std::size_t>(k)];
    auto it = idx.find(s);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }

  /// Simplices that are not a face of any other simplex, sorted by
  /// dimension then lexicographically.
  std::vector<Simplex> maximal_simplices() const {
    std::vector<Simplex> out;
    for (int k = 0; k <= dimension(); ++k) {
      std::vector<bool> covered(count(k), false);
      if (k < dimension()) {
        for (const auto& tau : simplices(k + 1))
          for (std::size_t drop = 0; drop < tau.size(); ++drop) {
            Simplex face = tau;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            covered[*index_of(face)] = true;
          }
      }
      for (std::size_t i = 0; i < count(k); ++i)
        if (!covered[i]) out.push_back(simplex(k, i));
    }
    return out;
  }

  long long euler_characteristic() const {
    long long chi = 0;
    for (int k = 0; k <= dimension(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(count(k));
    return chi;
  }

  bool operator==(const SimplicialComplex& other) const { return simplices_ == other.simplices_; }

 private:
  friend SimplicialComplex build_complex(const std::vector<Simplex>& facets);

  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

/// Closure of a list of facets. Vertex indices must be non-negative and
/// cover 0..max without gaps; a facet may not repeat a vertex.
inline SimplicialComplex build_complex(const std::vector<Simplex>& facets) {
  if (facets.empty()) throw Error("complex", "build_complex", "facet list is empty");
  int max_vertex = -1;
  std::vector<std::set<Simplex>> by_dim;
  for (const auto& raw : facets) {
    if (raw.empty()) throw Error("complex", "build_complex", "empty facet");
    Simplex f = raw;
    std::sort(f.begin(), f.end());
    if (f.front() < 0) throw Error("complex", "build_complex", "negative vertex index");
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      throw Error("complex", "build_complex", "facet repeats vertex " + std::to_string(*std::adjacent_find(f.begin(), f.end())));
    if (f.size() > 16) throw Error("complex", "build_complex", "facet dimension above 15 is not supported");
    max_vertex = std::max(max_vertex, f.back());
    const std::size_t n = f.size();
    if (by_dim.size() < n) by_dim.resize(n);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(f[i]);
      by_dim[face.size() - 1].insert(std::move(face));
    }
  }
  if (by_dim[0].size() != static_cast<std::size_t>(max_vertex + 1))
    throw Error("complex", "build_complex", "vertex indices must be contiguous from 0 (max index " + std::to_string(max_vertex) + ", " + std::to_string(by_dim[0].size()) + " vertices used)");

  SimplicialComplex k;
  k.simplices_.resize(by_dim.size());
  k.index_.resize(by_dim.size());
  for (std::size_t d = 0; d < by_dim.size(); ++d) {
    k.simplices_[d].assign(by_dim[d].begin(), by_dim[d].end());
    for (std::size_t i = 0; i < k.simplices_[d].size(); ++i) k.index_[d].emplace(k.simplices_[d][i], i);
  }
  return k;
}

namespace detail {

// ∂_k for 0 <= k <= n+1; degenerate degrees give matrices with a zero extent.
inline IntMatrix boundary_any(const SimplicialComplex& K, int k) {
  const auto rows = static_cast<Eigen::Index>(K.count(k - 1));
  const auto cols = static_cast<Eigen::Index>(K.count(k));
  IntMatrix d = IntMatrix::Zero(rows, cols);
  if (k <= 0 || k > K.dimension()) return d;
  for (std::size_t j = 0; j < K.count(k); ++j) {
    const Simplex& tau = K.simplex(k, j);
    for (std::size_t i = 0; i < tau.size(); ++i) {
      Simplex face = tau;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      d(static_cast<Eigen::Index>(*K.index_of(face)), static_cast<Eigen::Index>(j)) = (i % 2 == 0) ? 1 : -1;
    }
  }
  return d;
}

}  // namespace detail

/// Simplicial boundary ∂_k : C_k -> C_{k-1}; the face omitting vertex i
/// carries sign (-1)^i. Requires 1 <= k <= dim K.
inline IntMatrix boundary_matrix(const SimplicialComplex& K, int k) {
  if (k < 1 || k > K.dimension())
    throw Error("complex", "boundary_matrix", "degree " + std::to_string(k) + " outside [1, " + std::to_string(K.dimension()) + "]");
  return detail::boundary_any(K, k);
}

/// Rational Betti number b_k = #k-simplices - rank ∂_k - rank ∂_{k+1}.
inline std::size_t betti_exact(const SimplicialComplex& K, int k) {
  if (k < 0 || k > K.dimension())
    throw Error("complex", "betti_exact", "degree " + std::to_string(k) + " outside [0, " + std::to_string(K.dimension()) + "]");
  const std::size_t r_down = rank_bareiss(detail::boundary_any(K, k));
  const std::size_t r_up = rank_bareiss(detail::boundary_any(K, k + 1));
  return K.count(k) - r_down - r_up;
}

inline std::vector<std::size_t> betti_numbers(const SimplicialComplex& K) {
  std::vector<std::size_t> out;
  for (int k = 0; k <= K.dimension(); ++k) out.push_back(betti_exact(K, k));
  return out;
}

}  // namespace eqhodge
