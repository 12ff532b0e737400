#pragma once

// Discrete Morse theory: acyclic matchings on the face poset, lower-star
// matchings from vertex functions, lifting to covers, and the delocalized
// Morse inequality check.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqhodge/complex.hpp"
#include "eqhodge/cover.hpp"
#include "eqhodge/error.hpp"
#include "eqhodge/witten.hpp"

namespace eqhodge {

/// Pairs (σ, τ) with σ a facet of τ. Unmatched cells are critical.
struct MorseMatching {
  std::vector<std::pair<Simplex, Simplex>> pairs;
};

namespace detail {

inline std::string format_simplex(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

inline bool is_facet_of(const Simplex& sigma, const Simplex& tau) {
  return sigma.size() + 1 == tau.size() && std::includes(tau.begin(), tau.end(), sigma.begin(), sigma.end());
}

}  // namespace detail

struct MatchingVerdict {
  bool valid = true;
  std::string problem;          // empty when valid
  std::vector<Simplex> witness;  // offending cells, or the directed cycle
  std::vector<std::size_t> critical_counts;

  long long alternating_count() const {
    long long s = 0;
    for (std::size_t k = 0; k < critical_counts.size(); ++k) s += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(critical_counts[k]);
    return s;
  }
};

/// Checks that each cell is matched at most once, that pairs are facet
/// incidences, that the modified Hasse digraph is acyclic, and that the
/// alternating critical count equals χ.
inline MatchingVerdict validate_matching(const SimplicialComplex& K, const MorseMatching& M) {
  MatchingVerdict v;
  const int n = K.dimension();
  // Flat cell ids: offset[k] + index.
  std::vector<std::size_t> offset(static_cast<std::size_t>(n + 2), 0);
  for (int k = 0; k <= n; ++k) offset[static_cast<std::size_t>(k + 1)] = offset[static_cast<std::size_t>(k)] + K.count(k);
  const std::size_t total = offset.back();
  auto cell_id = [&](const Simplex& s) -> std::optional<std::size_t> {
    auto idx = K.index_of(s);
    if (!idx) return std::nullopt;
    return offset[s.size() - 1] + *idx;
  };
  auto cell_of = [&](std::size_t id) {
    int k = 0;
    while (offset[static_cast<std::size_t>(k + 1)] <= id) ++k;
    return K.simplex(k, id - offset[static_cast<std::size_t>(k)]);
  };

  std::vector<long> partner(total, -1);
  for (const auto& [sigma, tau] : M.pairs) {
    const auto a = cell_id(sigma), b = cell_id(tau);
    if (!a || !b) {
      v.valid = false;
      v.problem = "pair references a cell not in the complex";
      v.witness = {sigma, tau};
      return v;
    }
    if (!detail::is_facet_of(sigma, tau)) {
      v.valid = false;
      v.problem = "pair is not a facet incidence";
      v.witness = {sigma, tau};
      return v;
    }
    for (std::size_t id : {*a, *b})
      if (partner[id] >= 0) {
        v.valid = false;
        v.problem = "cell matched twice";
        v.witness = {cell_of(id)};
        return v;
      }
    partner[*a] = static_cast<long>(*b);
    partner[*b] = static_cast<long>(*a);
  }

  // Modified Hasse digraph: τ -> σ for each facet σ of τ, reversed on matched pairs.
  std::vector<std::vector<std::size_t>> out(total);
  for (int k = 1; k <= n; ++k)
    for (std::size_t j = 0; j < K.count(k); ++j) {
      const Simplex& tau = K.simplex(k, j);
      const std::size_t t = offset[static_cast<std::size_t>(k)] + j;
      for (std::size_t drop = 0; drop < tau.size(); ++drop) {
        Simplex face = tau;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        const std::size_t s = *cell_id(face);
        if (partner[s] == static_cast<long>(t))
          out[s].push_back(t);
        else
          out[t].push_back(s);
      }
    }
  std::vector<int> color(total, 0);
  std::vector<std::size_t> parent(total, 0);
  for (std::size_t root = 0; root < total && v.valid; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty() && v.valid) {
      auto& [node, next] = stack.back();
      if (next == out[node].size()) {
        color[node] = 2;
        stack.pop_back();
        continue;
      }
      const std::size_t to = out[node][next++];
      if (color[to] == 0) {
        color[to] = 1;
        parent[to] = node;
        stack.emplace_back(to, 0);
      } else if (color[to] == 1) {
        v.valid = false;
        v.problem = "modified Hasse digraph has a directed cycle";
        std::vector<std::size_t> cyc{to};
        for (std::size_t x = node; x != to; x = parent[x]) cyc.push_back(x);
        std::reverse(cyc.begin() + 1, cyc.end());
        for (std::size_t id : cyc) v.witness.push_back(cell_of(id));
      }
    }
  }
  if (!v.valid) return v;

  v.critical_counts.assign(static_cast<std::size_t>(n + 1), 0);
  for (int k = 0; k <= n; ++k)
    for (std::size_t j = 0; j < K.count(k); ++j)
      if (partner[offset[static_cast<std::size_t>(k)] + j] < 0) ++v.critical_counts[static_cast<std::size_t>(k)];
  if (v.alternating_count() != K.euler_characteristic()) {
    v.valid = false;
    v.problem = "alternating critical count differs from the Euler characteristic";
  }
  return v;
}

/// Throws with the witness if the matching is invalid; returns C_k otherwise.
inline std::vector<std::size_t> require_valid_matching(const SimplicialComplex& K, const MorseMatching& M, const char* operation = "validate_matching") {
  const MatchingVerdict v = validate_matching(K, M);
  if (!v.valid) {
    std::string w;
    for (const auto& s : v.witness) w += (w.empty() ? "" : " -> ") + detail::format_simplex(s);
    throw Error("morse", operation, v.problem + (w.empty() ? "" : ": " + w));
  }
  return v.critical_counts;
}

/// Lower-star matching. Vertices are ordered by (f(v), v); every cell joins
/// the lower star of its largest vertex. Within a lower star, cells are
/// visited by dimension (then by their vertex keys, largest first) and each
/// unmatched σ is paired with the unmatched coface σ∪{w} of least key.
inline MorseMatching matching_from_vertex_function(const SimplicialComplex& K, const std::vector<double>& f) {
  if (f.size() != K.vertex_count()) throw Error("morse", "matching_from_vertex_function", "vertex function has the wrong length");
  auto less = [&](int a, int b) {
    const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    return f[ua] < f[ub] || (f[ua] == f[ub] && a < b);
  };
  auto sorted_keys = [&](const Simplex& s) {
    Simplex out = s;
    std::sort(out.begin(), out.end(), [&](int a, int b) { return less(b, a); });
    return out;
  };
  auto key_less = [&](const Simplex& a, const Simplex& b) {
    const Simplex ka = sorted_keys(a), kb = sorted_keys(b);
    return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end(), less);
  };

  std::vector<std::vector<Simplex>> star(K.vertex_count());
  for (int k = 0; k <= K.dimension(); ++k)
    for (const auto& s : K.simplices(k)) star[static_cast<std::size_t>(*std::max_element(s.begin(), s.end(), less))].push_back(s);

  MorseMatching M;
  for (auto& cells : star) {
    std::stable_sort(cells.begin(), cells.end(), [&](const Simplex& a, const Simplex& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return key_less(a, b);
    });
    std::map<Simplex, bool> matched;
    for (const auto& c : cells) matched[c] = false;
    for (const auto& sigma : cells) {
      if (matched[sigma]) continue;
      const Simplex* best = nullptr;
      int best_w = -1;
      for (const auto& tau : cells) {
        if (tau.size() != sigma.size() + 1 || matched[tau] || !detail::is_facet_of(sigma, tau)) continue;
        int w = -1;
        for (int x : tau)
          if (!std::binary_search(sigma.begin(), sigma.end(), x)) w = x;
        if (!best || less(w, best_w)) {
          best = &tau;
          best_w = w;
        }
      }
      if (best) {
        matched[sigma] = matched[*best] = true;
        M.pairs.emplace_back(sigma, *best);
      }
    }
  }
  return M;
}

/// Every pair lifted to every sheet.
inline MorseMatching lift_matching(const CoverComplex& C, const MorseMatching& M) {
  require_valid_matching(C.base(), M, "lift_matching");
  const FiniteGroup& G = C.group();
  MorseMatching out;
  for (const auto& [sigma, tau] : M.pairs)
    for (int g = 0; g < G.order(); ++g) {
      Simplex ls = detail::lifted_vertices(sigma, G, C.voltage(), g);
      // τ lifted at the sheet g' whose lift contains (σ_0, g): g'·α(τ_0, σ_0) = g.
      const int gp = G.mul(g, G.inverse(C.voltage().get(G, tau.front(), sigma.front())));
      Simplex lt = detail::lifted_vertices(tau, G, C.voltage(), gp);
      std::sort(ls.begin(), ls.end());
      std::sort(lt.begin(), lt.end());
      out.pairs.emplace_back(std::move(ls), std::move(lt));
    }
  return out;
}

inline std::vector<std::size_t> critical_counts(const SimplicialComplex& K, const MorseMatching& M) { return require_valid_matching(K, M); }

/// Σ_{j<=k} (-1)^{k-j} C_j >= Σ_{j<=k} (-1)^{k-j} γ_j − tol, with equality
/// (within tol) at k = n.
inline MorseVerdict verify_delocalized_morse(const std::vector<double>& counts, const std::vector<double>& gammas, int n, double tol) {
  if (counts.size() != static_cast<std::size_t>(n + 1) || gammas.size() != static_cast<std::size_t>(n + 1))
    throw Error("morse", "verify_delocalized_morse", "expected arrays of length n+1");
  MorseVerdict v;
  v.tolerance = tol;
  v.lhs = partial_alternating_sums(counts);
  v.rhs = partial_alternating_sums(gammas);
  for (int k = 0; k <= n; ++k) {
    const double diff = v.lhs[static_cast<std::size_t>(k)] - v.rhs[static_cast<std::size_t>(k)];
    v.pass.push_back(k == n ? std::abs(diff) <= tol : diff >= -tol);
  }
  return v;
}

inline std::vector<double> to_double(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

}  // namespace eqhodge
