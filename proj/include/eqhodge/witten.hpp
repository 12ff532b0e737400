#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "eqhodge/cover.hpp"
#include "eqhodge/delocalized.hpp"
#include "eqhodge/error.hpp"
#include "eqhodge/hodge.hpp"

namespace eqhodge {

/// Deformation parameter s and a vertex function f on the base. Simplex
/// weights are F(σ) = Σ_{v∈σ} f(v), evaluated on the lifted function.
struct DeformationParameters {
  double s = 0.0;
  std::vector<double> f;
};

inline constexpr double kMaxDeformationExponent = 300.0;

namespace detail {

inline std::vector<double> simplex_weights(const SimplicialComplex& T, const std::vector<double>& vertex_values, int k) {
  std::vector<double> w(T.count(k), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (int v : T.simplex(k, i)) w[i] += vertex_values[static_cast<std::size_t>(v)];
  return w;
}

inline void check_deformation(const CoverComplex& C, const DeformationParameters& p, const char* operation) {
  if (!(p.s >= 0.0)) throw Error("witten", operation, "s must be non-negative");
  if (p.f.size() != C.base().vertex_count()) throw Error("witten", operation, "vertex function has the wrong length");
  double max_weight = 0.0;
  for (int k = 0; k <= C.dimension(); ++k)
    for (double w : simplex_weights(C.base(), p.f, k)) max_weight = std::max(max_weight, std::abs(w));
  if (p.s * max_weight > kMaxDeformationExponent)
    throw Error("witten", operation, "s·max|F| = " + std::to_string(p.s * max_weight) + " exceeds the overflow guard 300");
}

}  // namespace detail

/// d_s = E⁻¹ d E on k-cochains of the total complex, E = diag(exp(s·F)).
/// Entry (τ,σ) is d(τ,σ)·exp(s·(F(σ) − F(τ))).
inline Eigen::MatrixXd deformed_coboundary(const CoverComplex& C, int k, const DeformationParameters& p) {
  detail::check_deformation(C, p, "deformed_coboundary");
  if (k < 0 || k > C.dimension()) throw Error("witten", "deformed_coboundary", "degree out of range");
  const SimplicialComplex& T = C.total();
  Eigen::MatrixXd d = coboundary(T, k);
  if (p.s == 0.0 || d.size() == 0) return d;
  const auto fl = lift_vertex_function(C, p.f);
  const auto w_lo = detail::simplex_weights(T, fl, k);
  const auto w_hi = detail::simplex_weights(T, fl, k + 1);
  for (Eigen::Index r = 0; r < d.rows(); ++r)
    for (Eigen::Index c = 0; c < d.cols(); ++c)
      if (d(r, c) != 0.0) d(r, c) *= std::exp(p.s * (w_lo[static_cast<std::size_t>(c)] - w_hi[static_cast<std::size_t>(r)]));
  return d;
}

/// Δ_s = d_sᵀ d_s + d_s' d_s'ᵀ with d_s' the deformed coboundary one degree down.
inline Eigen::MatrixXd deformed_laplacian(const CoverComplex& C, int k, const DeformationParameters& p) {
  const Eigen::MatrixXd up = deformed_coboundary(C, k, p);
  if (k == 0) return up.transpose() * up;
  return laplacian_from_coboundaries(deformed_coboundary(C, k - 1, p), up);
}

/// Spectra and kernel projectors of Δ_s in every degree. Kernel ranks are
/// pinned to the exact Betti numbers of the total complex (conjugation by E
/// does not change cohomology).
inline CoverHarmonics deformed_harmonics(const CoverComplex& C, const DeformationParameters& p, const std::vector<std::size_t>& exact_betti) {
  CoverHarmonics h;
  h.betti = exact_betti;
  for (int k = 0; k <= C.dimension(); ++k) {
    h.spectra.push_back(spectrum(deformed_laplacian(C, k, p), k));
    h.projectors.push_back(harmonic_projector(h.spectra.back(), exact_betti.at(static_cast<std::size_t>(k))));
    h.needs_review = h.needs_review || h.spectra.back().needs_review;
  }
  return h;
}

inline CoverHarmonics deformed_harmonics(const CoverComplex& C, const DeformationParameters& p) {
  return deformed_harmonics(C, p, betti_numbers(C.total()));
}

/// T_c of the kernel projector of Δ_s^k.
inline double deformed_gamma(const CoverComplex& C, const CoverHarmonics& H, int k, const ConjugacyClass& c) {
  return t_trace(C, k, H.projectors.at(static_cast<std::size_t>(k)).matrix, c);
}

inline double deformed_gamma(const CoverComplex& C, int k, const ConjugacyClass& c, const DeformationParameters& p) {
  return deformed_gamma(C, deformed_harmonics(C, p), k, c);
}

/// μ = T_c(exp(-tΔ_s^k)).
inline double mu(const CoverComplex& C, const CoverHarmonics& H, int k, const ConjugacyClass& c, double t) {
  return t_trace(C, k, heat_operator(H.spectra.at(static_cast<std::size_t>(k)), t), c);
}

inline double mu(const CoverComplex& C, int k, const ConjugacyClass& c, const DeformationParameters& p, double t) {
  detail::check_deformation(C, p, "mu");
  return t_trace(C, k, heat_operator(spectrum(deformed_laplacian(C, k, p), k), t), c);
}

struct MorseVerdict {
  std::vector<double> lhs;  // partial alternating sums of the dominating side
  std::vector<double> rhs;
  std::vector<bool> pass;
  double tolerance = 0.0;
  bool all_pass() const {
    for (bool b : pass)
      if (!b) return false;
    return true;
  }
};

/// Σ_{j<=k} (-1)^{k-j} (μ_j − β_j) >= −tol for every k, and |·| <= tol at k = n.
inline MorseVerdict verify_analytic_morse(const std::vector<double>& mu_values, const std::vector<double>& beta, int n, double tol) {
  if (mu_values.size() != static_cast<std::size_t>(n + 1) || beta.size() != static_cast<std::size_t>(n + 1))
    throw Error("witten", "verify_analytic_morse", "expected arrays of length n+1");
  MorseVerdict v;
  v.tolerance = tol;
  v.lhs = partial_alternating_sums(mu_values);
  v.rhs = partial_alternating_sums(beta);
  for (int k = 0; k <= n; ++k) {
    const double diff = v.lhs[static_cast<std::size_t>(k)] - v.rhs[static_cast<std::size_t>(k)];
    v.pass.push_back(k == n ? std::abs(diff) <= tol : diff >= -tol);
  }
  return v;
}

/// McKean–Singer defect of the deformed complex on the total space.
inline double deformed_mckean_singer_defect(const CoverComplex& C, const CoverHarmonics& H, double t) {
  return mckean_singer_defect(H.spectra, C.total().euler_characteristic(), t);
}

}  // namespace eqhodge
