#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "eqhodge/complex.hpp"
#include "eqhodge/error.hpp"
#include "eqhodge/linalg.hpp"

namespace eqhodge {

/// Coboundary d_k : C^k -> C^{k+1}, i.e. ∂_{k+1}ᵀ under the identity inner
/// product. Defined for 0 <= k <= n (d_n has zero rows).
inline Eigen::MatrixXd coboundary(const SimplicialComplex& K, int k) {
  return detail::boundary_any(K, k + 1).transpose().cast<double>();
}

/// Integer Laplacian ∂_{k+1}∂_{k+1}ᵀ + ∂_kᵀ∂_k.
inline IntMatrix laplacian_int(const SimplicialComplex& K, int k) {
  if (k < 0 || k > K.dimension()) throw Error("hodge", "laplacian", "degree " + std::to_string(k) + " out of range");
  const IntMatrix up = detail::boundary_any(K, k + 1);
  const IntMatrix down = detail::boundary_any(K, k);
  return up * up.transpose() + down.transpose() * down;
}

inline Eigen::MatrixXd laplacian(const SimplicialComplex& K, int k) { return laplacian_int(K, k).cast<double>(); }

/// d_upᵀ d_up + d_down d_downᵀ for d_down : C^{k-1} -> C^k and d_up : C^k -> C^{k+1}.
inline Eigen::MatrixXd laplacian_from_coboundaries(const Eigen::MatrixXd& d_down, const Eigen::MatrixXd& d_up) {
  return d_up.transpose() * d_up + d_down * d_down.transpose();
}

struct SpectralPackage {
  int degree = 0;
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns
  double zero_threshold = 0.0;
  /// Set when some eigenvalue lies within a factor 10 of the threshold.
  bool needs_review = false;

  std::size_t dimension() const { return static_cast<std::size_t>(eigenvalues.size()); }
  std::size_t kernel_dimension() const {
    std::size_t n = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
      if (eigenvalues(i) < zero_threshold) ++n;
    return n;
  }
  double max_eigenvalue() const { return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0; }
};

/// Eigendecomposition with the zero threshold 1e-8·max(1, λ_max).
inline SpectralPackage spectrum(const Eigen::MatrixXd& laplacian_matrix, int degree = 0) {
  const EigenDecomposition eig = jacobi_eigen(laplacian_matrix);
  SpectralPackage s;
  s.degree = degree;
  s.eigenvalues = eig.values;
  s.eigenvectors = eig.vectors;
  s.zero_threshold = 1e-8 * std::max(1.0, s.max_eigenvalue());
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double lam = std::abs(s.eigenvalues(i));
    if (lam != 0.0 && lam > s.zero_threshold / 10.0 && lam < s.zero_threshold * 10.0) s.needs_review = true;
  }
  return s;
}

/// Reconstruction and orthonormality residuals of a package against the
/// matrix it came from.
struct PackageResiduals {
  double reconstruction = 0.0;   // ‖VΛVᵀ − Δ‖_max
  double orthonormality = 0.0;   // ‖VᵀV − I‖_max
  double min_eigenvalue = 0.0;
};

inline PackageResiduals package_residuals(const SpectralPackage& s, const Eigen::MatrixXd& laplacian_matrix) {
  PackageResiduals r;
  if (s.dimension() == 0) return r;
  const Eigen::MatrixXd& V = s.eigenvectors;
  r.reconstruction = max_abs(V * s.eigenvalues.asDiagonal() * V.transpose() - laplacian_matrix);
  r.orthonormality = max_abs(V.transpose() * V - Eigen::MatrixXd::Identity(V.cols(), V.cols()));
  r.min_eigenvalue = s.eigenvalues(0);
  return r;
}

struct HarmonicProjector {
  int degree = 0;
  Eigen::MatrixXd matrix;
  std::size_t rank = 0;
  bool needs_review = false;
};

/// Orthogonal projection onto the span of eigenvectors below the zero threshold.
inline HarmonicProjector harmonic_projector(const SpectralPackage& s) {
  HarmonicProjector p;
  p.degree = s.degree;
  p.needs_review = s.needs_review;
  const auto n = static_cast<Eigen::Index>(s.dimension());
  p.matrix = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (s.eigenvalues(i) >= s.zero_threshold) continue;
    p.matrix.noalias() += s.eigenvectors.col(i) * s.eigenvectors.col(i).transpose();
    ++p.rank;
  }
  return p;
}

/// Projector whose rank must equal an independently known kernel dimension;
/// a mismatch is a hard error.
inline HarmonicProjector harmonic_projector(const SpectralPackage& s, std::size_t expected_rank) {
  HarmonicProjector p = harmonic_projector(s);
  if (p.rank != expected_rank)
    throw Error("hodge", "harmonic_projector",
                "spectral kernel dimension " + std::to_string(p.rank) + " disagrees with exact Betti number " + std::to_string(expected_rank) +
                    " in degree " + std::to_string(s.degree));
  return p;
}

/// Σ_i exp(-t λ_i).
inline double heat_trace(const SpectralPackage& s, double t) {
  if (!(t > 0)) throw Error("hodge", "heat_trace", "t must be positive");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) sum += std::exp(-t * s.eigenvalues(i));
  return sum;
}

/// exp(-tΔ) = V diag(exp(-tλ)) Vᵀ.
inline Eigen::MatrixXd heat_operator(const SpectralPackage& s, double t) {
  if (!(t > 0)) throw Error("hodge", "heat_operator", "t must be positive");
  Eigen::VectorXd w(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::exp(-t * s.eigenvalues(i));
  return s.eigenvectors * w.asDiagonal() * s.eigenvectors.transpose();
}

/// Smallest eigenvalue at or above the zero threshold, or 0 if none.
inline double spectral_gap(const SpectralPackage& s) {
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    if (s.eigenvalues(i) >= s.zero_threshold) return s.eigenvalues(i);
  return 0.0;
}

/// Per-degree spectral data of a complex.
inline std::vector<SpectralPackage> spectra(const SimplicialComplex& K) {
  std::vector<SpectralPackage> out;
  for (int k = 0; k <= K.dimension(); ++k) out.push_back(spectrum(laplacian(K, k), k));
  return out;
}

/// |Σ_k (-1)^k Tr exp(-tΔ^k) − χ| for packages of degrees 0..n.
inline double mckean_singer_defect(const std::vector<SpectralPackage>& packages, long long euler, double t) {
  double sum = 0.0;
  for (std::size_t k = 0; k < packages.size(); ++k) sum += (k % 2 == 0 ? 1.0 : -1.0) * heat_trace(packages[k], t);
  return std::abs(sum - static_cast<double>(euler));
}

inline double mckean_singer_defect(const SimplicialComplex& K, double t) {
  return mckean_singer_defect(spectra(K), K.euler_characteristic(), t);
}

}  // namespace eqhodge
