#pragma once

// Delocalized traces over conjugacy classes of the deck group, the positive
// traces built from them, and delocalized Betti numbers of a finite cover.

#include <gmpxx.h>

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eqhodge/cover.hpp"
#include "eqhodge/error.hpp"
#include "eqhodge/exact.hpp"
#include "eqhodge/group.hpp"
#include "eqhodge/hodge.hpp"
#include "eqhodge/random.hpp"

namespace eqhodge {

/// max_h ‖A U_h − U_h A‖_max.
inline double equivariance_defect(const CoverComplex& C, int k, const Eigen::MatrixXd& A) {
  double worst = 0.0;
  for (int h = 0; h < C.order(); ++h) worst = std::max(worst, max_abs(conjugate_by_deck(C, h, k, A) - A));
  return worst;
}

inline void require_equivariant(const CoverComplex& C, int k, const Eigen::MatrixXd& A, const char* operation) {
  const auto n = static_cast<Eigen::Index>(C.total().count(k));
  if (A.rows() != n || A.cols() != n)
    throw Error("delocalized", operation, "operator has the wrong shape for degree " + std::to_string(k));
  const double defect = equivariance_defect(C, k, A);
  if (defect > 1e-10 * (1.0 + max_abs(A)))
    throw Error("delocalized", operation, "operator is not deck-equivariant (defect " + std::to_string(defect) + ")");
}

/// Tr_c(A) = Σ_σ Σ_{h∈c} ⟨U_h e_σ̃, A e_σ̃⟩ with σ̃ the chosen lift of each
/// base k-simplex σ. `lifts` defaults to the identity-sheet lifts.
inline double tr_delocalized(const CoverComplex& C, int k, const Eigen::MatrixXd& A, const ConjugacyClass& c,
                             const std::vector<std::size_t>& lifts = {}) {
  require_equivariant(C, k, A, "tr_delocalized");
  const std::size_t nbase = C.base().count(k);
  if (!lifts.empty() && lifts.size() != nbase) throw Error("delocalized", "tr_delocalized", "one lift per base simplex expected");
  double sum = 0.0;
  for (std::size_t s = 0; s < nbase; ++s) {
    const std::size_t lift = lifts.empty() ? C.fundamental_lift(k, s) : lifts[s];
    for (int h : c.members) {
      const SignedIndex& img = C.deck(h, k, lift);
      sum += img.sign * A(static_cast<Eigen::Index>(img.index), static_cast<Eigen::Index>(lift));
    }
  }
  return sum;
}

/// (1/|G|) Σ_{h∈c} trace(U_hᵀ A); equals tr_delocalized for equivariant A.
inline double global_trace_crosscheck(const CoverComplex& C, int k, const Eigen::MatrixXd& A, const ConjugacyClass& c) {
  double sum = 0.0;
  for (int h : c.members)
    for (std::size_t i = 0; i < C.total().count(k); ++i) {
      const SignedIndex& img = C.deck(h, k, i);
      sum += img.sign * A(static_cast<Eigen::Index>(img.index), static_cast<Eigen::Index>(i));
    }
  return sum / C.order();
}

/// Global formula evaluated and compared against the fundamental-domain
/// formula; throws if they differ by more than `tol`.
inline double checked_tr_delocalized(const CoverComplex& C, int k, const Eigen::MatrixXd& A, const ConjugacyClass& c, double tol = 1e-10) {
  const double local = tr_delocalized(C, k, A, c);
  const double global = global_trace_crosscheck(C, k, A, c);
  if (std::abs(local - global) > tol * (1.0 + std::abs(local)))
    throw Error("delocalized", "global_trace_crosscheck", "fundamental-domain and global traces disagree: " + std::to_string(local) + " vs " + std::to_string(global));
  return local;
}

inline const ConjugacyClass& identity_class(const std::vector<ConjugacyClass>& classes, const FiniteGroup& G) {
  return class_of(classes, G.identity());
}

/// Positive trace T_c = Tr_e + Tr_c / |c|.
inline double t_trace(const CoverComplex& C, int k, const Eigen::MatrixXd& A, const ConjugacyClass& c) {
  ConjugacyClass e;
  e.representative = C.group().identity();
  e.members = {e.representative};
  return tr_delocalized(C, k, A, e) + tr_delocalized(C, k, A, c) / static_cast<double>(c.size());
}

/// Group average (1/|G|) Σ_h U_h B U_hᵀ; the identity is a fixed point.
inline Eigen::MatrixXd average_over_deck(const CoverComplex& C, int k, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(B.rows(), B.cols());
  for (int h = 0; h < C.order(); ++h) A += conjugate_by_deck(C, h, k, B);
  return A / static_cast<double>(C.order());
}

/// (1/|G|) Σ_h U_h B U_hᵀ for B with entries uniform in [-1,1) drawn from
/// SplitMix64(seed) in row-major order.
inline Eigen::MatrixXd random_equivariant(const CoverComplex& C, int k, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(C.total().count(k));
  SplitMix64 rng(seed);
  Eigen::MatrixXd B(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) B(i, j) = rng.symmetric();
  return average_over_deck(C, k, B);
}

/// Trace of the deck transformation h on H_k(total; Q), computed exactly.
///
/// A basis of cycles modulo boundaries is picked by row reduction of
/// [∂_{k+1} | ker ∂_k]; each h·z_i is then expressed in the basis
/// (boundary pivots, z_1..z_b) and the z_i-coefficients are summed.
inline std::vector<mpq_class> character_oracle_all(const CoverComplex& C, int k, const std::vector<int>& elements) {
  const SimplicialComplex& T = C.total();
  const std::size_t n = T.count(k);
  const IntMatrix up = detail::boundary_any(T, k + 1);
  const KernelBasis Z = kernel_basis(detail::boundary_any(T, k));
  const std::size_t nup = static_cast<std::size_t>(up.cols());

  RationalMatrix first(n, nup + Z.vectors.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < nup; ++j)
      if (up(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0) first(i, j) = static_cast<long>(up(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    for (std::size_t j = 0; j < Z.vectors.size(); ++j) first(i, nup + j) = Z.vectors[j][i];
  }
  const auto pivots = rref_in_place(first);
  std::vector<std::size_t> boundary_cols, cycle_reps;
  for (auto p : pivots) (p < nup ? boundary_cols : cycle_reps).push_back(p);

  const std::size_t nb = boundary_cols.size();
  const std::size_t b = cycle_reps.size();
  std::vector<mpq_class> out(elements.size(), 0);
  if (b == 0) return out;

  RationalMatrix second(n, nb + b + b * elements.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      const auto v = up(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(boundary_cols[j]));
      if (v != 0) second(i, j) = static_cast<long>(v);
    }
  for (std::size_t r = 0; r < b; ++r) {
    const RationalVector& z = Z.vectors[cycle_reps[r] - nup];
    for (std::size_t i = 0; i < n; ++i) second(i, nb + r) = z[i];
    for (std::size_t e = 0; e < elements.size(); ++e) {
      const std::size_t col = nb + b + e * b + r;
      for (std::size_t i = 0; i < n; ++i) {
        if (z[i] == 0) continue;
        const SignedIndex& img = C.deck(elements[e], k, i);
        second(img.index, col) = img.sign * z[i];
      }
    }
  }
  const auto piv2 = rref_in_place(second);
  if (piv2.size() != nb + b || piv2.back() != nb + b - 1)
    throw Error("delocalized", "character_oracle", "homology basis is not independent");
  for (std::size_t e = 0; e < elements.size(); ++e)
    for (std::size_t r = 0; r < b; ++r) out[e] += second(nb + r, nb + b + e * b + r);
  return out;
}

inline mpq_class character_oracle(const CoverComplex& C, int k, int h) {
  if (!C.group().contains(h)) throw Error("delocalized", "character_oracle", "group element out of range");
  return character_oracle_all(C, k, {h}).front();
}

/// Harmonic projectors of the total complex in every degree, each checked
/// against the exact Betti number of the total complex.
struct CoverHarmonics {
  std::vector<SpectralPackage> spectra;
  std::vector<HarmonicProjector> projectors;
  std::vector<std::size_t> betti;  // exact, total complex
  bool needs_review = false;
};

inline CoverHarmonics cover_harmonics(const CoverComplex& C) {
  CoverHarmonics h;
  for (int k = 0; k <= C.dimension(); ++k) {
    h.betti.push_back(betti_exact(C.total(), k));
    h.spectra.push_back(spectrum(laplacian(C.total(), k), k));
    h.projectors.push_back(harmonic_projector(h.spectra.back(), h.betti.back()));
    h.needs_review = h.needs_review || h.spectra.back().needs_review;
  }
  return h;
}

/// β_c^k = Tr_c(P^k).
inline double beta_delocalized(const CoverComplex& C, const CoverHarmonics& H, int k, const ConjugacyClass& c) {
  return checked_tr_delocalized(C, k, H.projectors.at(static_cast<std::size_t>(k)).matrix, c);
}

inline double beta_delocalized(const CoverComplex& C, int k, const ConjugacyClass& c) {
  return beta_delocalized(C, cover_harmonics(C), k, c);
}

/// Σ_k (-1)^k values[k].
inline double alternating_sum(const std::vector<double>& values) {
  double s = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) s += (k % 2 == 0 ? 1.0 : -1.0) * values[k];
  return s;
}

/// Σ_{j<=k} (-1)^{k-j} values[j] for each k.
inline std::vector<double> partial_alternating_sums(const std::vector<double>& values) {
  std::vector<double> out(values.size());
  double running = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    running = values[k] - running;
    out[k] = running;
  }
  return out;
}

struct DelocalizedRow {
  int class_rep = 0;
  std::size_t class_size = 1;
  int k = 0;
  double beta = 0.0;
  double gamma = 0.0;
  double b_term = 0.0;
  double euler = 0.0;
  double beta_oracle = 0.0;
};

struct DelocalizedReport {
  std::vector<DelocalizedRow> rows;  // class-major, then degree
  double oracle_tolerance = 1e-8;
  double euler_tolerance = 1e-9;
  bool needs_review = false;

  /// β_e^k(for class rows) etc. are looked up by class representative.
  std::vector<double> column(int class_rep, double DelocalizedRow::*field) const {
    std::vector<double> out;
    for (const auto& r : rows)
      if (r.class_rep == class_rep) out.push_back(r.*field);
    return out;
  }
};

/// B_c^k = (1/|c|) Σ_{j<=k} (-1)^{k-j} β_c^j.
inline std::vector<double> b_term_report(const std::vector<double>& beta_class, std::size_t class_size) {
  std::vector<double> out = partial_alternating_sums(beta_class);
  for (double& v : out) v /= static_cast<double>(class_size);
  return out;
}

/// γ_c^k = β_e^k + β_c^k / |c|.
inline std::vector<double> gamma_from_betas(const std::vector<double>& beta_e, const std::vector<double>& beta_c, std::size_t class_size) {
  std::vector<double> out(beta_e.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = beta_e[k] + beta_c[k] / static_cast<double>(class_size);
  return out;
}

inline double euler_delocalized(const std::vector<double>& beta_class) { return alternating_sum(beta_class); }

/// Spectral β, γ, B and Euler sums per class and degree, with the character
/// oracle value stored alongside each spectral β.
inline DelocalizedReport delocalized_report(const CoverComplex& C, const CoverHarmonics& H) {
  DelocalizedReport rep;
  rep.needs_review = H.needs_review;
  const auto classes = conjugacy_classes(C.group());
  const int n = C.dimension();
  std::vector<int> all(static_cast<std::size_t>(C.order()));
  for (int h = 0; h < C.order(); ++h) all[static_cast<std::size_t>(h)] = h;
  std::vector<std::vector<mpq_class>> chars;
  for (int k = 0; k <= n; ++k) chars.push_back(character_oracle_all(C, k, all));

  const ConjugacyClass& e = identity_class(classes, C.group());
  std::vector<double> beta_e;
  for (int k = 0; k <= n; ++k) beta_e.push_back(beta_delocalized(C, H, k, e));

  for (const auto& c : classes) {
    std::vector<double> beta_c, oracle_c;
    for (int k = 0; k <= n; ++k) {
      beta_c.push_back(beta_delocalized(C, H, k, c));
      mpq_class sum = 0;
      for (int h : c.members) sum += chars[static_cast<std::size_t>(k)][static_cast<std::size_t>(h)];
      sum /= C.order();
      oracle_c.push_back(sum.get_d());
    }
    const auto gamma = gamma_from_betas(beta_e, beta_c, c.size());
    const auto bterm = b_term_report(beta_c, c.size());
    const double chi = euler_delocalized(beta_c);
    for (int k = 0; k <= n; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      rep.rows.push_back(DelocalizedRow{c.representative, c.size(), k, beta_c[uk], gamma[uk], bterm[uk], chi, oracle_c[uk]});
    }
  }
  return rep;
}

inline DelocalizedReport delocalized_report(const CoverComplex& C) { return delocalized_report(C, cover_harmonics(C)); }

}  // namespace eqhodge
