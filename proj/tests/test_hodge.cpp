#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "eqhodge/cover.hpp"
#include "eqhodge/fixtures.hpp"
#include "eqhodge/hodge.hpp"
#include "eqhodge/random.hpp"

using namespace eqhodge;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = rng.symmetric();
  return A;
}

std::vector<SimplicialComplex> fixtures() {
  std::vector<SimplicialComplex> out{cycle_complex(3), cycle_complex(6), rp2_complex(), torus_complex(), klein_bottle_complex(), figure_eight_complex()};
  const auto rp2 = rp2_complex();
  out.push_back(build_cover(rp2, cyclic_group(2), orientation_voltage(rp2)).total());
  out.push_back(build_cover(figure_eight_complex(), symmetric_group_3(), figure_eight_voltage()).total());
  return out;
}

}  // namespace

TEST(Jacobi, AgreesWithEigenSolverOracle) {
  for (int n : {1, 2, 5, 17, 40}) {
    const Eigen::MatrixXd A = random_symmetric(n, 1000 + static_cast<std::uint64_t>(n));
    const EigenDecomposition mine = jacobi_eigen(A);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(A);
    EXPECT_LE((mine.values - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10) << n;
    EXPECT_LE(max_abs(mine.vectors * mine.values.asDiagonal() * mine.vectors.transpose() - A), 1e-10) << n;
    EXPECT_LE(max_abs(mine.vectors.transpose() * mine.vectors - Eigen::MatrixXd::Identity(n, n)), 1e-12) << n;
  }
}

TEST(Jacobi, IsDeterministic) {
  const Eigen::MatrixXd A = random_symmetric(30, 7);
  const auto a = jacobi_eigen(A), b = jacobi_eigen(A);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(Jacobi, RejectsNonSymmetric) {
  Eigen::MatrixXd A(2, 2);
  A << 1, 2, 3, 4;
  EXPECT_THROW(jacobi_eigen(A), Error);
}

TEST(Jacobi, ReportsSweepBudget) {
  EXPECT_THROW(jacobi_eigen(random_symmetric(20, 3), JacobiOptions{1e-12, 1}), Error);
}

TEST(Hodge, TriangleVertexLaplacian) {
  const auto K = cycle_complex(3);
  Eigen::MatrixXd expected(3, 3);
  expected << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  EXPECT_TRUE(laplacian(K, 0).isApprox(expected));
  const auto s0 = spectrum(laplacian(K, 0), 0);
  EXPECT_NEAR(s0.eigenvalues(0), 0.0, 1e-12);
  EXPECT_NEAR(s0.eigenvalues(1), 3.0, 1e-12);
  EXPECT_NEAR(s0.eigenvalues(2), 3.0, 1e-12);
  const auto s1 = spectrum(laplacian(K, 1), 1);
  EXPECT_LE((s1.eigenvalues - s0.eigenvalues).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Hodge, TriangleHarmonicProjectorIsAveraging) {
  const auto P = harmonic_projector(spectrum(laplacian(cycle_complex(3), 0), 0), 1);
  EXPECT_LE(max_abs(P.matrix - Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0)), 1e-12);
}

TEST(Hodge, HeatTraceOfTriangle) {
  const auto s = spectrum(laplacian(cycle_complex(3), 0), 0);
  EXPECT_NEAR(heat_trace(s, 1.0), 1.0 + 2.0 * std::exp(-3.0), 1e-12);
  EXPECT_NEAR(heat_operator(s, 1.0).trace(), heat_trace(s, 1.0), 1e-12);
  EXPECT_THROW(heat_trace(s, 0.0), Error);
  EXPECT_NEAR(spectral_gap(s), 3.0, 1e-12);
}

TEST(Hodge, McKeanSingerIdentity) {
  EXPECT_LE(mckean_singer_defect(cycle_complex(3), 1.0), 1e-9);
  EXPECT_LE(mckean_singer_defect(rp2_complex(), 0.5), 1e-9);
  EXPECT_LE(mckean_singer_defect(torus_complex(), 2.0), 1e-9);
  for (const auto& K : fixtures())
    for (double t : {0.1, 1.0, 5.0}) EXPECT_LE(mckean_singer_defect(K, t), 1e-9);
}

TEST(Hodge, SpectralKernelEqualsExactBetti) {
  for (const auto& K : fixtures()) {
    const auto b = betti_numbers(K);
    for (int k = 0; k <= K.dimension(); ++k) {
      const auto s = spectrum(laplacian(K, k), k);
      const auto P = harmonic_projector(s);
      EXPECT_EQ(P.rank, b[static_cast<std::size_t>(k)]);
      EXPECT_NEAR(P.matrix.trace(), static_cast<double>(b[static_cast<std::size_t>(k)]), 1e-9);
    }
  }
}

TEST(Hodge, SphereTopProjectorHasTraceOne) {
  const auto rp2 = rp2_complex();
  const auto S2 = build_cover(rp2, cyclic_group(2), orientation_voltage(rp2)).total();
  EXPECT_NEAR(harmonic_projector(spectrum(laplacian(S2, 2), 2)).matrix.trace(), 1.0, 1e-10);
}

TEST(Hodge, ProjectorProperties) {
  for (const auto& K : fixtures())
    for (int k = 0; k <= K.dimension(); ++k) {
      const Eigen::MatrixXd L = laplacian(K, k);
      const auto s = spectrum(L, k);
      const auto r = package_residuals(s, L);
      EXPECT_LE(r.reconstruction, 1e-9);
      EXPECT_LE(r.orthonormality, 1e-10);
      EXPECT_GE(r.min_eigenvalue, -1e-9);
      const Eigen::MatrixXd P = harmonic_projector(s).matrix;
      EXPECT_LE(max_abs(P * P - P), 1e-10);
      EXPECT_LE(max_abs(L * P), 1e-9);
    }
}

TEST(Hodge, ProjectorRankMismatchIsHardError) {
  const auto s = spectrum(laplacian(cycle_complex(3), 0), 0);
  EXPECT_THROW(harmonic_projector(s, 2), Error);
}

TEST(Hodge, LaplacianFromCoboundariesMatchesIntegerLaplacian) {
  const auto K = torus_complex();
  EXPECT_TRUE(laplacian_from_coboundaries(coboundary(K, 0), coboundary(K, 1)).isApprox(laplacian(K, 1)));
  EXPECT_THROW(laplacian(K, 3), Error);
}
