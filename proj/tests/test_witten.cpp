#include <gtest/gtest.h>

#include <Eigen/LU>
#include <cmath>

#include "eqhodge/fixtures.hpp"
#include "eqhodge/witten.hpp"

using namespace eqhodge;

namespace {

CoverComplex rp2_cover() {
  const auto K = rp2_complex();
  return build_cover(K, cyclic_group(2), orientation_voltage(K));
}

ConjugacyClass single(int g) {
  ConjugacyClass c;
  c.representative = g;
  c.members = {g};
  return c;
}

/// E_k = diag(exp(s·F(σ))) over total k-simplices, formed explicitly.
Eigen::MatrixXd weight_matrix(const CoverComplex& C, int k, const std::vector<double>& f, double s) {
  const auto fl = lift_vertex_function(C, f);
  const auto n = static_cast<Eigen::Index>(C.total().count(k));
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double F = 0;
    for (int v : C.total().simplex(k, static_cast<std::size_t>(i))) F += fl[static_cast<std::size_t>(v)];
    E(i, i) = std::exp(s * F);
  }
  return E;
}

}  // namespace

TEST(Witten, EntryFollowsConjugationFormula) {
  const auto C = trivial_cover(cycle_complex(3));
  const Eigen::MatrixXd d = deformed_coboundary(C, 0, {1.0, {0, 1, 2}});
  // Row [0,1], column vertex 0: −exp(s·(F(v0) − F([0,1]))) = −e^{-1}.
  EXPECT_NEAR(d(0, 0), -std::exp(-1.0), 1e-14);
  EXPECT_NEAR(d(0, 1), 1.0, 1e-14);
}

TEST(Witten, MatchesExplicitConjugation) {
  const auto C = rp2_cover();
  const std::vector<double> f = builtin_fixture("rp2").f;
  for (double s : {0.0, 0.7, 2.0})
    for (int k = 0; k < 2; ++k) {
      const Eigen::MatrixXd expected = weight_matrix(C, k + 1, f, s).inverse() * coboundary(C.total(), k) * weight_matrix(C, k, f, s);
      EXPECT_LE(max_abs(deformed_coboundary(C, k, {s, f}) - expected), 1e-12);
    }
}

TEST(Witten, DeformedCoboundarySquaresToZero) {
  const auto C = rp2_cover();
  const DeformationParameters p{1.5, builtin_fixture("rp2").f};
  EXPECT_LE(max_abs(deformed_coboundary(C, 1, p) * deformed_coboundary(C, 0, p)), 1e-12);
}

TEST(Witten, KernelDimensionIsIndependentOfS) {
  const auto C = rp2_cover();
  const auto f = builtin_fixture("rp2").f;
  const auto b = betti_numbers(C.total());
  for (double s : {0.0, 0.5, 2.0, 4.0})
    for (int k = 0; k <= 2; ++k) EXPECT_EQ(harmonic_projector(spectrum(deformed_laplacian(C, k, {s, f}), k)).rank, b[static_cast<std::size_t>(k)]);
}

TEST(Witten, GammaIsInvariantUnderDeformation) {
  const auto C = rp2_cover();
  const auto f = builtin_fixture("rp2").f;
  EXPECT_NEAR(deformed_gamma(C, 0, single(1), {1.0, f}), 1.0, 1e-9);
  EXPECT_NEAR(deformed_gamma(C, 2, single(1), {2.0, f}), 0.0, 1e-9);
  for (int k = 0; k <= 2; ++k) EXPECT_NEAR(deformed_gamma(C, k, single(1), {4.0, f}), deformed_gamma(C, k, single(1), {0.0, f}), 1e-6);
}

TEST(Witten, HeatTraceDominatesGamma) {
  const auto C = rp2_cover();
  const auto f = builtin_fixture("rp2").f;
  EXPECT_GE(mu(C, 0, single(1), {1.0, f}, 1.0), 1.0 - 1e-9);
}

TEST(Witten, AnalyticMorseOnProjectivePlane) {
  const auto C = rp2_cover();
  const auto f = builtin_fixture("rp2").f;
  for (double s : {0.0, 1.0}) {
    const auto H = deformed_harmonics(C, {s, f});
    std::vector<double> mus, gam;
    for (int k = 0; k <= 2; ++k) {
      mus.push_back(mu(C, H, k, single(1), 1.0));
      gam.push_back(deformed_gamma(C, H, k, single(1)));
    }
    const auto v = verify_analytic_morse(mus, gam, 2, 1e-9 * 40);
    EXPECT_TRUE(v.all_pass());
    EXPECT_LE(deformed_mckean_singer_defect(C, H, 1.0), 1e-9);
  }
}

TEST(Witten, AnalyticMorseDetectsViolation) {
  const auto v = verify_analytic_morse({0.5, 0.0, 1.0}, {1.0, 0.0, 0.0}, 2, 1e-9);
  EXPECT_FALSE(v.pass[0]);
  EXPECT_FALSE(v.pass[2]);
  EXPECT_THROW(verify_analytic_morse({1.0}, {1.0, 0.0}, 1, 1e-9), Error);
}

TEST(Witten, OverflowGuard) {
  const auto C = trivial_cover(cycle_complex(3));
  EXPECT_THROW(deformed_coboundary(C, 0, {200.0, {0.0, 1.0, 1.0}}), Error);  // s·max|F| = 400
  EXPECT_NO_THROW(deformed_coboundary(C, 0, {140.0, {0.0, 1.0, 1.0}}));
  EXPECT_THROW(deformed_coboundary(C, 0, {-1.0, {0.0, 1.0, 2.0}}), Error);
  EXPECT_THROW(deformed_coboundary(C, 0, {1.0, {0.0, 1.0}}), Error);
}

TEST(Witten, ZeroDeformationIsPlainCoboundary) {
  const auto C = rp2_cover();
  EXPECT_EQ(deformed_coboundary(C, 1, {0.0, builtin_fixture("rp2").f}), coboundary(C.total(), 1));
}
