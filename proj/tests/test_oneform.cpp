#include <gtest/gtest.h>

#include <cmath>

#include "eqhodge/delocalized.hpp"
#include "eqhodge/fixtures.hpp"
#include "eqhodge/morse.hpp"
#include "eqhodge/oneform.hpp"
#include "oracles.hpp"

using namespace eqhodge;

namespace {

using Counts = std::vector<std::size_t>;
using Entries = std::vector<std::tuple<int, int, double>>;

ClosedOneCochain fixture_omega(const std::string& name) {
  const auto d = builtin_fixture(name);
  return ClosedOneCochain(d.complex, d.omega);
}

// df for an integer vertex function, written out edge by edge.
ClosedOneCochain gradient(const SimplicialComplex& K, const std::vector<int>& f) {
  std::vector<double> w;
  for (const auto& e : K.simplices(1)) w.push_back(f[static_cast<std::size_t>(e[1])] - f[static_cast<std::size_t>(e[0])]);
  return ClosedOneCochain(K, w);
}

}  // namespace

TEST(OneForm, ExactCochainHasZeroPeriods) {
  const auto K = torus_complex();
  std::vector<int> f(K.vertex_count());
  for (std::size_t v = 0; v < f.size(); ++v) f[v] = static_cast<int>((v * 5) % 7);
  const auto p = periods(K, gradient(K, f));
  EXPECT_EQ(p.cycles.size(), 2u);
  EXPECT_TRUE(p.exact());
  for (double x : p.periods) EXPECT_EQ(x, 0.0);
}

TEST(OneForm, TrianglePeriodIsOne) {
  const auto K = cycle_complex(3);
  const auto p = periods(K, fixture_omega("cycle(3)"));
  ASSERT_EQ(p.periods.size(), 1u);
  EXPECT_EQ(std::abs(p.periods[0]), 1.0);
  EXPECT_TRUE(p.integer_valued);
  EXPECT_FALSE(p.exact());
}

TEST(OneForm, TorusDocumentedLoops) {
  const auto d = builtin_fixture("torus");
  const ClosedOneCochain w(d.complex, d.omega);
  ASSERT_EQ(d.loops.size(), 2u);
  EXPECT_EQ(evaluate_on_chain(w, loop_chain(d.complex, d.loops[0])), 1.0);
  EXPECT_EQ(evaluate_on_chain(w, loop_chain(d.complex, d.loops[1])), 0.0);
  const auto p = periods(d.complex, w);
  EXPECT_EQ(p.cycles.size(), 2u);
  EXPECT_FALSE(p.exact());
}

TEST(OneForm, PeriodCyclesAreCycles) {
  for (const auto& name : {"torus", "klein_bottle", "figure_eight", "rp2"}) {
    const auto K = builtin_complex(name);
    const auto p = periods(K, ClosedOneCochain(K, std::vector<double>(K.count(1), 0.0)));
    EXPECT_EQ(p.cycles.size(), oracle::betti_mod_p(K)[1]) << name;
    const auto d1 = boundary_matrix(K, 1);
    for (const auto& z : p.cycles)
      for (Eigen::Index r = 0; r < d1.rows(); ++r) {
        long long s = 0;
        for (Eigen::Index c = 0; c < d1.cols(); ++c) s += d1(r, c) * z[static_cast<std::size_t>(c)];
        EXPECT_EQ(s, 0) << name;
      }
  }
}

TEST(OneForm, NonClosedCochainNamesTriangle) {
  const auto K = rp2_complex();
  try {
    periods(K, ClosedOneCochain(K, Entries{{0, 1, 1.0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("cochain is not closed on triangle [0,1,2]"), std::string::npos) << e.what();
  }
}

TEST(OneForm, CyclicCoverOfTriangleIsLongerCycle) {
  const auto C = cyclic_cover(cycle_complex(3), fixture_omega("cycle(3)"), 2);
  EXPECT_EQ(C.total().count(0), 6u);
  EXPECT_EQ(oracle::betti_mod_p(C.total()), (Counts{1, 1}));
}

TEST(OneForm, CyclicCoversOfTorus) {
  const auto K = torus_complex();
  const auto w = fixture_omega("torus");
  EXPECT_EQ(oracle::betti_mod_p(cyclic_cover(K, w, 3).total()), (Counts{1, 2, 1}));
  EXPECT_EQ(cyclic_cover(K, w, 1).total(), K);
}

TEST(OneForm, CyclicCoverRejectsBadInput) {
  const auto K = cycle_complex(3);
  EXPECT_THROW(cyclic_cover(K, ClosedOneCochain(K, Entries{{0, 1, 0.5}}), 2), Error);
  EXPECT_THROW(cyclic_cover(K, fixture_omega("cycle(3)"), 0), Error);
}

TEST(OneForm, LiftedCochainMatchesProjection) {
  const auto C = cyclic_cover(torus_complex(), fixture_omega("torus"), 3);
  const auto w = fixture_omega("torus");
  const auto lifted = lift_cochain(C, w);
  for (std::size_t i = 0; i < lifted.size(); ++i) EXPECT_EQ(lifted[i], w[C.project(1, i)]);
}

TEST(OneForm, ExactApproximationOnTriangleCover) {
  const auto w = fixture_omega("cycle(3)");
  const auto C = cyclic_cover(cycle_complex(3), w, 4);
  const auto a = exact_approximation(C, w);
  EXPECT_EQ(a.counts, (Counts{1, 1}));
  EXPECT_TRUE(oracle::matching_is_acyclic(C.total(), a.matching.pairs));
  // The primitive integrates ω_m exactly along tree edges.
  const auto lifted = lift_cochain(C, w);
  const auto& T = C.total();
  for (std::size_t e = 0; e < T.count(1); ++e) {
    if (!a.forest.tree_edge[e]) continue;
    const auto& s = T.simplex(1, e);
    EXPECT_EQ(a.primitive[static_cast<std::size_t>(s[1])] - a.primitive[static_cast<std::size_t>(s[0])], lifted[e]);
  }
  EXPECT_FALSE(a.defect.has_value());
}

TEST(OneForm, ExactApproximationSatisfiesWeakInequalities) {
  for (const auto& name : {"torus", "klein_bottle"}) {
    const auto w = fixture_omega(name);
    const auto K = builtin_complex(name);
    for (int m : {2, 3, 5}) {
      const auto C = cyclic_cover(K, w, m);
      const auto a = exact_approximation(C, w, Counts(3, 0));
      const auto b = oracle::betti_mod_p(C.total());
      for (std::size_t k = 0; k < 3; ++k) EXPECT_GE(a.counts[k], b[k]) << name << " m=" << m;
      ASSERT_TRUE(a.defect.has_value());
      for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ((*a.defect)[k], static_cast<long long>(a.counts[k]));
    }
  }
}

TEST(OneForm, TorusDelahgarPasses) {
  const auto rep = verify_delahgar(torus_complex(), fixture_omega("torus"), 1, {2, 3, 4, 5, 6});
  EXPECT_TRUE(rep.all_pass());
  EXPECT_FALSE(rep.exact_form);
  EXPECT_NEAR(rep.slack_exponent, -1.0, 1e-9);
  for (const auto& r : rep.rows) EXPECT_NEAR(r.m * r.beta_e, (Counts{1, 2, 1})[static_cast<std::size_t>(r.k)], 1e-9);
}

TEST(OneForm, KleinBottleDelahgarPasses) {
  const auto rep = verify_delahgar(klein_bottle_complex(), fixture_omega("klein_bottle"), 1, {2, 3, 4});
  EXPECT_TRUE(rep.all_pass());
}

TEST(OneForm, ExactFormReducesToDelocalizedMorse) {
  // ω = 0 is exact; each row is the plain delocalized check on C/m plus slack.
  const auto K = cycle_complex(3);
  const ClosedOneCochain zero(K, std::vector<double>(K.count(1), 0.0));
  const auto rep = verify_delahgar(K, zero, 1, {2, 3});
  EXPECT_TRUE(rep.exact_form);
  EXPECT_TRUE(rep.all_pass());
  for (int m : {2, 3}) {
    std::vector<double> counts;
    std::vector<double> gamma;
    for (const auto& r : rep.rows)
      if (r.m == m) {
        counts.push_back(static_cast<double>(r.count) / m);
        gamma.push_back(r.gamma);
      }
    const auto v = verify_delocalized_morse(counts, gamma, 1, 1e-8);
    std::size_t i = 0;
    for (const auto& r : rep.rows) {
      if (r.m != m) continue;
      EXPECT_NEAR(r.lhs, v.lhs[i], 1e-10);
      EXPECT_NEAR(r.rhs + r.slack, v.rhs[i], 1e-10);
      ++i;
    }
  }
}

TEST(OneForm, TriangleGammaZeroIsTwoOverM) {
  const auto rep = verify_delahgar(cycle_complex(3), fixture_omega("cycle(3)"), 1, {2, 3, 4, 5});
  for (const auto& r : rep.rows)
    if (r.k == 0) EXPECT_NEAR(r.gamma, 2.0 / r.m, 1e-10) << r.m;
  EXPECT_TRUE(rep.all_pass());
}

TEST(OneForm, DelahgarRejectsBadInput) {
  const auto K = cycle_complex(3);
  EXPECT_THROW(verify_delahgar(K, fixture_omega("cycle(3)"), 1, {}), Error);
  EXPECT_THROW(verify_delahgar(K, fixture_omega("cycle(3)"), 1, {1}), Error);
  EXPECT_THROW(verify_delahgar(K, ClosedOneCochain(K, Entries{{0, 1, 0.5}}), 1, {2}), Error);
}

TEST(OneForm, TorusFibrationTrend) {
  const auto K = torus_complex();
  const auto rep = fibration_trend_report(K, fixture_omega("torus"), {1, 2, 3, 4, 6});
  EXPECT_TRUE(rep.all_pass());
  for (const auto& e : rep.exponent) {
    ASSERT_TRUE(e.has_value());
    EXPECT_NEAR(*e, 1.0, 1e-9);
  }
  const auto b = oracle::betti_mod_p(K);
  for (const auto& r : rep.rows)
    if (r.m == 1) {
      EXPECT_EQ(r.betti_cover, b[static_cast<std::size_t>(r.k)]);
      EXPECT_NEAR(r.beta_e, static_cast<double>(b[static_cast<std::size_t>(r.k)]), 1e-10);
    }
}

TEST(OneForm, LogLogSlope) {
  EXPECT_NEAR(*log_log_slope({1, 2, 4}, {1, 0.5, 0.25}), -1.0, 1e-12);
  EXPECT_FALSE(log_log_slope({2}, {1}).has_value());
  EXPECT_FALSE(log_log_slope({2, 2}, {1, 3}).has_value());
}
