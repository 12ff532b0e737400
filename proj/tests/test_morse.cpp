#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "eqhodge/fixtures.hpp"
#include "eqhodge/morse.hpp"
#include "eqhodge/random.hpp"
#include "oracles.hpp"

using namespace eqhodge;

namespace {

using Counts = std::vector<std::size_t>;

CoverComplex rp2_cover() {
  const auto K = rp2_complex();
  return build_cover(K, cyclic_group(2), orientation_voltage(K));
}

}  // namespace

TEST(Morse, EmptyMatchingMakesEverythingCritical) {
  const auto v = validate_matching(cycle_complex(3), {});
  EXPECT_TRUE(v.valid);
  EXPECT_EQ(v.critical_counts, (Counts{3, 3}));
}

TEST(Morse, HandCheckedMatchingOnTriangle) {
  const MorseMatching M{{{{1}, {0, 1}}, {{2}, {1, 2}}}};
  const auto v = validate_matching(cycle_complex(3), M);
  EXPECT_TRUE(v.valid);
  EXPECT_EQ(v.critical_counts, (Counts{1, 1}));
}

TEST(Morse, DetectsDirectedCycleWithWitness) {
  const MorseMatching M{{{{0}, {0, 1}}, {{1}, {1, 2}}, {{2}, {0, 2}}}};
  const auto v = validate_matching(cycle_complex(3), M);
  EXPECT_FALSE(v.valid);
  EXPECT_NE(v.problem.find("cycle"), std::string::npos);
  EXPECT_GE(v.witness.size(), 4u);
  EXPECT_FALSE(oracle::matching_is_acyclic(cycle_complex(3), M.pairs));
  try {
    require_valid_matching(cycle_complex(3), M);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.module(), "morse");
    EXPECT_NE(std::string(e.what()).find(" -> "), std::string::npos);
  }
}

TEST(Morse, DetectsMalformedPairs) {
  const auto K = cycle_complex(3);
  EXPECT_EQ(validate_matching(K, {{{{0}, {0, 1}}, {{0}, {0, 2}}}}).problem, "cell matched twice");
  EXPECT_EQ(validate_matching(K, {{{{2}, {0, 1}}}}).problem, "pair is not a facet incidence");
  EXPECT_EQ(validate_matching(K, {{{{0}, {0, 3}}}}).problem, "pair references a cell not in the complex");
}

TEST(Morse, LowerStarOnTriangle) {
  EXPECT_EQ(require_valid_matching(cycle_complex(3), matching_from_vertex_function(cycle_complex(3), {0, 1, 2})), (Counts{1, 1}));
}

TEST(Morse, DocumentedFunctionsAreMinimal) {
  EXPECT_EQ(require_valid_matching(rp2_complex(), matching_from_vertex_function(rp2_complex(), builtin_fixture("rp2").f)), (Counts{1, 1, 1}));
  EXPECT_EQ(require_valid_matching(torus_complex(), matching_from_vertex_function(torus_complex(), builtin_fixture("torus").f)), (Counts{1, 2, 1}));
  EXPECT_EQ(require_valid_matching(klein_bottle_complex(), matching_from_vertex_function(klein_bottle_complex(), builtin_fixture("klein_bottle").f)),
            (Counts{1, 2, 1}));
}

TEST(Morse, RandomLowerStarMatchingsAreAcyclicAndSatisfyWeakInequalities) {
  std::uint64_t trial = 0;
  for (const auto& name : {"cycle(5)", "rp2", "torus", "klein_bottle", "figure_eight"}) {
    const auto K = builtin_complex(name);
    const auto b = oracle::betti_mod_p(K);
    for (int rep = 0; rep < 25; ++rep) {
      SplitMix64 rng(derive_seed(77, trial++));
      std::vector<double> f(K.vertex_count());
      for (auto& x : f) x = std::floor(rng.uniform() * 4);  // plenty of ties
      const auto M = matching_from_vertex_function(K, f);
      EXPECT_TRUE(oracle::matching_is_acyclic(K, M.pairs)) << name;
      const auto v = validate_matching(K, M);
      ASSERT_TRUE(v.valid) << name << ": " << v.problem;
      for (std::size_t k = 0; k < b.size(); ++k) EXPECT_GE(v.critical_counts[k], b[k]) << name;
    }
  }
}

TEST(Morse, ValidatorAgreesWithKahnOracleOnArbitraryPairings) {
  const auto K = torus_complex();
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    SplitMix64 rng(derive_seed(5, trial));
    // Random facet pairs between vertices and edges, keeping each cell once.
    MorseMatching M;
    std::set<Simplex> used;
    for (const auto& e : K.simplices(1)) {
      if (rng.uniform() < 0.6) continue;
      const Simplex v{e[rng.below(2)]};
      if (used.count(v) || used.count(e)) continue;
      used.insert(v);
      used.insert(e);
      M.pairs.emplace_back(v, e);
    }
    const auto v = validate_matching(K, M);
    const bool acyclic = oracle::matching_is_acyclic(K, M.pairs);
    if (acyclic)
      EXPECT_TRUE(v.valid) << v.problem;
    else
      EXPECT_EQ(v.problem, "modified Hasse digraph has a directed cycle");
  }
}

TEST(Morse, LiftMultipliesCounts) {
  VoltageAssignment a;
  a.set(0, 1, 1);
  const auto C = build_cover(cycle_complex(3), cyclic_group(2), a);
  const auto M = matching_from_vertex_function(C.base(), {0, 1, 2});
  EXPECT_EQ(require_valid_matching(C.total(), lift_matching(C, M)), (Counts{2, 2}));
  const auto R = rp2_cover();
  const auto L = lift_matching(R, matching_from_vertex_function(R.base(), builtin_fixture("rp2").f));
  EXPECT_TRUE(oracle::matching_is_acyclic(R.total(), L.pairs));
  EXPECT_EQ(require_valid_matching(R.total(), L), (Counts{2, 2, 2}));
}

TEST(Morse, LiftIsDeckInvariant) {
  const auto R = rp2_cover();
  const auto L = lift_matching(R, matching_from_vertex_function(R.base(), builtin_fixture("rp2").f));
  std::set<std::pair<Simplex, Simplex>> pairs(L.pairs.begin(), L.pairs.end());
  auto shift = [&](const Simplex& s) {
    Simplex out;
    for (int v : s) out.push_back((v / 2) * 2 + (v % 2 + 1) % 2);
    std::sort(out.begin(), out.end());
    return out;
  };
  for (const auto& [s, t] : L.pairs) EXPECT_TRUE(pairs.count({shift(s), shift(t)}));
}

TEST(Morse, ProjectivePlaneDelocalizedExample) {
  const auto v = verify_delocalized_morse({1, 1, 1}, {1, 0, 0}, 2, 1e-8);
  EXPECT_TRUE(v.all_pass());
  EXPECT_EQ(v.lhs, (std::vector<double>{1, 0, 1}));
  EXPECT_EQ(v.rhs, (std::vector<double>{1, -1, 1}));
}

TEST(Morse, DelocalizedCheckFailsWhenCountsAreTooSmall) {
  const auto v = verify_delocalized_morse({0, 1, 1}, {1, 0, 0}, 2, 1e-8);
  EXPECT_FALSE(v.pass[0]);
  EXPECT_FALSE(v.pass[2]);
  EXPECT_THROW(verify_delocalized_morse({1, 1}, {1, 0, 0}, 2, 1e-8), Error);
}

TEST(Morse, RejectsWrongLengthFunction) { EXPECT_THROW(matching_from_vertex_function(cycle_complex(3), {0, 1}), Error); }
