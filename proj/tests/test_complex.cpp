#include <gtest/gtest.h>

#include "eqhodge/fixtures.hpp"
#include "eqhodge/group.hpp"
#include "oracles.hpp"

using namespace eqhodge;

namespace {

const std::vector<std::string> kFixtures = {"cycle(3)", "cycle(7)", "rp2", "torus", "klein_bottle", "figure_eight", "mapping_torus(1,2,0)", "mapping_torus(0,3,2,1)"};

}

TEST(Complex, SimplicesAreSortedAndLexicographic) {
  const auto K = build_complex({{2, 1, 0}, {3, 2}});
  EXPECT_EQ(K.count(0), 4u);
  EXPECT_EQ(K.count(1), 4u);
  EXPECT_EQ(K.count(2), 1u);
  EXPECT_EQ(K.simplex(1, 0), (Simplex{0, 1}));
  EXPECT_EQ(K.simplex(1, 3), (Simplex{2, 3}));
  EXPECT_EQ(K.index_of({1, 2}), std::optional<std::size_t>(2));
  EXPECT_FALSE(K.index_of({0, 3}).has_value());
}

TEST(Complex, BoundaryOfTriangle) {
  const auto K = build_complex({{0, 1, 2}});
  const IntMatrix d2 = boundary_matrix(K, 2);
  // ∂[0,1,2] = [1,2] − [0,2] + [0,1]; edges ordered [0,1],[0,2],[1,2].
  EXPECT_EQ(d2(0, 0), 1);
  EXPECT_EQ(d2(1, 0), -1);
  EXPECT_EQ(d2(2, 0), 1);
}

TEST(Complex, BoundarySquaresToZero) {
  for (const auto& name : kFixtures) {
    const auto K = builtin_complex(name);
    for (int k = 2; k <= K.dimension(); ++k) EXPECT_TRUE((boundary_matrix(K, k - 1) * boundary_matrix(K, k)).isZero()) << name;
  }
}

TEST(Complex, BoundaryDegreeOutOfRange) {
  const auto K = cycle_complex(3);
  EXPECT_THROW(boundary_matrix(K, 0), Error);
  EXPECT_THROW(boundary_matrix(K, 2), Error);
}

TEST(Complex, BettiMatchesModularRankOracle) {
  for (const auto& name : kFixtures) {
    const auto K = builtin_complex(name);
    EXPECT_EQ(betti_numbers(K), oracle::betti_mod_p(K)) << name;
  }
}

TEST(Complex, FixtureBettiNumbers) {
  EXPECT_EQ(betti_numbers(cycle_complex(3)), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(betti_numbers(rp2_complex()), (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(betti_numbers(torus_complex()), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(betti_numbers(klein_bottle_complex()), (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_EQ(betti_numbers(figure_eight_complex()), (std::vector<std::size_t>{1, 2}));
}

TEST(Complex, FixtureCounts) {
  const auto rp2 = rp2_complex();
  EXPECT_EQ(rp2.count(0), 6u);
  EXPECT_EQ(rp2.count(1), 15u);
  EXPECT_EQ(rp2.count(2), 10u);
  EXPECT_EQ(rp2.euler_characteristic(), 1);
  EXPECT_EQ(torus_complex().euler_characteristic(), 0);
  EXPECT_EQ(cycle_complex(3), builtin_complex("cycle(3)"));
}

TEST(Complex, SurfaceFixturesArePseudomanifolds) {
  for (const auto& name : {"rp2", "torus", "klein_bottle"}) {
    const auto K = builtin_complex(name);
    std::vector<int> faces(K.count(1), 0);
    for (const auto& t : K.simplices(2))
      for (int d = 0; d < 3; ++d) {
        Simplex e = t;
        e.erase(e.begin() + d);
        ++faces[*K.index_of(e)];
      }
    for (int c : faces) EXPECT_EQ(c, 2) << name;
  }
}

TEST(Complex, EulerEqualsAlternatingBettiSum) {
  for (const auto& name : kFixtures) {
    const auto K = builtin_complex(name);
    const auto b = betti_numbers(K);
    long long s = 0;
    for (std::size_t k = 0; k < b.size(); ++k) s += (k % 2 ? -1 : 1) * static_cast<long long>(b[k]);
    EXPECT_EQ(s, K.euler_characteristic()) << name;
  }
}

TEST(Complex, MaximalSimplicesRoundTrip) {
  for (const auto& name : kFixtures) {
    const auto K = builtin_complex(name);
    EXPECT_EQ(build_complex(K.maximal_simplices()), K) << name;
  }
}

TEST(Complex, RejectsMalformedFacets) {
  EXPECT_THROW(build_complex({}), Error);
  EXPECT_THROW(build_complex({{}}), Error);
  EXPECT_THROW(build_complex({{0, 0, 1}}), Error);
  EXPECT_THROW(build_complex({{-1, 0}}), Error);
  EXPECT_THROW(build_complex({{0, 2}}), Error);  // vertex 1 missing
}

TEST(Complex, ErrorsNameModuleAndOperation) {
  try {
    build_complex({{0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.module(), "complex");
    EXPECT_EQ(std::string(e.what()).rfind("complex::", 0), 0u);
  }
}

TEST(Complex, BuiltinNames) {
  EXPECT_EQ(builtin_complex("cycle(5)").count(1), 5u);
  EXPECT_EQ(builtin_complex(" cycle( 4 ) ").count(0), 4u);
  EXPECT_THROW(builtin_complex("cycle(2)"), Error);
  EXPECT_THROW(builtin_complex("cycle(x)"), Error);
  EXPECT_THROW(builtin_complex("sphere"), Error);
  EXPECT_THROW(builtin_complex("mapping_torus(0,2,1,3)"), Error);  // not a symmetry of the 4-cycle
  EXPECT_EQ(betti_numbers(builtin_complex("mapping_torus(1,2,3,0)")), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(betti_numbers(builtin_complex("mapping_torus(0,3,2,1)")), (std::vector<std::size_t>{1, 1, 0}));
}

TEST(Group, CyclicAndSymmetric) {
  const auto z5 = cyclic_group(5);
  EXPECT_EQ(z5.mul(3, 4), 2);
  EXPECT_EQ(z5.inverse(2), 3);
  EXPECT_EQ(conjugacy_classes(z5).size(), 5u);
  const auto s3 = symmetric_group_3();
  const auto classes = conjugacy_classes(s3);
  ASSERT_EQ(classes.size(), 3u);
  EXPECT_EQ(classes[0].size(), 1u);
  EXPECT_EQ(class_of(classes, 1).size(), 3u);
  EXPECT_EQ(class_of(classes, 3).size(), 2u);
  EXPECT_TRUE(class_of(classes, 4).contains(3));
}

TEST(Group, RejectsInvalidTables) {
  EXPECT_THROW(FiniteGroup({{0, 1}, {0, 1}}), Error);
  EXPECT_THROW(FiniteGroup({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}), Error);
  EXPECT_THROW(cyclic_group(0), Error);
}
