#include <gtest/gtest.h>

#include <cmath>

#include "vrs/covering.hpp"
#include "vrs/error.hpp"

using namespace vrs;

namespace {

CoverConfig quick() {
  CoverConfig c;
  c.multistarts = 4;
  c.anneal_rounds = 10;
  return c;
}

std::vector<SpherePoint> octahedron() {
  return {SpherePoint({1, 0, 0}), SpherePoint({-1, 0, 0}), SpherePoint({0, 1, 0}),
          SpherePoint({0, -1, 0}), SpherePoint({0, 0, 1}), SpherePoint({0, 0, -1})};
}

}  // namespace

TEST(KnownCov, ClosedFormsOnCircle) {
  for (int k = 1; k <= 40; ++k) {
    EXPECT_EQ(known_cov(Ambient::sphere(1), k)->value, kPi / k);
    EXPECT_EQ(known_cov(Ambient::projective(1), k)->value, kPi / (2.0 * k));
    EXPECT_TRUE(known_cov(Ambient::sphere(1), k)->tight);
  }
  EXPECT_EQ(known_cov(Ambient::sphere(1), 4)->expr, "pi/4");
  EXPECT_EQ(known_cov(Ambient::projective(1), 3)->expr, "pi/6");
}

TEST(KnownCov, TableValues) {
  EXPECT_NEAR(known_cov(Ambient::sphere(2), 4)->value, std::acos(1.0 / 3.0), 1e-15);
  EXPECT_NEAR(known_cov(Ambient::sphere(2), 6)->value, 0.5 * std::acos(-1.0 / 3.0), 1e-15);
  EXPECT_NEAR(known_cov(Ambient::projective(2), 6)->value, std::acos(std::sqrt((5 + 2 * std::sqrt(5.0)) / 15)), 1e-15);
  EXPECT_FALSE(known_cov(Ambient::sphere(2), 8)->tight);
  EXPECT_FALSE(known_cov(Ambient::sphere(2), 5).has_value());
  EXPECT_FALSE(known_cov(Ambient::sphere(3), 5).has_value());
  EXPECT_EQ(known_cov(Ambient::sphere(3), 4)->value, kPi / 2);
  EXPECT_EQ(known_cov(Ambient::sphere(2), 1)->value, kPi);
  EXPECT_EQ(known_cov(Ambient::projective(3), 3)->expr, "pi/2");
  EXPECT_FALSE(known_cov(Ambient::projective(3), 4).has_value());
  EXPECT_THROW(known_cov(Ambient::sphere(2), 0), PreconditionError);
  EXPECT_EQ(known_table(Ambient::sphere(2)).size(), 7u);
  EXPECT_EQ(known_table(Ambient::projective(2)).size(), 7u);
}

TEST(ExactRadius, RegularConfigurations) {
  EXPECT_NEAR(exact_covering_radius(Ambient::sphere(2), octahedron()), std::acos(1.0 / std::sqrt(3.0)), 1e-12);
  const std::vector<SpherePoint> axes = {SpherePoint({1, 0, 0}), SpherePoint({0, 1, 0}), SpherePoint({0, 0, 1})};
  EXPECT_NEAR(exact_covering_radius(Ambient::projective(2), axes), 0.5 * std::acos(-1.0 / 3.0), 1e-12);
  // one point covers projective space within its diameter
  EXPECT_NEAR(exact_covering_radius(Ambient::projective(2), std::vector<SpherePoint>{SpherePoint({0, 0, 1})}), kPi / 2, 1e-12);
  EXPECT_NEAR(exact_covering_radius(Ambient::sphere(2), std::vector<SpherePoint>{SpherePoint({0, 0, 1})}), kPi, 1e-12);
  // centers on a great circle leave the poles at distance pi/2
  const std::vector<SpherePoint> ring = {SpherePoint({1, 0, 0}), SpherePoint({0, 1, 0}), SpherePoint({-1, 0, 0}),
                                         SpherePoint({0, -1, 0})};
  EXPECT_NEAR(exact_covering_radius(Ambient::sphere(2), ring), kPi / 2, 1e-12);
}

TEST(ExactRadius, AgreesWithFineGridFromAbove) {
  const auto grid = sample_space(Ambient::sphere(2), 20000, SampleStrategy::grid);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto c = sample_space(Ambient::sphere(2), 9, SampleStrategy::uniform_random, seed);
    const std::vector<SpherePoint> pts(c.points().begin(), c.points().end());
    const double exact = exact_covering_radius(Ambient::sphere(2), pts);
    const double on_grid = certify_cover(pts, grid);
    EXPECT_GE(exact + 1e-12, on_grid);
    EXPECT_LE(exact, on_grid + grid_mesh(Ambient::sphere(2), 20000) + 1e-12);
  }
}

TEST(ExactRadius, ThreeSphere) {
  // +/- basis vectors of R^4: the farthest points are (+-1, +-1, +-1, +-1)/2
  std::vector<SpherePoint> cross;
  for (int i = 0; i < 4; ++i) {
    std::vector<double> v(4, 0.0);
    v[i] = 1.0;
    cross.emplace_back(v);
    v[i] = -1.0;
    cross.emplace_back(v);
  }
  EXPECT_NEAR(exact_covering_radius(Ambient::sphere(3), cross), kPi / 3, 1e-12);
}

TEST(MinimaxCenter, SmallestCap) {
  const std::vector<SpherePoint> pts = {SpherePoint({1, 0, 0}), SpherePoint({0, 1, 0}), SpherePoint({0, 0, 1})};
  const auto c = minimax_center(pts);
  ASSERT_TRUE(c.has_value());
  for (int i = 0; i < 3; ++i) EXPECT_NEAR((*c)[i], 1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_FALSE(minimax_center(octahedron()).has_value());
}

TEST(SolveCov, CircleClosedForm) {
  for (int k : {1, 2, 3, 5, 8}) {
    const auto sol = solve_cov(Ambient::sphere(1), k, quick());
    EXPECT_NEAR(sol.radius_certified, kPi / k, 1e-6 + sol.grid_mesh) << k;
    EXPECT_GE(sol.radius_certified, kPi / k - 1e-12);
  }
  const auto rp = solve_cov(Ambient::projective(1), 4, quick());
  EXPECT_NEAR(rp.radius_certified, kPi / 8, 1e-6 + rp.grid_mesh);
}

TEST(SolveCov, OctahedronAndCertificate) {
  const auto sol = solve_cov(Ambient::sphere(2), 6, quick());
  EXPECT_NEAR(sol.radius_certified, known_cov(Ambient::sphere(2), 6)->value, 2e-3);
  EXPECT_EQ(sol.status, CoverStatus::matches_known_exact);
  EXPECT_EQ(sol.centers.size(), 6u);
  // the certificate is an upper bound of what the grid sees
  EXPECT_GE(sol.radius_certified + 1e-15, sol.radius_achieved);
  EXPECT_NEAR(exact_covering_radius(Ambient::sphere(2), sol.centers), sol.radius_exact, 1e-12);
}

TEST(SolveCov, ProjectiveCentersAreCanonical) {
  const auto sol = solve_cov(Ambient::projective(2), 3, quick());
  EXPECT_NEAR(sol.radius_certified, 0.5 * std::acos(-1.0 / 3.0), 2e-3);
  for (const auto& c : sol.centers) EXPECT_EQ(canonical_sign(c), c);
}

TEST(SolveCov, DeterministicGivenSeed) {
  auto cfg = quick();
  cfg.seed = 17;
  const auto a = solve_cov(Ambient::sphere(2), 5, cfg);
  const auto b = solve_cov(Ambient::sphere(2), 5, cfg);
  EXPECT_EQ(a.radius_certified, b.radius_certified);
  EXPECT_EQ(a.centers, b.centers);
}

TEST(SolveCov, RadiusIsMonotoneInK) {
  double prev = kPi;
  for (int k = 1; k <= 7; ++k) {
    const auto sol = solve_cov(Ambient::sphere(2), k, quick());
    EXPECT_LE(sol.radius_certified, prev + 2e-3) << k;
    prev = sol.radius_certified;
  }
}

TEST(SolveCov, Errors) {
  EXPECT_THROW(solve_cov(Ambient::sphere(2), 0), PreconditionError);
  EXPECT_THROW(solve_cov(Ambient::sphere(4), 3), PreconditionError);
  auto cfg = quick();
  cfg.grid_size = 100;
  cfg.mesh_tolerance = 1e-3;
  EXPECT_THROW(solve_cov(Ambient::sphere(2), 4, cfg), CoverageError);
}

TEST(NumCover, CircleAndTable) {
  auto r = num_cover(Ambient::sphere(1), kPi / 4, 64);
  ASSERT_TRUE(r.value);
  EXPECT_EQ(*r.value, 4);
  EXPECT_TRUE(r.exact);
  r = num_cover(Ambient::sphere(1), kPi / 4 - 1e-9, 64);
  EXPECT_EQ(*r.value, 5);
  r = num_cover(Ambient::projective(1), kPi / 6, 64);
  EXPECT_EQ(*r.value, 3);
  // tight bracket cov(4) <= 1.3 < cov(3)
  r = num_cover(Ambient::sphere(2), 1.3, 64, quick());
  ASSERT_TRUE(r.value);
  EXPECT_EQ(*r.value, 4);
  EXPECT_TRUE(r.exact);
  r = num_cover(Ambient::projective(2), kPi / 2, 64, quick());
  EXPECT_EQ(*r.value, 1);
  EXPECT_FALSE(num_cover(Ambient::sphere(1), 0.01, 10).value.has_value());
  EXPECT_THROW(num_cover(Ambient::sphere(1), 0.0, 10), PreconditionError);
}

TEST(CoveringJson, MirrorsSolution) {
  const auto sol = solve_cov(Ambient::sphere(2), 4, quick());
  const auto j = to_json(sol);
  EXPECT_EQ(j.at("k"), 4);
  EXPECT_EQ(j.at("centers").size(), 4u);
  EXPECT_EQ(j.at("radius_certified").get<double>(), sol.radius_certified);
  EXPECT_TRUE(j.contains("known"));
}
