#include <gtest/gtest.h>

#include <cmath>

#include "vrs/error.hpp"
#include "vrs/geometry.hpp"

using namespace vrs;

TEST(SpherePoint, NormalizesOnConstruction) {
  const SpherePoint p({3.0, 4.0});
  EXPECT_NEAR(p[0], 0.6, 1e-15);
  EXPECT_NEAR(p[1], 0.8, 1e-15);
  EXPECT_NEAR(dot(p, p), 1.0, 1e-12);
}

TEST(SpherePoint, RejectsZeroAndTooShortVectors) {
  EXPECT_THROW(SpherePoint({0.0, 0.0}), PreconditionError);
  EXPECT_THROW(SpherePoint({1.0}), PreconditionError);
}

TEST(SphereDist, Basics) {
  const SpherePoint u({1.0, 0.0});
  const SpherePoint v({0.0, 1.0});
  EXPECT_DOUBLE_EQ(sphere_dist(u, u), 0.0);
  EXPECT_NEAR(sphere_dist(u, u.antipode()), kPi, 1e-15);
  EXPECT_NEAR(sphere_dist(u, v), kPi / 2, 1e-15);
  EXPECT_THROW(sphere_dist(u, SpherePoint({1.0, 0.0, 0.0})), PreconditionError);
}

TEST(ProjDist, IdentifiesAntipodes) {
  const ProjectivePoint p(SpherePoint({1.0, 0.0}));
  const ProjectivePoint q(SpherePoint({0.0, 1.0}));
  const ProjectivePoint minus_p(SpherePoint({-1.0, 0.0}));
  EXPECT_DOUBLE_EQ(proj_dist(p, p), 0.0);
  EXPECT_NEAR(proj_dist(p, q), kPi / 2, 1e-15);
  EXPECT_DOUBLE_EQ(proj_dist(p, minus_p), 0.0);
  EXPECT_EQ(p, minus_p);
}

TEST(ProjectivePoint, CanonicalizationIsIdempotent) {
  const SpherePoint x({-0.3, 0.5, 0.81});
  const SpherePoint a = canonical_sign(x);
  EXPECT_EQ(canonical_sign(a), a);
  EXPECT_EQ(canonical_sign(x.antipode()), a);
  EXPECT_GT(a[0], 0.0);
  // first nonzero coordinate decides the sign
  const SpherePoint z = canonical_sign(SpherePoint({0.0, -1.0, 1.0}));
  EXPECT_GT(z[1], 0.0);
}

TEST(Ambient, ParsesTags) {
  EXPECT_EQ(Ambient::parse("s2"), Ambient::sphere(2));
  EXPECT_EQ(Ambient::parse("rp3"), Ambient::projective(3));
  EXPECT_EQ(Ambient::parse("sphere:1"), Ambient::sphere(1));
  EXPECT_EQ(Ambient::parse("projective:2"), Ambient::projective(2));
  EXPECT_EQ(Ambient::sphere(2).tag(), "s2");
  EXPECT_THROW(Ambient::parse("torus"), PreconditionError);
}

class CloudInvariants : public ::testing::TestWithParam<const char*> {};

TEST_P(CloudInvariants, MetricAxiomsOnRandomTriples) {
  const Ambient amb = Ambient::parse(GetParam());
  const auto cloud = sample_space(amb, 80, SampleStrategy::uniform_random, 11);
  Rng rng = make_rng(5, "triples");
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    EXPECT_EQ(cloud.dist(i, i), 0.0);
    for (std::size_t j = 0; j < cloud.size(); ++j) {
      EXPECT_EQ(cloud.dist(i, j), cloud.dist(j, i));
      EXPECT_GE(cloud.dist(i, j), 0.0);
      EXPECT_LE(cloud.dist(i, j), amb.diameter() + 1e-12);
    }
  }
  for (int t = 0; t < 2000; ++t) {
    const auto a = uniform_index(rng, cloud.size());
    const auto b = uniform_index(rng, cloud.size());
    const auto c = uniform_index(rng, cloud.size());
    EXPECT_LE(cloud.dist(a, c), cloud.dist(a, b) + cloud.dist(b, c) + 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Ambients, CloudInvariants, ::testing::Values("s1", "s2", "s3", "rp1", "rp2", "rp3"));

TEST(Sampling, DeterministicGivenSeed) {
  const auto a = sample_space(Ambient::sphere(2), 50, SampleStrategy::uniform_random, 42);
  const auto b = sample_space(Ambient::sphere(2), 50, SampleStrategy::uniform_random, 42);
  const auto c = sample_space(Ambient::sphere(2), 50, SampleStrategy::uniform_random, 43);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.point(i), b.point(i));
  EXPECT_NE(a.point(0), c.point(0));
}

TEST(Sampling, EvenlySpacedCircle) {
  const auto s = sample_space(Ambient::sphere(1), 12, SampleStrategy::evenly_spaced_circle);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_NEAR(s.dist(i, (i + 1) % 12), kPi / 6, 1e-12);
  const auto p = sample_space(Ambient::projective(1), 6, SampleStrategy::evenly_spaced_circle);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(p.dist(i, (i + 1) % 6), kPi / 6, 1e-12);
  EXPECT_THROW(sample_space(Ambient::sphere(2), 5, SampleStrategy::evenly_spaced_circle), PreconditionError);
}

TEST(Sampling, FibonacciAndErrors) {
  const auto f = sample_space(Ambient::sphere(2), 400, SampleStrategy::fibonacci_s2);
  EXPECT_EQ(f.size(), 400u);
  EXPECT_NEAR(f.diameter(), kPi, 0.05);
  EXPECT_THROW(sample_space(Ambient::sphere(2), 0, SampleStrategy::uniform_random), PreconditionError);
  EXPECT_THROW(sample_space(Ambient::abstract(), 3, SampleStrategy::uniform_random), PreconditionError);
}

TEST(Sampling, GridMeshShrinksWithSize) {
  const double coarse = grid_mesh(Ambient::sphere(2), 500);
  const double fine = grid_mesh(Ambient::sphere(2), 4000);
  EXPECT_GT(coarse, fine);
  EXPECT_LT(fine, 0.05);
}

TEST(Perturb, StaysWithinNu) {
  const auto cloud = sample_space(Ambient::sphere(2), 60, SampleStrategy::uniform_random, 3);
  const auto moved = perturb_within(cloud, 0.05, 9);
  for (std::size_t i = 0; i < cloud.size(); ++i)
    EXPECT_LE(sphere_dist(cloud.point(i), moved.point(i)), 0.05 + 1e-12);
  const auto again = perturb_within(cloud, 0.05, 9);
  EXPECT_EQ(moved.point(7), again.point(7));
}

TEST(Cloud, JsonRoundTrip) {
  const auto cloud = sample_space(Ambient::projective(2), 30, SampleStrategy::uniform_random, 8);
  const auto back = cloud_from_json(nlohmann::json::parse(to_json(cloud).dump()));
  ASSERT_EQ(back.size(), cloud.size());
  EXPECT_EQ(back.ambient(), cloud.ambient());
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = 0; j < cloud.size(); ++j) EXPECT_NEAR(back.dist(i, j), cloud.dist(i, j), 1e-13);
}

TEST(Cloud, AbstractDistances) {
  // path metric on three points
  const auto cloud = FinitePointCloud::from_distances({0, 1, 2, 1, 0, 1, 2, 1, 0}, 3);
  EXPECT_EQ(cloud.dist(0, 2), 2.0);
  EXPECT_FALSE(cloud.ambient().geodesic());
  const auto back = cloud_from_json(nlohmann::json::parse(to_json(cloud).dump()));
  EXPECT_EQ(back.dist(2, 0), 2.0);
  EXPECT_THROW(FinitePointCloud::from_distances({0, 1, 2, 0}, 2), PreconditionError);
}

TEST(Random, StreamsAreIndependentAndStable) {
  EXPECT_EQ(derive_seed(1, "a"), derive_seed(1, "a"));
  EXPECT_NE(derive_seed(1, "a"), derive_seed(1, "b"));
  EXPECT_NE(derive_seed(1, "a", 0), derive_seed(1, "a", 1));
  EXPECT_NE(derive_seed(1, "a"), derive_seed(2, "a"));
  Rng rng = make_rng(3, "u");
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
