#include <gtest/gtest.h>

#include <cmath>

#include "vrs/error.hpp"
#include "vrs/oddmap.hpp"

using namespace vrs;

namespace {

OddMapSpec s2_spec() { return make_oddmap_spec(2, 2 * 0.955317 + 0.01, 3); }

SpherePoint neg(const SpherePoint& p) { return p.antipode(); }

}  // namespace

TEST(ArcDistance, AccurateNearEnds) {
  const SpherePoint a({1.0, 0.0, 0.0});
  const SpherePoint b({std::cos(1e-9), std::sin(1e-9), 0.0});
  EXPECT_NEAR(arc_distance(a, b), 1e-9, 1e-20);
  EXPECT_NEAR(arc_distance(a, neg(b)), kPi - 1e-9, 1e-15);
  EXPECT_NEAR(arc_distance(a, SpherePoint({0.0, 1.0, 0.0})), kPi / 2, 1e-15);
}

TEST(KnownCenters, CoverAtTheirRadius) {
  for (int k = 2; k <= 6; ++k) {
    const auto c = known_centers(1, k);
    ASSERT_EQ(c.size(), static_cast<std::size_t>(k));
    const auto spec = make_oddmap_spec(1, 2 * kPi / (2 * k) + 1e-9, c);
    EXPECT_NEAR(spec.coverage_radius, kPi / (2 * k), 1e-9);
  }
  EXPECT_EQ(known_centers(2, 3).size(), 3u);
  EXPECT_EQ(known_centers(2, 6).size(), 6u);
  EXPECT_TRUE(known_centers(2, 5).empty());
  EXPECT_NEAR(make_oddmap_spec(2, 1.4, known_centers(2, 6)).coverage_radius, 0.652358, 1e-6);
}

TEST(Gate, RejectsUndersizedDelta) {
  EXPECT_THROW(make_oddmap_spec(2, 2 * 0.955317 - 0.02, 3), CoverageError);
  EXPECT_THROW(make_oddmap_spec(1, kPi / 3 - 0.01, 3), CoverageError);
  EXPECT_NO_THROW(make_oddmap_spec(1, kPi / 3 + 0.01, 3));
  EXPECT_THROW(make_oddmap_spec(2, 0.0, 3), PreconditionError);
  EXPECT_THROW(make_oddmap_spec(2, 1.0, std::vector<SpherePoint>{}), PreconditionError);
}

TEST(Oddmap, CoordinateIsComplementDistance) {
  const auto spec = s2_spec();
  const double h = spec.delta / 2;
  const auto grid = sample_space(Ambient::sphere(2), 400, SampleStrategy::fibonacci_s2);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto y = grid.point(j);
    for (int i = 0; i < spec.k(); ++i) {
      const auto& [plus, minus] = spec.lifted[static_cast<std::size_t>(i)];
      const double dp = arc_distance(y, plus), dm = arc_distance(y, minus);
      double expect = 0.0;
      if (dp <= h) expect = h - dp;
      else if (dm <= h) expect = -(h - dm);
      EXPECT_NEAR(eval_fi(WeightedPoint::mass(y), i, spec), expect, 1e-12);
    }
  }
}

TEST(Oddmap, LinearInWeights) {
  const auto spec = s2_spec();
  const SpherePoint a({1.0, 0.2, 0.1}), b({0.9, -0.3, 0.2}), c({0.8, 0.1, -0.4});
  for (double t : {0.1, 0.3, 0.5, 0.8}) {
    const WeightedPoint p{{a, b, c}, {t, (1 - t) / 2, (1 - t) / 2}};
    for (int i = 0; i < spec.k(); ++i) {
      // coordinates on a common simplex carry the same sign, so f_i splits over vertices
      const double lin = t * eval_fi(WeightedPoint::mass(a), i, spec) +
                         (1 - t) / 2 * (eval_fi(WeightedPoint::mass(b), i, spec) + eval_fi(WeightedPoint::mass(c), i, spec));
      EXPECT_NEAR(eval_fi(p, i, spec), lin, 1e-14);
    }
  }
}

TEST(Oddmap, OddAndNonvanishing) {
  const auto spec = s2_spec();
  const SpherePoint a({1.0, 0.2, 0.1}), b({0.9, -0.3, 0.2});
  const WeightedPoint p{{a, b}, {0.4, 0.6}};
  const auto v = eval_odd_map(p, spec);
  const auto w = eval_odd_map(p.negated(), spec);
  EXPECT_GT(v.norm, 0.0);
  for (std::size_t i = 0; i < v.raw.size(); ++i) EXPECT_DOUBLE_EQ(v.raw[i], -w.raw[i]);
}

TEST(Oddmap, InputValidation) {
  const auto spec = s2_spec();
  const SpherePoint a({1.0, 0.0, 0.0});
  EXPECT_THROW(eval_odd_map(WeightedPoint{{a, a.antipode()}, {0.5, 0.5}}, spec), PreconditionError);
  EXPECT_THROW(eval_odd_map(WeightedPoint{{a}, {0.7}}, spec), PreconditionError);
  EXPECT_THROW(eval_fi(WeightedPoint::mass(a), 3, spec), PreconditionError);
  EXPECT_THROW(eval_odd_map(WeightedPoint::mass(SpherePoint({1.0, 0.0})), spec), PreconditionError);
}

TEST(Oddmap, RandomSimplicesVerify) {
  for (int n : {1, 2}) {
    const double delta = n == 1 ? kPi / 3 + 0.01 : 2 * 0.955317 + 0.01;
    const auto spec = make_oddmap_spec(n, delta, 3);
    const auto cloud = sample_space(Ambient::sphere(n), n == 1 ? 120 : 300, SampleStrategy::uniform_random, 4);
    const auto rep = verify_oddmap(cloud, spec, 2000, 9);
    EXPECT_EQ(rep.trials, 2000);
    EXPECT_EQ(rep.origin_hits, 0);
    EXPECT_EQ(rep.violations, 0);
    EXPECT_LE(rep.max_odd_defect, 1e-12);
    EXPECT_GT(rep.min_norm, 0.0);
    const auto again = verify_oddmap(cloud, spec, 2000, 9);
    EXPECT_EQ(to_json(rep).dump(), to_json(again).dump());
  }
}

TEST(Oddmap, VerifyPreconditions) {
  const auto spec = s2_spec();
  EXPECT_THROW(verify_oddmap(sample_space(Ambient::projective(2), 10, SampleStrategy::uniform_random, 1), spec, 10, 1),
               PreconditionError);
  EXPECT_THROW(verify_oddmap(sample_space(Ambient::sphere(1), 10, SampleStrategy::uniform_random, 1), spec, 10, 1),
               PreconditionError);
  EXPECT_THROW(verify_oddmap(sample_space(Ambient::sphere(2), 10, SampleStrategy::uniform_random, 1), spec, 0, 1),
               PreconditionError);
  EXPECT_TRUE(to_json(spec).contains("centers"));
}
