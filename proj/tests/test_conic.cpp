#include <gtest/gtest.h>

#include <algorithm>

#include "vrs/bounds.hpp"
#include "vrs/conic.hpp"
#include "vrs/error.hpp"
#include "vrs/homology.hpp"

using namespace vrs;

namespace {

FinitePointCloud circle(std::size_t n) {
  return sample_space(Ambient::sphere(1), n, SampleStrategy::evenly_spaced_circle);
}

// brute force over all (2k+2)-subsets
double brute_conic_radius(const FinitePointCloud& c, int k) {
  const std::size_t m = static_cast<std::size_t>(2 * k + 2);
  std::vector<bool> pick(c.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(m), true);
  double worst = 0.0;
  do {
    double best = 1e9;
    for (std::size_t v = 0; v < c.size(); ++v) {
      double far = 0.0;
      for (std::size_t x = 0; x < c.size(); ++x)
        if (pick[x]) far = std::max(far, c.dist(v, x));
      best = std::min(best, far);
    }
    worst = std::max(worst, best);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return worst;
}

}  // namespace

TEST(Binomial, ValuesAndSaturation) {
  EXPECT_EQ(binomial(10, 3), 120u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(60, 30), 118264581564861424ULL);
  EXPECT_EQ(binomial(200, 100), UINT64_MAX);
}

TEST(Conic, RadiusMatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto c = sample_space(seed % 2 ? Ambient::sphere(1) : Ambient::sphere(2), 9, SampleStrategy::uniform_random, seed);
    for (int k = 1; k <= 2; ++k) EXPECT_NEAR(conic_radius(c, k), brute_conic_radius(c, k), 1e-15) << seed << " " << k;
  }
}

TEST(Conic, PassesExactlyAboveRadius) {
  const auto c = sample_space(Ambient::sphere(2), 14, SampleStrategy::uniform_random, 3);
  for (int k = 1; k <= 3; ++k) {
    const double rho = conic_radius(c, k);
    EXPECT_FALSE(conic_check(c, rho, k).witness_found_for_all);
    EXPECT_TRUE(conic_check(c, std::nextafter(rho, 10.0), k).certified());
  }
}

TEST(Conic, MonotoneInScale) {
  const auto c = sample_space(Ambient::sphere(1), 16, SampleStrategy::uniform_random, 5);
  bool passed = false;
  for (int s = 1; s <= 40; ++s) {
    const bool ok = conic_check(c, kPi * s / 40.0, 2).witness_found_for_all;
    EXPECT_TRUE(!passed || ok) << s;
    passed = passed || ok;
  }
  EXPECT_TRUE(passed);
}

TEST(Conic, FailingTupleIsLexFirst) {
  const auto c = circle(8);
  const double r = 1.0;
  const auto cert = conic_check(c, r, 1);
  ASSERT_TRUE(cert.failing_tuple.has_value());
  // scan tuples in lexicographic order
  std::vector<Vertex> first;
  for (Vertex a = 0; a < 8 && first.empty(); ++a)
    for (Vertex b = a + 1; b < 8 && first.empty(); ++b)
      for (Vertex d = b + 1; d < 8 && first.empty(); ++d)
        for (Vertex e = d + 1; e < 8 && first.empty(); ++e) {
          bool shared = false;
          for (std::size_t v = 0; v < 8; ++v)
            shared = shared || (c.dist(v, a) < r && c.dist(v, b) < r && c.dist(v, d) < r && c.dist(v, e) < r);
          if (!shared) first = {a, b, d, e};
        }
  EXPECT_EQ(*cert.failing_tuple, first);
  EXPECT_EQ(cert.failures, 1u);
}

TEST(Conic, SoundAgainstHomology) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto c = sample_space(Ambient::sphere(1), 14, SampleStrategy::uniform_random, seed);
    for (double r : {0.6 * kPi, 0.75 * kPi, 0.9 * kPi}) {
      const auto prof = betti(build_vr(c, r, 3));
      for (int k = 0; k <= 2; ++k)
        if (conic_check(c, r, k).certified() && !prof.connectivity.censored) EXPECT_LE(k, prof.connectivity.value);
    }
  }
}

TEST(Conic, BudgetAndErrors) {
  const auto c = sample_space(Ambient::sphere(2), 40, SampleStrategy::uniform_random, 1);
  ConicConfig cfg;
  cfg.tuple_budget = 1000;
  EXPECT_THROW(conic_check(c, 1.0, 3, cfg), ResourceLimitError);
  cfg.mode = ConicMode::sampled;
  const auto sampled = conic_check(c, 2.9, 3, cfg);
  EXPECT_FALSE(sampled.certified());
  EXPECT_LE(sampled.tuples_checked, 1000u);
  EXPECT_THROW(conic_check(circle(3), 1.0, 1), PreconditionError);
  EXPECT_THROW(conic_check(c, 1.0, -1), PreconditionError);
  EXPECT_EQ(parse_conic_mode("sampled"), ConicMode::sampled);
  EXPECT_THROW(parse_conic_mode("bogus"), PreconditionError);
}

TEST(Threshold, ClosedFormsOnCircle) {
  for (int k = 0; k <= 5; ++k) {
    const auto t = claim1_threshold(1, k);
    EXPECT_NEAR(t.value, kPi - kPi / (2 * k + 2), 1e-12);
    EXPECT_TRUE(t.tight);
    EXPECT_EQ(t.provenance, "closed-form");
    // above the threshold the circle complex is at least k-connected
    for (double eps : {1e-6, 0.01, 0.05}) {
      const double r = t.value + eps;
      if (r >= kPi) continue;
      const auto h = s1_exact(r);
      EXPECT_TRUE(h.contractible || h.conn >= k) << k << " " << r;
    }
  }
}

TEST(Threshold, SphereTable) {
  EXPECT_NEAR(claim1_threshold(2, 1).value, kPi - std::acos(1.0 / 3.0), 1e-6);
  EXPECT_TRUE(claim1_threshold(2, 1).tight);
  EXPECT_NEAR(claim1_threshold(2, 2).cov, 0.955317, 1e-6);
  EXPECT_FALSE(claim1_threshold(2, 3).tight);
  EXPECT_EQ(claim1_threshold(2, 3).provenance, "table");
}

TEST(Volume, MeasureAndBound) {
  EXPECT_NEAR(ball_measure_fraction(Ambient::sphere(1), kPi / 2), 0.5, 1e-15);
  EXPECT_NEAR(ball_measure_fraction(Ambient::sphere(2), kPi / 2), 0.5, 1e-15);
  EXPECT_NEAR(ball_measure_fraction(Ambient::sphere(2), kPi), 1.0, 1e-15);
  // on S^1 the bound needs r/pi > (2k+1)/(2k+2)
  EXPECT_TRUE(volume_conn_bound(Ambient::sphere(1), 0.76 * kPi, 1));
  EXPECT_FALSE(volume_conn_bound(Ambient::sphere(1), 0.75 * kPi, 1));
  EXPECT_THROW(ball_measure_fraction(Ambient::sphere(3), 1.0), PreconditionError);
}

TEST(Rigidity, PersistsInsideMargin) {
  const auto c = circle(30);
  const double r = 0.8 * kPi;
  const int k = 1;
  const double rho = conic_radius(c, k);
  const double margin = rigidity_margin(rho, r);
  EXPECT_NEAR(margin, (r - rho) / 2, 1e-15);
  const auto rep = rigidity_experiment(c, r, k, 0.9 * margin, 6, 11);
  EXPECT_TRUE(rep.within_hypothesis);
  EXPECT_TRUE(rep.baseline.certified());
  EXPECT_EQ(rep.runs.size(), 6u);
  EXPECT_TRUE(rep.persisted_all);
  const auto outside = rigidity_experiment(c, r, k, 2 * margin, 2, 11);
  EXPECT_FALSE(outside.within_hypothesis);
  EXPECT_FALSE(outside.flags.empty());
  EXPECT_TRUE(to_json(rep).contains("persisted_all"));
}
