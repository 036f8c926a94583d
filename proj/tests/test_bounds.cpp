#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "vrs/bounds.hpp"
#include "vrs/error.hpp"

using namespace vrs;

TEST(PiRational, ArithmeticAndText) {
  const PiRational a(2, 8);
  EXPECT_EQ(a.num(), 1);
  EXPECT_EQ(a.den(), 4);
  EXPECT_EQ(a.to_string(), "pi/4");
  EXPECT_EQ(PiRational(3, -4).to_string(), "-3pi/4");
  EXPECT_EQ(PiRational(0, 5).to_string(), "0");
  EXPECT_EQ(PiRational(1, 1) - a, PiRational(3, 4));
  EXPECT_EQ(a + a, PiRational(1, 2));
  EXPECT_EQ(a * 2, PiRational(1, 2));
  EXPECT_LT(PiRational(1, 5), PiRational(1, 4));
  for (const char* s : {"pi", "pi/3", "2pi/3", "-pi/7", "0"}) EXPECT_EQ(PiRational::parse(s)->to_string(), s);
  EXPECT_FALSE(PiRational::parse("0.5").has_value());
  EXPECT_FALSE(PiRational::parse("pi/0").has_value());
  EXPECT_FALSE(PiRational::parse("xpi").has_value());
  EXPECT_THROW(PiRational(1, 0), PreconditionError);
}

TEST(Intervals, CircleEndpointsExact) {
  for (int k = 1; k <= 20; ++k) {
    const auto row = theorem_interval(1, k);
    ASSERT_TRUE(row.lo_exact && row.hi_exact);
    EXPECT_EQ(*row.lo_exact, PiRational(1, 2 * k + 2));
    EXPECT_EQ(*row.hi_exact, PiRational(1, k));
    EXPECT_TRUE(row.flags.empty());
    EXPECT_EQ(row.lo_provenance, "closed-form");
    EXPECT_NEAR(row.r_hi(), kPi - kPi / (2 * k + 2), 1e-15);
  }
}

TEST(Intervals, SphereFlags) {
  const auto rows = interval_table(2, 3);
  EXPECT_NEAR(rows[0].delta_lo, std::acos(1.0 / 3.0), 1e-6);
  EXPECT_NEAR(rows[0].delta_hi, kPi, 1e-12);
  EXPECT_NEAR(rows[2].delta_hi, 2 * 0.955317, 1e-6);
  // cov_S2(8) is not known exactly
  EXPECT_NE(std::find(rows[2].flags.begin(), rows[2].flags.end(), "lo-bound-only"), rows[2].flags.end());
  EXPECT_EQ(rows[2].lo_provenance, "table");
  EXPECT_THROW(theorem_interval(2, 8), PreconditionError);
  EXPECT_THROW(theorem_interval(0, 1), PreconditionError);
}

TEST(Intervals, EndpointsMonotone) {
  for (int n : {1, 2}) {
    const auto rows = interval_table(n, n == 1 ? 30 : 7);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      EXPECT_LE(rows[i].delta_lo, rows[i - 1].delta_lo + 1e-12) << n << " " << i;
      EXPECT_LE(rows[i].delta_hi, rows[i - 1].delta_hi + 1e-12) << n << " " << i;
      EXPECT_FALSE(rows[i].empty());
    }
  }
}

TEST(Intervals, CsvAndJsonRoundTrip) {
  for (int n : {1, 2}) {
    const auto rows = interval_table(n, 7);
    const auto csv = intervals_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "n,k,delta_lo,lo_exact_expr,lo_provenance,delta_hi,hi_exact_expr,hi_provenance,r_lo,r_hi,flags");
    const auto back = intervals_from_csv(csv);
    const auto viaj = intervals_from_json(intervals_json(rows));
    ASSERT_EQ(back.size(), rows.size());
    ASSERT_EQ(viaj.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto* r : {&back[i], &viaj[i]}) {
        EXPECT_EQ(r->k, rows[i].k);
        EXPECT_NEAR(r->delta_lo, rows[i].delta_lo, 1e-15);
        EXPECT_NEAR(r->delta_hi, rows[i].delta_hi, 1e-15);
        EXPECT_EQ(r->lo_exact, rows[i].lo_exact);
        EXPECT_EQ(r->hi_exact, rows[i].hi_exact);
        EXPECT_EQ(r->flags, rows[i].flags);
        EXPECT_EQ(r->lo_provenance, rows[i].lo_provenance);
      }
    }
  }
  EXPECT_THROW(intervals_from_csv("garbage\n1,2"), Error);
}

TEST(Intervals, SvgCanvasAndMarkers) {
  const auto rows = interval_table(2, 7);
  const auto svg = intervals_svg(2, rows);
  EXPECT_NE(svg.find("width=\"960\""), std::string::npos);
  EXPECT_NE(svg.find("height=\"280\""), std::string::npos);
  auto count = [&](const std::string& pat) {
    const std::regex re(pat);
    return std::distance(std::sregex_iterator(svg.begin(), svg.end(), re), std::sregex_iterator());
  };
  // one open marker and one closed marker per row
  EXPECT_EQ(count("<circle[^>]*fill=\"white\""), 7);
  EXPECT_EQ(count("<circle[^>]*fill=\"#[0-9a-f]{6}\""), 7);
  EXPECT_GT(count("#d62728"), 0);
  EXPECT_EQ(intervals_svg(1, interval_table(1, 7)).find("#d62728"), std::string::npos);
}

TEST(S1Exact, HomotopyTypes) {
  EXPECT_EQ(s1_exact(0.5).sphere_dim, 1);
  EXPECT_EQ(s1_exact(2 * kPi / 3).sphere_dim, 1);
  EXPECT_EQ(s1_exact(std::nextafter(2 * kPi / 3, 4.0)).sphere_dim, 3);
  EXPECT_EQ(s1_exact(0.8 * kPi).k, 1);
  EXPECT_EQ(s1_exact(0.81 * kPi).k, 2);
  EXPECT_TRUE(s1_exact(kPi).contractible);
  EXPECT_EQ(s1_exact(0.5).to_string(), "S^1");
  EXPECT_THROW(s1_exact(0.0), PreconditionError);
}

TEST(S1Exact, IntervalTableContainment) {
  for (const auto& row : s1_interval_table(15)) {
    EXPECT_EQ(row.exact_empty, row.k % 2 == 0);
    EXPECT_TRUE(row.contained) << row.k;
    EXPECT_EQ(row.theorem_lo, PiRational(1, 2 * row.k + 2));
    if (!row.exact_empty) {
      EXPECT_EQ(row.exact_lo, PiRational(1, row.k + 2));
      EXPECT_EQ(row.exact_hi, PiRational(1, row.k));
      EXPECT_TRUE(row.right_endpoint_tight);
    }
  }
}

TEST(Corollary, WorkedCircleCases) {
  const auto a = corollary1_bounds(1, kPi / 3 + 0.01);
  EXPECT_EQ(a.sphere_cover.value, 3);
  EXPECT_EQ(a.projective_cover.value, 3);
  EXPECT_EQ(a.lower, 0);
  EXPECT_EQ(a.upper, 1);
  EXPECT_TRUE(a.lower_certified && a.upper_certified);
  const auto b = corollary1_bounds(1, kPi / 5 + 0.001);
  EXPECT_EQ(b.lower, 1);
  EXPECT_EQ(b.upper, 3);
  EXPECT_EQ(s1_exact(kPi - b.delta).conn, 2);
  EXPECT_THROW(corollary1_bounds(1, 0.0), PreconditionError);
}

TEST(Corollary, ConsistentWithCircleTruth) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.05, kPi - 0.05);
  for (int t = 0; t < 200; ++t) {
    const double delta = u(rng);
    const auto b = corollary1_bounds(1, delta);
    const auto truth = s1_exact(kPi - delta);
    ASSERT_TRUE(b.lower && b.upper);
    EXPECT_LE(*b.lower, *b.upper);
    if (truth.contractible) continue;
    EXPECT_LE(*b.lower, truth.conn) << delta;
    EXPECT_GE(*b.upper, truth.conn) << delta;
  }
}

TEST(Probe, CircleWindow) {
  const auto rep = infinite_change_probe(1, kPi / 4, 12);
  EXPECT_NE(rep.label.find("finite evidence"), std::string::npos);
  ASSERT_FALSE(rep.intersecting.empty());
  // delta_lo(k) = pi/(2k+2) < pi/4 for every k >= 2
  EXPECT_EQ(rep.intersecting.front().k, 2);
  ASSERT_FALSE(rep.targets.empty());
  for (const auto& t : rep.targets) EXPECT_NEAR(t.delta_threshold, kPi / (2 * t.K + 4), 1e-12);
  EXPECT_EQ(rep.targets.front().K, 1);
}

TEST(Probe, SphereWindow) {
  const auto rep = infinite_change_probe(2, 0.7, 7);
  ASSERT_FALSE(rep.intersecting.empty());
  for (const auto& row : rep.intersecting) EXPECT_LT(row.delta_lo, 0.7);
  EXPECT_EQ(rep.intersecting.front().k, 5);
  EXPECT_THROW(infinite_change_probe(2, 0.0, 7), PreconditionError);
}

TEST(Report, RenderFormats) {
  EXPECT_EQ(parse_report_format("svg"), ReportFormat::svg);
  EXPECT_EQ(extension(ReportFormat::json), "json");
  EXPECT_THROW(parse_report_format("pdf"), PreconditionError);
  const auto j = nlohmann::json::parse(render_report(1, 1, ReportFormat::json)).at("rows");
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0].at("lo_exact_expr"), "pi/4");
  EXPECT_EQ(j[0].at("hi_exact_expr"), "pi");
}
