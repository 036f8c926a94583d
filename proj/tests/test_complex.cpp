#include <gtest/gtest.h>

#include <sstream>

#include "vrs/complex.hpp"
#include "vrs/error.hpp"

using namespace vrs;

namespace {

FinitePointCloud circle(std::size_t n) {
  return sample_space(Ambient::sphere(1), n, SampleStrategy::evenly_spaced_circle);
}

// every vertex subset of diameter < r, by bitmask
std::vector<std::vector<std::vector<Vertex>>> brute_force(const FinitePointCloud& c, double r, int cap) {
  std::vector<std::vector<std::vector<Vertex>>> out(cap + 1);
  const std::size_t n = c.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1u) s.push_back(v);
    if (static_cast<int>(s.size()) > cap + 1 || simplex_diameter(s, c) >= r) continue;
    out[s.size() - 1].push_back(s);
  }
  for (auto& d : out) std::sort(d.begin(), d.end());
  return out;
}

}  // namespace

TEST(BuildVr, StrictConvention) {
  const auto sq = circle(4);  // side pi/2, diagonal pi
  EXPECT_EQ(f_vector(build_vr(sq, kPi / 2, 3)), (std::vector<std::size_t>{4}));
  EXPECT_EQ(f_vector(build_vr(sq, kPi / 2 + 1e-9, 3)), (std::vector<std::size_t>{4, 4}));
  EXPECT_EQ(f_vector(build_vr(sq, kPi, 3)), (std::vector<std::size_t>{4, 4}));
  EXPECT_EQ(f_vector(build_vr(sq, kPi + 1e-9, 3)), (std::vector<std::size_t>{4, 6, 4, 1}));
}

TEST(BuildVr, MatchesBruteForceCliques) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto c = sample_space(Ambient::sphere(2), 9, SampleStrategy::uniform_random, seed);
    for (double r : {0.5, 1.0, 1.7, 2.4, 3.2}) {
      const auto cx = build_vr(c, r, 4);
      const auto want = brute_force(c, r, 4);
      for (int d = 0; d <= 4; ++d) {
        std::vector<std::vector<Vertex>> got;
        for (std::size_t i = 0; i < cx.count(d); ++i) {
          const auto s = cx.simplex(d, i);
          got.emplace_back(s.begin(), s.end());
        }
        EXPECT_EQ(got, want[d]) << "seed " << seed << " r " << r << " dim " << d;
      }
    }
  }
}

TEST(BuildVr, DownwardClosedAndSorted) {
  const auto c = sample_space(Ambient::projective(2), 30, SampleStrategy::uniform_random, 4);
  const auto cx = build_vr(c, 0.9, 4);
  for (int d = 1; d <= cx.dim_cap(); ++d) {
    for (std::size_t i = 0; i < cx.count(d); ++i) {
      const auto s = cx.simplex(d, i);
      EXPECT_LT(simplex_diameter(s, c), 0.9);
      std::vector<Vertex> face(s.begin(), s.end());
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<Vertex> f;
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != drop) f.push_back(s[j]);
        EXPECT_TRUE(cx.index_of(f).has_value());
      }
      if (i > 0) {
        const auto prev = cx.simplex(d, i - 1);
        EXPECT_TRUE(std::lexicographical_compare(prev.begin(), prev.end(), s.begin(), s.end()));
      }
    }
  }
}

TEST(BuildVr, CapAndCeiling) {
  const auto c = circle(12);
  EXPECT_EQ(build_vr(c, 4.0, 2).stored_dimensions(), 3);
  EXPECT_EQ(build_vr(c, 4.0, 0).total_simplices(), 12u);
  EXPECT_THROW(build_vr(c, 4.0, 6, BuildOptions{100}), ResourceLimitError);
  EXPECT_THROW(build_vr(c, -1.0, 2), PreconditionError);
  EXPECT_THROW(build_vr(c, 1.0, -1), PreconditionError);
}

TEST(BuildVr, EmptyCloudAndAbstract) {
  const auto empty = FinitePointCloud::from_distances({}, 0);
  EXPECT_EQ(build_vr(empty, 1.0, 2).total_simplices(), 0u);
  const auto path = FinitePointCloud::from_distances({0, 1, 2, 1, 0, 1, 2, 1, 0}, 3);
  EXPECT_EQ(f_vector(build_vr(path, 1.5, 2)), (std::vector<std::size_t>{3, 2}));
}

TEST(VRComplex, ValidatesInput) {
  EXPECT_NO_THROW(VRComplex(1.0, 1, 3, {{0, 1, 2}, {0, 1}}));
  EXPECT_THROW(VRComplex(1.0, 1, 3, {{0, 1, 2}, {0, 3}}), PreconditionError);  // missing face
  EXPECT_THROW(VRComplex(1.0, 1, 3, {{0, 2, 1}, {}}), PreconditionError);      // unsorted
  EXPECT_THROW(VRComplex(1.0, 1, 3, {{0, 1, 2}, {1, 0}}), PreconditionError);  // not increasing
}

TEST(VRComplex, TextRoundTrip) {
  const auto cx = build_vr(circle(10), 2.0, 3);
  std::stringstream ss;
  write_complex(ss, cx);
  const auto back = read_complex(ss);
  EXPECT_EQ(back.scale(), cx.scale());
  EXPECT_EQ(back.dim_cap(), cx.dim_cap());
  EXPECT_EQ(back.vertex_count(), cx.vertex_count());
  for (int d = 0; d <= cx.dim_cap(); ++d) {
    ASSERT_EQ(back.count(d), cx.count(d));
    EXPECT_TRUE(std::equal(back.flat(d).begin(), back.flat(d).end(), cx.flat(d).begin()));
  }
  std::stringstream bad("# vrs-complex scale=1 cap=1 vertices=2\n1 0 5\n");
  EXPECT_THROW(read_complex(bad), PreconditionError);
}
