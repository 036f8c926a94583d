#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrs/random.hpp"

namespace vrs {

inline constexpr double kPi = std::numbers::pi;

/// A point of the round unit sphere S^n, stored as a unit vector in R^{n+1}.
/// Coordinates are normalized on construction.
class SpherePoint {
 public:
  SpherePoint() = default;
  explicit SpherePoint(std::vector<double> coords);

  /// Angle `theta` on S^1, i.e. (cos theta, sin theta).
  static SpherePoint on_circle(double theta);

  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  std::size_t ambient_size() const { return coords_.size(); }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  SpherePoint antipode() const;

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  std::vector<double> coords_;
};

/// A point of RP^n, represented by the lift whose first nonzero coordinate is
/// positive.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  explicit ProjectivePoint(const SpherePoint& lift);

  const SpherePoint& rep() const { return rep_; }
  int dim() const { return rep_.dim(); }

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

 private:
  SpherePoint rep_;
};

/// Canonical-sign representative of +/-p.
SpherePoint canonical_sign(const SpherePoint& p);

double dot(std::span<const double> a, std::span<const double> b);
inline double dot(const SpherePoint& a, const SpherePoint& b) {
  return dot(a.coords(), b.coords());
}

/// Geodesic distance on S^n, in [0, pi].
double sphere_dist(const SpherePoint& u, const SpherePoint& v);
/// Quotient metric on RP^n, in [0, pi/2].
double proj_dist(const ProjectivePoint& p, const ProjectivePoint& q);

/// arccos with its argument clamped to [-1, 1].
double clamped_acos(double c);

/// Moves `x` a distance `t` along the great circle with unit tangent `u`
/// (`u` must be orthogonal to `x`).
SpherePoint exp_map(const SpherePoint& x, std::span<const double> u, double t);

/// Uniformly random unit tangent vector at `x`.
std::vector<double> random_tangent(const SpherePoint& x, Rng& rng);

enum class AmbientKind { sphere, projective, abstract };

/// The space a point cloud lives in.
struct Ambient {
  AmbientKind kind = AmbientKind::abstract;
  int n = 0;

  static Ambient sphere(int n) { return {AmbientKind::sphere, n}; }
  static Ambient projective(int n) { return {AmbientKind::projective, n}; }
  static Ambient abstract() { return {AmbientKind::abstract, 0}; }

  bool geodesic() const { return kind != AmbientKind::abstract; }
  /// pi for S^n, pi/2 for RP^n; unbounded for abstract spaces.
  double diameter() const;
  /// Distance between two unit vectors under this ambient's metric.
  double metric(const SpherePoint& a, const SpherePoint& b) const;
  /// Similarity that is monotonically decreasing in `metric`: the inner
  /// product on S^n, its absolute value on RP^n.
  double similarity(const SpherePoint& a, const SpherePoint& b) const;

  /// Short tag: "s2", "rp1", "abstract".
  std::string tag() const;
  /// Parses "s<n>" / "rp<n>" / "sphere:<n>" / "projective:<n>".
  static Ambient parse(std::string_view tag);

  friend bool operator==(const Ambient&, const Ambient&) = default;
};

enum class SampleStrategy { uniform_random, evenly_spaced_circle, fibonacci_s2, grid, none };

std::string to_string(SampleStrategy s);
SampleStrategy parse_strategy(std::string_view s);

/// A finite metric space.  Geodesic clouds carry their points; abstract
/// clouds carry only a distance matrix.  The distance matrix is precomputed
/// up to `kDenseMatrixLimit` points and evaluated on demand beyond that.
class FinitePointCloud {
 public:
  static constexpr std::size_t kDenseMatrixLimit = 4096;

  FinitePointCloud() = default;

  /// Points are canonicalized when `ambient` is projective.
  static FinitePointCloud from_points(Ambient ambient, std::vector<SpherePoint> points,
                                      SampleStrategy strategy = SampleStrategy::none,
                                      std::uint64_t seed = 0);
  /// Abstract metric space from a row-major `size x size` matrix.
  static FinitePointCloud from_distances(std::vector<double> matrix, std::size_t size);

  const Ambient& ambient() const { return ambient_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::span<const SpherePoint> points() const { return points_; }
  const SpherePoint& point(std::size_t i) const { return points_[i]; }
  SampleStrategy strategy() const { return strategy_; }
  std::uint64_t seed() const { return seed_; }

  bool has_dense_matrix() const { return !dist_.empty() || size_ == 0; }
  double dist(std::size_t i, std::size_t j) const {
    return dist_.empty() ? ambient_.metric(points_[i], points_[j]) : dist_[i * size_ + j];
  }
  /// Row-major distance matrix; empty when the cloud exceeds the dense limit.
  std::span<const double> distance_matrix() const { return dist_; }

  /// Largest pairwise distance.
  double diameter() const;

 private:
  Ambient ambient_;
  std::size_t size_ = 0;
  std::vector<SpherePoint> points_;
  std::vector<double> dist_;
  SampleStrategy strategy_ = SampleStrategy::none;
  std::uint64_t seed_ = 0;
};

/// Deterministic finite sample of S^n or RP^n.
///
/// - uniform_random: normalized Gaussian vectors (canonicalized on RP^n).
/// - evenly_spaced_circle: n = 1 only; point i at angle 2*pi*i/N on S^1 and
///   at pi*i/N on RP^1 (so that consecutive points are pi/N apart).
/// - fibonacci_s2: n = 2 only; golden-angle spiral on S^2, and on the upper
///   hemisphere for RP^2.
/// - grid: the structured grid used for certification; evenly spaced for
///   n = 1, Fibonacci for n = 2, super-Fibonacci spirals for n = 3.
FinitePointCloud sample_space(Ambient ambient, std::size_t count, SampleStrategy strategy,
                              std::uint64_t seed = 0);

/// One-sided Hausdorff distance from `grid` to `cloud`:
/// max over grid points of the distance to the nearest cloud point.
double covering_radius_of_sample(const FinitePointCloud& cloud, const FinitePointCloud& grid);

/// Same quantity for an arbitrary point list measured against `grid`.
double covering_radius_of_points(std::span<const SpherePoint> points, const FinitePointCloud& grid);

/// Grid mesh: the covering radius of `sample_space(ambient, count, grid)`
/// measured against the grid with 4x as many points.  Cached per process.
double grid_mesh(Ambient ambient, std::size_t count);

/// Each point moves along a random tangent direction by a distance drawn
/// uniformly from [0, nu].
FinitePointCloud perturb_within(const FinitePointCloud& cloud, double nu, std::uint64_t seed);

/// Serialization as {ambient: {kind, n}, points, seed, strategy}.
nlohmann::json to_json(const FinitePointCloud& cloud);
FinitePointCloud cloud_from_json(const nlohmann::json& j);

}  // namespace vrs
