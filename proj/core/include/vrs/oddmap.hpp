#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrs/covering.hpp"
#include "vrs/geometry.hpp"

namespace vrs {

/// k projective centers [x_i] whose closed delta/2 balls cover RP^n, and the
/// antipodal lifts (x_i, -x_i) that define the coordinate functions.
struct OddMapSpec {
  int n = 0;
  double delta = 0.0;
  std::vector<ProjectivePoint> centers;
  std::vector<std::pair<SpherePoint, SpherePoint>> lifted;
  double coverage_radius = 0.0;  // exact covering radius of the centers on RP^n
  double coverage_grid = 0.0;    // the same measured on the certification grid
  std::string center_provenance;

  int k() const { return static_cast<int>(centers.size()); }
};

enum class CenterSource { known, solved };
CenterSource parse_center_source(std::string_view s);

/// Explicit configurations: evenly spaced lines on RP^1, coordinate axes on
/// RP^2 for k <= 3, icosahedron axes for k = 6.  Empty when none is stored.
std::vector<SpherePoint> known_centers(int n, int k);

/// Validates coverage: throws CoverageError unless the centers' covering
/// radius on RP^n is at most delta/2.
OddMapSpec make_oddmap_spec(int n, double delta, std::vector<SpherePoint> centers, std::string provenance = "explicit");

/// Known centers when available (falling back to the solver), else solved.
OddMapSpec make_oddmap_spec(int n, double delta, int k, CenterSource source = CenterSource::known,
                            const CoverConfig& config = {});

/// A point sum_j lambda_j y_j of a geometric simplex.
struct WeightedPoint {
  std::vector<SpherePoint> support;
  std::vector<double> weights;

  /// Throws unless weights are positive and sum to one within 1e-12.
  void validate() const;
  WeightedPoint negated() const;
  static WeightedPoint mass(const SpherePoint& y) { return {{y}, {1.0}}; }
};

/// Geodesic distance on S^n computed as 2 atan2(|u - v|, |u + v|), accurate
/// near 0 and pi.
double arc_distance(const SpherePoint& u, const SpherePoint& v);

/// Coordinate function f_i (i zero-based).
double eval_fi(const WeightedPoint& p, int i, const OddMapSpec& spec);

struct OddMapValue {
  std::vector<double> unit;   // F(p) / |F(p)|
  std::vector<double> raw;    // (f_1, ..., f_k)
  double norm = 0.0;
};

/// Throws "map hits origin" when the raw norm is below 1e-12.
OddMapValue eval_odd_map(const WeightedPoint& p, const OddMapSpec& spec);

struct OddMapFailure {
  std::string kind;  // "origin", "well-definedness", "not-a-simplex"
  std::vector<std::size_t> support;  // cloud indices
  std::string message;
};

struct OddMapReport {
  int trials = 0;
  double min_norm = 0.0;
  double max_odd_defect = 0.0;
  double mean_support = 0.0;
  int origin_hits = 0;
  int violations = 0;  // well-definedness
  std::vector<OddMapFailure> failures;
  std::vector<std::string> flags;
};

struct OddMapVerifyConfig {
  int max_support = 5;  // support sizes drawn from 1..max_support
  int grow_attempts = 64;
};

/// Random weighted simplices of vr(cloud, pi - delta), each evaluated at p and -p.
OddMapReport verify_oddmap(const FinitePointCloud& cloud, const OddMapSpec& spec, int trials, std::uint64_t seed,
                           const OddMapVerifyConfig& config = {});

nlohmann::json to_json(const OddMapSpec& spec);
nlohmann::json to_json(const OddMapReport& report);

}  // namespace vrs
