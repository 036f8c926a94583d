#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vrs/geometry.hpp"

namespace vrs::detail {

/// Nearest-point queries on a fixed set of unit vectors.  Points are sorted
/// by their first coordinate; a query scans outward from its own first
/// coordinate and stops once the coordinate gap exceeds the best chord length
/// found, which is exact because chord length bounds every coordinate gap.
class NearestIndex {
 public:
  NearestIndex(std::span<const SpherePoint> points, Ambient ambient);

  /// Largest similarity (cosine, or |cosine| on RP^n) to any indexed point.
  double max_similarity(const SpherePoint& q) const;
  double nearest_distance(const SpherePoint& q) const { return clamped_acos(max_similarity(q)); }

 private:
  double max_cosine(std::span<const double> q) const;

  std::size_t dim_ = 0;
  bool projective_ = false;
  std::vector<double> key_;     // sorted first coordinates
  std::vector<double> coords_;  // row-major, rows in key order
};

}  // namespace vrs::detail
