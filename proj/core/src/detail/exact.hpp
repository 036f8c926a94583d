#pragma once

#include <optional>
#include <vector>

namespace vrs::detail {

using Vec = std::vector<double>;

struct Foot {
  Vec point;
  Vec weights;  // affine coordinates, summing to one
};

/// Closest point to the origin on the affine hull of the given vectors;
/// nullopt when they are affinely dependent.
std::optional<Foot> affine_foot(const std::vector<const Vec*>& pts);

}  // namespace vrs::detail
