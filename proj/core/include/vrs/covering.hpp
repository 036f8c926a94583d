#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrs/geometry.hpp"

namespace vrs {

/// A published covering radius cov_X(k).
struct KnownCoveringValue {
  Ambient ambient;
  int k = 0;
  double value = 0.0;
  bool tight = false;     // an equality, not only an upper bound
  std::string expr;       // closed form when one exists, else empty
  std::string source;
};

/// Database lookup: closed forms on S^1 and RP^1, the tabulated S^2 / RP^2
/// values for 2k+2 in {4,...,16} and k in {1,...,7}.
std::optional<KnownCoveringValue> known_cov(Ambient ambient, int k);

/// Every database entry for `ambient`, ordered by k (empty for n = 1, which
/// is closed-form for every k).
std::vector<KnownCoveringValue> known_table(Ambient ambient);

enum class CoverStatus { heuristic_upper_bound, matches_known_exact };
std::string to_string(CoverStatus s);

struct CoveringSolution {
  Ambient ambient;
  int k = 0;
  std::vector<SpherePoint> centers;  // canonical signs on RP^n
  std::size_t grid_size = 0;
  double radius_achieved = 0.0;   // max over the certification grid
  double grid_mesh = 0.0;
  double radius_exact = 0.0;      // Voronoi-vertex evaluation
  double radius_certified = 0.0;  // rigorous upper bound on cov_X(k)
  CoverStatus status = CoverStatus::heuristic_upper_bound;
  int best_start = 0;
};

struct CoverConfig {
  std::size_t grid_size = 0;        // 0: 10000 on n = 2, 3600 on n = 1, 20000 on n = 3
  int multistarts = 32;
  int anneal_rounds = 200;
  double kick_start = 0.3;           // radians
  double kick_end = 1e-3;
  int lloyd_iterations = 30;         // grid assignment / recentering rounds
  int recenter_steps = 20;           // subgradient steps per minimax recentering
  std::uint64_t seed = 1;
  std::optional<double> mesh_tolerance;  // error if the grid mesh exceeds this
};

std::size_t default_grid_size(Ambient ambient);

/// Structured certification grid (cached per process).
const FinitePointCloud& certification_grid(Ambient ambient, std::size_t count);

/// Multistart search for k centers minimizing the covering radius.
CoveringSolution solve_cov(Ambient ambient, int k, const CoverConfig& config = {});

/// Max over grid points of the distance to the nearest center.
double certify_cover(std::span<const SpherePoint> centers, const FinitePointCloud& grid);

/// Covering radius of the center set itself: the largest distance from any
/// point of the ambient space to the nearest center.  Evaluated by
/// enumerating every candidate farthest point (generalized Voronoi vertices
/// of subsets of at most n+1 centers) so no discretization is involved.
/// On RP^n this is the sphere covering radius of the lifted set {+x, -x}.
double exact_covering_radius(Ambient ambient, std::span<const SpherePoint> centers);

/// Candidate farthest points used by `exact_covering_radius`.
std::vector<SpherePoint> voronoi_candidates(std::span<const SpherePoint> sphere_centers);

/// Center of the smallest spherical cap containing `points`: the normalized
/// minimum-norm point of their convex hull.  Empty when no open hemisphere
/// contains them.
std::optional<SpherePoint> minimax_center(std::span<const SpherePoint> points);

struct NumCoverResult {
  std::optional<int> value;  // empty when unresolved
  bool exact = false;        // tight database bracket, or a solution at the area bound
  double certified_radius = 0.0;
};

/// Least k <= k_max whose certified covering radius is at most delta.
NumCoverResult num_cover(Ambient ambient, double delta, int k_max, const CoverConfig& config = {});

nlohmann::json to_json(const CoveringSolution& s);

}  // namespace vrs
