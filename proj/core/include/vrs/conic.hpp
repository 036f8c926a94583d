#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrs/complex.hpp"
#include "vrs/geometry.hpp"

namespace vrs {

enum class ConicMode { exhaustive, sampled };
std::string to_string(ConicMode m);
ConicMode parse_conic_mode(std::string_view s);

struct ConicConfig {
  ConicMode mode = ConicMode::exhaustive;
  std::uint64_t tuple_budget = 2'000'000;
  std::uint64_t seed = 1;
  bool attach_density = true;  // measure the sample covering radius
};

/// Outcome of the ball-intersection test: do every 2k+2 open r-balls of the
/// cloud share a cloud point?
struct ConicCertificate {
  double r = 0.0;
  int k = 0;
  ConicMode mode = ConicMode::exhaustive;
  std::uint64_t tuples_checked = 0;
  std::uint64_t failures = 0;  // failing tuples seen (exhaustive stops at the first)
  bool witness_found_for_all = false;
  std::optional<std::vector<Vertex>> failing_tuple;  // lexicographically first
  std::optional<double> sample_covering_radius;

  /// True only for a passing exhaustive check.
  bool certified() const { return mode == ConicMode::exhaustive && witness_found_for_all; }
};

/// Number of k-subsets of n items, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

ConicCertificate conic_check(const FinitePointCloud& cloud, double r, int k, const ConicConfig& config = {});

/// Smallest scale from which the exhaustive check passes: the maximum over
/// (2k+2)-subsets T of min over cloud points v of max_{x in T} d(v, x).
/// conic_check(cloud, r, k) passes exactly when r > conic_radius(cloud, k).
double conic_radius(const FinitePointCloud& cloud, int k, std::uint64_t tuple_budget = 2'000'000);

enum class CovSource { known, solved };
CovSource parse_cov_source(std::string_view s);

struct Threshold {
  double value = 0.0;  // r* = pi - cov_{S^n}(2k+2)
  double cov = 0.0;
  bool tight = false;  // cov is an exact value, so r* is certified
  std::string provenance;  // "closed-form", "table" or "solver-upper-bound"
};

/// For r > r*, vr(S^n, r) is k-connected.  With a non-tight cov value the
/// threshold is only as good as that value.
Threshold claim1_threshold(int n, int k, CovSource source = CovSource::known);

/// Normalized measure of an open ball of radius r (n in {1, 2}).
double ball_measure_fraction(Ambient ambient, double r);

/// True iff every open r-ball has normalized measure above (2k+1)/(2k+2).
bool volume_conn_bound(Ambient ambient, double r, int k);

/// (r - rho) / 2.
double rigidity_margin(double rho, double r);

struct RigidityRun {
  std::uint64_t seed = 0;
  bool persisted = false;
  std::optional<std::vector<Vertex>> failing_tuple;
};

struct RigidityReport {
  double r = 0.0;
  int k = 0;
  double nu = 0.0;
  double rho = 0.0;
  double margin = 0.0;
  bool within_hypothesis = false;  // nu < margin
  ConicCertificate baseline;
  std::vector<RigidityRun> runs;
  bool persisted_all = false;
  std::vector<std::string> flags;
};

/// Perturbs every point by at most nu (one run per seed) and reruns the
/// exhaustive check at scale r.
RigidityReport rigidity_experiment(const FinitePointCloud& cloud, double r, int k, double nu, int seeds,
                                   std::uint64_t seed, const ConicConfig& config = {});

nlohmann::json to_json(const ConicCertificate& c);
nlohmann::json to_json(const Threshold& t);
nlohmann::json to_json(const RigidityReport& r);

}  // namespace vrs
