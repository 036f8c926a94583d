#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "detail/nearest.hpp"
#include "vrs/error.hpp"
#include "vrs/geometry.hpp"

namespace vrs {

namespace detail {

NearestIndex::NearestIndex(std::span<const SpherePoint> points, Ambient ambient)
    : projective_(ambient.kind == AmbientKind::projective) {
  if (points.empty()) return;
  dim_ = points.front().ambient_size();
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return points[a][0] < points[b][0]; });
  key_.reserve(points.size());
  coords_.reserve(points.size() * dim_);
  for (std::size_t i : order) {
    key_.push_back(points[i][0]);
    for (double c : points[i].coords()) coords_.push_back(c);
  }
}

double NearestIndex::max_cosine(std::span<const double> q) const {
  const std::size_t n = key_.size();
  const auto start = static_cast<std::size_t>(std::lower_bound(key_.begin(), key_.end(), q[0]) - key_.begin());
  double best = -2.0;
  double best_chord = 3.0;
  auto visit = [&](std::size_t i) {
    const double* row = coords_.data() + i * dim_;
    double c = 0.0;
    for (std::size_t t = 0; t < dim_; ++t) c += row[t] * q[t];
    if (c > best) {
      best = c;
      best_chord = std::sqrt(std::max(0.0, 2.0 - 2.0 * c));
    }
  };
  std::size_t up = start;
  std::size_t down = start;
  bool up_live = up < n;
  bool down_live = down > 0;
  while (up_live || down_live) {
    if (up_live) {
      if (key_[up] - q[0] > best_chord) up_live = false;
      else {
        visit(up);
        up_live = ++up < n;
      }
    }
    if (down_live) {
      if (q[0] - key_[down - 1] > best_chord) down_live = false;
      else {
        visit(down - 1);
        down_live = --down > 0;
      }
    }
  }
  return best;
}

double NearestIndex::max_similarity(const SpherePoint& q) const {
  if (key_.empty()) throw PreconditionError("nearest query on an empty point set");
  double best = max_cosine(q.coords());
  if (projective_) {
    const SpherePoint neg = q.antipode();
    best = std::max(best, max_cosine(neg.coords()));
  }
  return std::min(best, 1.0);
}

}  // namespace detail

namespace {

constexpr double kGoldenAngle = kPi * (3.0 - 2.23606797749978969640917366873128);  // pi (3 - sqrt 5)
// super-Fibonacci constants: phi^2 = 2 and psi^4 = psi + 4
constexpr double kSfPhi = 1.41421356237309504880168872420970;
constexpr double kSfPsi = 1.53375116875520428811804112050578;

std::vector<SpherePoint> circle_points(std::size_t count, double period) {
  std::vector<SpherePoint> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    pts.push_back(SpherePoint::on_circle(period * static_cast<double>(i) / static_cast<double>(count)));
  return pts;
}

std::vector<SpherePoint> fibonacci_points(std::size_t count, bool hemisphere) {
  std::vector<SpherePoint> pts;
  pts.reserve(count);
  const double n = static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) + 0.5;
    const double z = hemisphere ? 1.0 - s / n : 1.0 - 2.0 * s / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = kGoldenAngle * static_cast<double>(i);
    pts.push_back(SpherePoint({rho * std::cos(phi), rho * std::sin(phi), z}));
  }
  return pts;
}

std::vector<SpherePoint> super_fibonacci_points(std::size_t count) {
  std::vector<SpherePoint> pts;
  pts.reserve(count);
  const double n = static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) + 0.5;
    const double t = s / n;
    const double d = 2.0 * kPi * s;
    const double r = std::sqrt(t);
    const double big_r = std::sqrt(1.0 - t);
    const double alpha = d / kSfPhi;
    const double beta = d / kSfPsi;
    pts.push_back(SpherePoint({r * std::sin(alpha), r * std::cos(alpha), big_r * std::sin(beta),
                               big_r * std::cos(beta)}));
  }
  return pts;
}

std::vector<SpherePoint> random_points(int n, std::size_t count, std::uint64_t seed) {
  Rng rng = make_rng(seed, "sample");
  std::vector<SpherePoint> pts;
  pts.reserve(count);
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  while (pts.size() < count) {
    double norm2 = 0.0;
    for (double& c : v) {
      c = standard_normal(rng);
      norm2 += c * c;
    }
    if (norm2 > 1e-12) pts.emplace_back(v);
  }
  return pts;
}

}  // namespace

FinitePointCloud sample_space(Ambient ambient, std::size_t count, SampleStrategy strategy,
                              std::uint64_t seed) {
  if (!ambient.geodesic()) throw PreconditionError("sample_space: abstract ambients cannot be sampled");
  if (ambient.n < 1) throw PreconditionError("sample_space: n must be at least 1");
  if (count < 1) throw PreconditionError("sample_space: N must be at least 1");
  const bool proj = ambient.kind == AmbientKind::projective;
  const double period = proj ? kPi : 2.0 * kPi;
  std::vector<SpherePoint> pts;
  switch (strategy) {
    case SampleStrategy::uniform_random:
      pts = random_points(ambient.n, count, seed);
      break;
    case SampleStrategy::evenly_spaced_circle:
      if (ambient.n != 1) throw PreconditionError("evenly-spaced-circle requires n = 1");
      pts = circle_points(count, period);
      break;
    case SampleStrategy::fibonacci_s2:
      if (ambient.n != 2) throw PreconditionError("fibonacci-s2 requires n = 2");
      pts = fibonacci_points(count, proj);
      break;
    case SampleStrategy::grid:
      if (ambient.n == 1) pts = circle_points(count, period);
      else if (ambient.n == 2) pts = fibonacci_points(count, proj);
      else if (ambient.n == 3) pts = super_fibonacci_points(count);
      else throw PreconditionError("grid sampling supports n <= 3");
      break;
    case SampleStrategy::none:
      throw PreconditionError("sample_space: a strategy is required");
  }
  return FinitePointCloud::from_points(ambient, std::move(pts), strategy, seed);
}

double covering_radius_of_points(std::span<const SpherePoint> points, const FinitePointCloud& grid) {
  if (points.empty()) throw PreconditionError("covering radius of an empty point set");
  if (grid.empty()) throw PreconditionError("covering radius against an empty grid");
  if (!grid.ambient().geodesic()) throw PreconditionError("covering radius needs a geodesic ambient");
  const detail::NearestIndex index(points, grid.ambient());
  double worst = 1.0;
  for (const auto& g : grid.points()) worst = std::min(worst, index.max_similarity(g));
  return clamped_acos(worst);
}

double covering_radius_of_sample(const FinitePointCloud& cloud, const FinitePointCloud& grid) {
  if (cloud.empty()) throw PreconditionError("covering_radius_of_sample: empty cloud");
  if (!(cloud.ambient() == grid.ambient())) throw PreconditionError("cloud and grid must share the ambient");
  return covering_radius_of_points(cloud.points(), grid);
}

double grid_mesh(Ambient ambient, std::size_t count) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, std::size_t>, double> cache;
  const auto key = std::make_tuple(static_cast<int>(ambient.kind), ambient.n, count);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const auto coarse = sample_space(ambient, count, SampleStrategy::grid);
  const auto fine = sample_space(ambient, 4 * count, SampleStrategy::grid);
  const double mesh = covering_radius_of_sample(coarse, fine);
  std::lock_guard lock(mutex);
  cache.emplace(key, mesh);
  return mesh;
}

}  // namespace vrs
