#include "vrs/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "vrs/error.hpp"

namespace vrs {

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw PreconditionError("SpherePoint needs n >= 1 (at least 2 coordinates)");
  double norm2 = 0.0;
  for (double c : coords_) norm2 += c * c;
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw PreconditionError("SpherePoint: zero or non-finite vector");
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& c : coords_) c *= inv;
}

SpherePoint SpherePoint::on_circle(double theta) {
  return SpherePoint({std::cos(theta), std::sin(theta)});
}

SpherePoint SpherePoint::antipode() const {
  SpherePoint out = *this;
  for (double& c : out.coords_) c = -c;
  return out;
}

SpherePoint canonical_sign(const SpherePoint& p) {
  for (double c : p.coords()) {
    if (c > 0.0) return p;
    if (c < 0.0) return p.antipode();
  }
  return p;
}

ProjectivePoint::ProjectivePoint(const SpherePoint& lift) : rep_(canonical_sign(lift)) {}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw PreconditionError("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

double sphere_dist(const SpherePoint& u, const SpherePoint& v) {
  if (u.dim() != v.dim()) throw PreconditionError("sphere_dist: dimension mismatch");
  return clamped_acos(dot(u, v));
}

double proj_dist(const ProjectivePoint& p, const ProjectivePoint& q) {
  if (p.dim() != q.dim()) throw PreconditionError("proj_dist: dimension mismatch");
  return clamped_acos(std::abs(dot(p.rep(), q.rep())));
}

SpherePoint exp_map(const SpherePoint& x, std::span<const double> u, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  std::vector<double> out(x.ambient_size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * x[i] + s * u[i];
  return SpherePoint(std::move(out));
}

std::vector<double> random_tangent(const SpherePoint& x, Rng& rng) {
  std::vector<double> u(x.ambient_size());
  for (;;) {
    for (double& c : u) c = standard_normal(rng);
    const double along = dot(u, x.coords());
    double norm2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] -= along * x[i];
      norm2 += u[i] * u[i];
    }
    if (norm2 > 1e-20) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (double& c : u) c *= inv;
      return u;
    }
  }
}

// ---------------------------------------------------------------------------

double Ambient::diameter() const {
  switch (kind) {
    case AmbientKind::sphere: return kPi;
    case AmbientKind::projective: return kPi / 2;
    case AmbientKind::abstract: break;
  }
  return std::numeric_limits<double>::infinity();
}

double Ambient::similarity(const SpherePoint& a, const SpherePoint& b) const {
  const double c = dot(a, b);
  return kind == AmbientKind::projective ? std::abs(c) : c;
}

double Ambient::metric(const SpherePoint& a, const SpherePoint& b) const {
  if (kind == AmbientKind::abstract) throw PreconditionError("abstract ambient has no point metric");
  return clamped_acos(similarity(a, b));
}

std::string Ambient::tag() const {
  switch (kind) {
    case AmbientKind::sphere: return "s" + std::to_string(n);
    case AmbientKind::projective: return "rp" + std::to_string(n);
    case AmbientKind::abstract: break;
  }
  return "abstract";
}

namespace {

int parse_dim(std::string_view digits, std::string_view whole) {
  int n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || n < 1)
    throw PreconditionError("unrecognized ambient '" + std::string(whole) + "'");
  return n;
}

}  // namespace

Ambient Ambient::parse(std::string_view tag) {
  if (tag == "abstract") return abstract();
  if (tag.starts_with("sphere:")) return sphere(parse_dim(tag.substr(7), tag));
  if (tag.starts_with("projective:")) return projective(parse_dim(tag.substr(11), tag));
  if (tag.starts_with("rp")) return projective(parse_dim(tag.substr(2), tag));
  if (tag.starts_with("s")) return sphere(parse_dim(tag.substr(1), tag));
  throw PreconditionError("unrecognized ambient '" + std::string(tag) + "'");
}

std::string to_string(SampleStrategy s) {
  switch (s) {
    case SampleStrategy::uniform_random: return "uniform-random";
    case SampleStrategy::evenly_spaced_circle: return "evenly-spaced-circle";
    case SampleStrategy::fibonacci_s2: return "fibonacci-s2";
    case SampleStrategy::grid: return "grid";
    case SampleStrategy::none: break;
  }
  return "none";
}

SampleStrategy parse_strategy(std::string_view s) {
  if (s == "uniform-random" || s == "uniform") return SampleStrategy::uniform_random;
  if (s == "evenly-spaced-circle" || s == "evenly-spaced") return SampleStrategy::evenly_spaced_circle;
  if (s == "fibonacci-s2" || s == "fibonacci") return SampleStrategy::fibonacci_s2;
  if (s == "grid") return SampleStrategy::grid;
  if (s == "none") return SampleStrategy::none;
  throw PreconditionError("unknown sampling strategy '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------

FinitePointCloud FinitePointCloud::from_points(Ambient ambient, std::vector<SpherePoint> points,
                                               SampleStrategy strategy, std::uint64_t seed) {
  if (!ambient.geodesic()) throw PreconditionError("from_points requires a sphere or projective ambient");
  FinitePointCloud out;
  out.ambient_ = ambient;
  out.size_ = points.size();
  out.strategy_ = strategy;
  out.seed_ = seed;
  for (auto& p : points) {
    if (p.dim() != ambient.n) throw PreconditionError("point dimension does not match ambient");
    if (ambient.kind == AmbientKind::projective) p = canonical_sign(p);
  }
  out.points_ = std::move(points);
  if (out.size_ <= kDenseMatrixLimit) {
    const std::size_t n = out.size_;
    out.dist_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = ambient.metric(out.points_[i], out.points_[j]);
        out.dist_[i * n + j] = d;
        out.dist_[j * n + i] = d;
      }
    }
  }
  return out;
}

FinitePointCloud FinitePointCloud::from_distances(std::vector<double> matrix, std::size_t size) {
  if (matrix.size() != size * size) throw PreconditionError("distance matrix has wrong size");
  for (std::size_t i = 0; i < size; ++i) {
    if (matrix[i * size + i] != 0.0) throw PreconditionError("distance matrix must vanish on the diagonal");
    for (std::size_t j = 0; j < size; ++j) {
      const double d = matrix[i * size + j];
      if (!(d >= 0.0) || d != matrix[j * size + i])
        throw PreconditionError("distance matrix must be symmetric and nonnegative");
    }
  }
  FinitePointCloud out;
  out.ambient_ = Ambient::abstract();
  out.size_ = size;
  out.dist_ = std::move(matrix);
  return out;
}

double FinitePointCloud::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = i + 1; j < size_; ++j) best = std::max(best, dist(i, j));
  return best;
}

FinitePointCloud perturb_within(const FinitePointCloud& cloud, double nu, std::uint64_t seed) {
  if (!cloud.ambient().geodesic()) throw PreconditionError("perturb_within: abstract ambient has no tangent structure");
  if (!(nu >= 0.0)) throw PreconditionError("perturb_within: nu must be nonnegative");
  if (nu == 0.0) return cloud;
  Rng rng = make_rng(seed, "perturb");
  std::vector<SpherePoint> moved;
  moved.reserve(cloud.size());
  for (const auto& p : cloud.points()) {
    const auto u = random_tangent(p, rng);
    const double t = nu * uniform01(rng);
    moved.push_back(exp_map(p, u, t));
  }
  return FinitePointCloud::from_points(cloud.ambient(), std::move(moved), cloud.strategy(), cloud.seed());
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const FinitePointCloud& cloud) {
  nlohmann::json j;
  const auto& a = cloud.ambient();
  j["ambient"] = {{"kind", a.kind == AmbientKind::sphere       ? "sphere"
                           : a.kind == AmbientKind::projective ? "projective"
                                                               : "abstract"},
                  {"n", a.n}};
  j["seed"] = cloud.seed();
  j["strategy"] = to_string(cloud.strategy());
  if (a.geodesic()) {
    auto pts = nlohmann::json::array();
    for (const auto& p : cloud.points()) pts.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
    j["points"] = std::move(pts);
  } else {
    // abstract spaces have no coordinates to recompute from
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      std::vector<double> row(cloud.size());
      for (std::size_t k = 0; k < cloud.size(); ++k) row[k] = cloud.dist(i, k);
      rows.push_back(std::move(row));
    }
    j["points"] = nullptr;
    j["distances"] = std::move(rows);
  }
  return j;
}

FinitePointCloud cloud_from_json(const nlohmann::json& j) {
  const auto& amb = j.at("ambient");
  const std::string kind = amb.at("kind").get<std::string>();
  const std::uint64_t seed = j.value("seed", std::uint64_t{0});
  const SampleStrategy strategy = parse_strategy(j.value("strategy", std::string("none")));
  if (kind == "abstract") {
    const auto& rows = j.at("distances");
    const std::size_t n = rows.size();
    std::vector<double> m;
    m.reserve(n * n);
    for (const auto& row : rows) {
      if (row.size() != n) throw PreconditionError("distance matrix must be square");
      for (const auto& v : row) m.push_back(v.get<double>());
    }
    return FinitePointCloud::from_distances(std::move(m), n);
  }
  Ambient a;
  if (kind == "sphere") a = Ambient::sphere(amb.at("n").get<int>());
  else if (kind == "projective") a = Ambient::projective(amb.at("n").get<int>());
  else throw PreconditionError("unknown ambient kind '" + kind + "'");
  std::vector<SpherePoint> pts;
  for (const auto& p : j.at("points")) pts.emplace_back(p.get<std::vector<double>>());
  return FinitePointCloud::from_points(a, std::move(pts), strategy, seed);
}

}  // namespace vrs
