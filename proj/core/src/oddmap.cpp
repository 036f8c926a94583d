#include "vrs/oddmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vrs/error.hpp"

namespace vrs {

CenterSource parse_center_source(std::string_view s) {
  if (s == "known") return CenterSource::known;
  if (s == "solved") return CenterSource::solved;
  throw PreconditionError("unknown center source '" + std::string(s) + "'");
}

std::vector<SpherePoint> known_centers(int n, int k) {
  std::vector<SpherePoint> out;
  if (k < 1) return out;
  if (n == 1) {
    for (int j = 0; j < k; ++j) out.push_back(SpherePoint::on_circle(kPi * j / k));
  } else if (n == 2 && k <= 3) {
    const std::vector<std::vector<double>> axes = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
    if (k == 3) {
      for (const auto& a : axes) out.emplace_back(a);
    } else {
      // with one or two axes the farthest points are at distance pi/2
      for (int j = 0; j < k; ++j) out.emplace_back(axes[static_cast<std::size_t>(j)]);
    }
  } else if (n == 2 && k == 6) {
    constexpr double phi = std::numbers::phi;
    for (const auto& v : std::vector<std::vector<double>>{
             {0, 1, phi}, {0, 1, -phi}, {1, phi, 0}, {1, -phi, 0}, {phi, 0, 1}, {-phi, 0, 1}})
      out.emplace_back(v);
  }
  return out;
}

OddMapSpec make_oddmap_spec(int n, double delta, std::vector<SpherePoint> centers, std::string provenance) {
  if (n < 1) throw PreconditionError("oddmap: n must be >= 1");
  if (!(delta > 0.0 && delta < kPi)) throw PreconditionError("oddmap: delta must lie in (0, pi)");
  if (centers.empty()) throw PreconditionError("oddmap: no centers");
  for (const auto& c : centers)
    if (c.dim() != n) throw PreconditionError("oddmap: center dimension mismatch");
  const Ambient rp = Ambient::projective(n);
  OddMapSpec spec;
  spec.n = n;
  spec.delta = delta;
  spec.center_provenance = std::move(provenance);
  for (const auto& c : centers) {
    spec.centers.emplace_back(c);
    const SpherePoint& x = spec.centers.back().rep();
    spec.lifted.emplace_back(x, x.antipode());
  }
  std::vector<SpherePoint> reps;
  for (const auto& c : spec.centers) reps.push_back(c.rep());
  spec.coverage_radius = exact_covering_radius(rp, reps);
  if (n <= 3) spec.coverage_grid = certify_cover(reps, certification_grid(rp, default_grid_size(rp)));
  if (spec.coverage_radius > delta / 2.0)
    throw CoverageError("oddmap: the " + std::to_string(spec.k()) + " centers have covering radius " +
                        std::to_string(spec.coverage_radius) + " on " + rp.tag() + ", above delta/2 = " +
                        std::to_string(delta / 2.0));
  return spec;
}

OddMapSpec make_oddmap_spec(int n, double delta, int k, CenterSource source, const CoverConfig& config) {
  if (k < 1) throw PreconditionError("oddmap: k must be >= 1");
  if (source == CenterSource::known) {
    auto centers = known_centers(n, k);
    if (!centers.empty()) return make_oddmap_spec(n, delta, std::move(centers), "known");
  }
  auto sol = solve_cov(Ambient::projective(n), k, config);
  return make_oddmap_spec(n, delta, std::move(sol.centers),
                          source == CenterSource::known ? "solved (no stored configuration)" : "solved");
}

void WeightedPoint::validate() const {
  if (support.empty()) throw PreconditionError("weighted point: empty support");
  if (support.size() != weights.size()) throw PreconditionError("weighted point: size mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw PreconditionError("weighted point: weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw PreconditionError("weighted point: weights must sum to one");
}

WeightedPoint WeightedPoint::negated() const {
  WeightedPoint out{{}, weights};
  for (const auto& y : support) out.support.push_back(y.antipode());
  return out;
}

double arc_distance(const SpherePoint& u, const SpherePoint& v) {
  double minus = 0.0;
  double plus = 0.0;
  for (std::size_t i = 0; i < u.ambient_size(); ++i) {
    minus += (u[i] - v[i]) * (u[i] - v[i]);
    plus += (u[i] + v[i]) * (u[i] + v[i]);
  }
  return 2.0 * std::atan2(std::sqrt(minus), std::sqrt(plus));
}

namespace {

void check_simplex(const WeightedPoint& p, const OddMapSpec& spec) {
  p.validate();
  const double scale = kPi - spec.delta;
  for (std::size_t a = 0; a < p.support.size(); ++a) {
    if (p.support[a].dim() != spec.n) throw PreconditionError("oddmap: support point dimension mismatch");
    for (std::size_t b = a + 1; b < p.support.size(); ++b)
      if (!(arc_distance(p.support[a], p.support[b]) < scale))
        throw PreconditionError("oddmap: not a simplex at this scale");
  }
}

double fi_unchecked(const WeightedPoint& p, std::size_t i, const OddMapSpec& spec) {
  const auto& [plus, minus] = spec.lifted[i];
  const double h = spec.delta / 2.0;
  bool hits_plus = false;
  bool hits_minus = false;
  for (const auto& y : p.support) {
    hits_plus = hits_plus || arc_distance(y, plus) <= h;
    hits_minus = hits_minus || arc_distance(y, minus) <= h;
  }
  // distance to the complement of a closed geodesic ball: max(0, h - d(y, x))
  if (!hits_minus) {
    double s = 0.0;
    for (std::size_t j = 0; j < p.support.size(); ++j) s += p.weights[j] * std::max(0.0, h - arc_distance(p.support[j], plus));
    return s;
  }
  if (!hits_plus) {
    double s = 0.0;
    for (std::size_t j = 0; j < p.support.size(); ++j) s += p.weights[j] * std::max(0.0, h - arc_distance(p.support[j], minus));
    return -s;
  }
  throw Error("oddmap: well-definedness violated (support meets both balls of center " + std::to_string(i) + ")");
}

}  // namespace

double eval_fi(const WeightedPoint& p, int i, const OddMapSpec& spec) {
  if (i < 0 || i >= spec.k()) throw PreconditionError("eval_fi: index out of range");
  check_simplex(p, spec);
  return fi_unchecked(p, static_cast<std::size_t>(i), spec);
}

OddMapValue eval_odd_map(const WeightedPoint& p, const OddMapSpec& spec) {
  check_simplex(p, spec);
  OddMapValue v;
  for (std::size_t i = 0; i < spec.lifted.size(); ++i) v.raw.push_back(fi_unchecked(p, i, spec));
  double sq = 0.0;
  for (double x : v.raw) sq += x * x;
  v.norm = std::sqrt(sq);
  if (v.norm < 1e-12) throw Error("oddmap: map hits origin");
  for (double x : v.raw) v.unit.push_back(x / v.norm);
  return v;
}

OddMapReport verify_oddmap(const FinitePointCloud& cloud, const OddMapSpec& spec, int trials, std::uint64_t seed,
                           const OddMapVerifyConfig& config) {
  if (cloud.ambient().kind != AmbientKind::sphere) throw PreconditionError("verify_oddmap: cloud must lie on a sphere");
  if (cloud.ambient().n != spec.n) throw PreconditionError("verify_oddmap: cloud dimension differs from the spec");
  if (trials < 1) throw PreconditionError("verify_oddmap: trials must be >= 1");
  if (cloud.empty()) throw PreconditionError("verify_oddmap: empty cloud");
  const double scale = kPi - spec.delta;
  Rng rng = make_rng(seed, "oddmap");
  OddMapReport rep;
  rep.trials = trials;
  rep.min_norm = std::numeric_limits<double>::infinity();
  std::size_t support_total = 0;
  std::vector<std::size_t> idx;
  for (int t = 0; t < trials; ++t) {
    idx.assign(1, uniform_index(rng, cloud.size()));
    const auto target = 1 + uniform_index(rng, static_cast<std::uint64_t>(config.max_support));
    for (int attempt = 0; attempt < config.grow_attempts && idx.size() < target; ++attempt) {
      const std::size_t c = uniform_index(rng, cloud.size());
      if (std::find(idx.begin(), idx.end(), c) != idx.end()) continue;
      bool ok = true;
      for (std::size_t m : idx) ok = ok && arc_distance(cloud.point(m), cloud.point(c)) < scale;
      if (ok) idx.push_back(c);
    }
    WeightedPoint p;
    double sum = 0.0;
    for (std::size_t m : idx) {
      p.support.push_back(cloud.point(m));
      const double w = -std::log(1.0 - uniform01(rng));  // Dirichlet(1) via exponentials
      p.weights.push_back(w);
      sum += w;
    }
    for (double& w : p.weights) w /= sum;
    if (p.weights.size() == 1) p.weights[0] = 1.0;
    support_total += idx.size();
    try {
      const auto fp = eval_odd_map(p, spec);
      const auto fm = eval_odd_map(p.negated(), spec);
      rep.min_norm = std::min({rep.min_norm, fp.norm, fm.norm});
      double defect = 0.0;
      for (std::size_t i = 0; i < fp.unit.size(); ++i) defect = std::max(defect, std::abs(fp.unit[i] + fm.unit[i]));
      rep.max_odd_defect = std::max(rep.max_odd_defect, defect);
    } catch (const PreconditionError& e) {
      rep.failures.push_back({"not-a-simplex", idx, e.what()});
    } catch (const Error& e) {
      const std::string what = e.what();
      const bool origin = what.find("origin") != std::string::npos;
      if (origin) {
        ++rep.origin_hits;
        rep.min_norm = 0.0;
      } else {
        ++rep.violations;
      }
      rep.failures.push_back({origin ? "origin" : "well-definedness", idx, what});
    }
  }
  rep.mean_support = static_cast<double>(support_total) / trials;
  if (rep.origin_hits > 0) rep.flags.emplace_back("falsification candidate: the map reached the origin");
  if (rep.violations > 0) rep.flags.emplace_back("well-definedness violated: implementation bug");
  if (rep.failures.empty())
    rep.flags.emplace_back("numerical evidence that vr(S^" + std::to_string(spec.n) + ", pi - delta) is not " +
                           std::to_string(spec.k() - 1) + "-connected");
  return rep;
}

nlohmann::json to_json(const OddMapSpec& spec) {
  nlohmann::json centers = nlohmann::json::array();
  for (const auto& c : spec.centers) centers.push_back(std::vector<double>(c.rep().coords().begin(), c.rep().coords().end()));
  return {{"n", spec.n},
          {"k", spec.k()},
          {"delta", spec.delta},
          {"centers", centers},
          {"coverage_radius", spec.coverage_radius},
          {"coverage_grid", spec.coverage_grid},
          {"center_provenance", spec.center_provenance}};
}

nlohmann::json to_json(const OddMapReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures) failures.push_back({{"kind", f.kind}, {"support", f.support}, {"message", f.message}});
  return {{"trials", r.trials},
          {"min_norm", r.min_norm},
          {"max_odd_defect", r.max_odd_defect},
          {"mean_support", r.mean_support},
          {"origin_hits", r.origin_hits},
          {"violations", r.violations},
          {"failures", failures},
          {"flags", r.flags}};
}

}  // namespace vrs
