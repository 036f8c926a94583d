#include "vrs/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "detail/exact.hpp"
#include "vrs/error.hpp"

namespace vrs {

namespace {

constexpr const char* kSphereSource = "Tarnai-Gaspar covering table (upper bounds for cov_S2(2k+2))";
constexpr const char* kProjSource = "Fowler-Tarnai-Gaspar antipodal covering table (upper bounds for cov_RP2(k))";
constexpr double kKnownMatchTolerance = 2e-3;

struct TableRow {
  int m;
  double value;
  bool tight;
  const char* expr;
};

// cov_{S^2}(m) for m = 2k+2, k = 1..7.
const TableRow kSphere2[] = {
    {4, 1.2309594173407747, true, "arccos(1/3)"},
    {6, 0.9553166181245093, true, "1/2*arccos(-1/3)"},
    {8, 0.840193, false, ""},
    {10, 0.738411, true, ""},
    {12, 0.6523581397843682, true, "arccos(sqrt((5+2*sqrt(5))/15))"},
    {14, 0.609782, true, ""},
    {16, 0.574193, false, ""},
};

// cov_{RP^2}(k), k = 1..7.
const TableRow kProj2[] = {
    {1, 1.5707963267948966, true, "pi/2"},
    {2, 1.5707963267948966, true, "pi/2"},
    {3, 0.9553166181245093, true, "1/2*arccos(-1/3)"},
    {4, 0.857072, false, ""},
    {5, 0.801530, false, ""},
    {6, 0.6523581397843682, true, "arccos(sqrt((5+2*sqrt(5))/15))"},
    {7, 0.631914, false, ""},
};

constexpr const char* kElementary = "at most n+1 centers (n on RP^n) miss an orthogonal point";

KnownCoveringValue from_row(Ambient a, const TableRow& r, const char* source) {
  return {a, r.m, r.value, r.tight, r.expr, source};
}

}  // namespace

std::optional<KnownCoveringValue> known_cov(Ambient ambient, int k) {
  if (k < 1) throw PreconditionError("known_cov: k must be at least 1");
  if (ambient.n == 1) {
    const std::string kk = std::to_string(k);
    if (ambient.kind == AmbientKind::sphere)
      return KnownCoveringValue{ambient, k, kPi / k, true, k == 1 ? "pi" : "pi/" + kk, "evenly spaced points on S^1"};
    if (ambient.kind == AmbientKind::projective)
      return KnownCoveringValue{ambient, k, kPi / (2.0 * k), true, "pi/" + std::to_string(2 * k),
                                "evenly spaced points on RP^1"};
  }
  if (ambient.n == 2) {
    if (ambient.kind == AmbientKind::sphere)
      for (const auto& r : kSphere2)
        if (r.m == k) return from_row(ambient, r, kSphereSource);
    if (ambient.kind == AmbientKind::projective)
      for (const auto& r : kProj2)
        if (r.m == k) return from_row(ambient, r, kProjSource);
  }
  // few centers leave a point orthogonal to all of them (or antipodal to the only one)
  if (ambient.kind == AmbientKind::sphere && k == 1) return KnownCoveringValue{ambient, k, kPi, true, "pi", kElementary};
  if ((ambient.kind == AmbientKind::sphere && k <= ambient.n + 1) ||
      (ambient.kind == AmbientKind::projective && k <= ambient.n))
    return KnownCoveringValue{ambient, k, kPi / 2, true, "pi/2", kElementary};
  return std::nullopt;
}

std::vector<KnownCoveringValue> known_table(Ambient ambient) {
  std::vector<KnownCoveringValue> out;
  if (ambient.n != 2) return out;
  if (ambient.kind == AmbientKind::sphere)
    for (const auto& r : kSphere2) out.push_back(from_row(ambient, r, kSphereSource));
  if (ambient.kind == AmbientKind::projective)
    for (const auto& r : kProj2) out.push_back(from_row(ambient, r, kProjSource));
  return out;
}

std::string to_string(CoverStatus s) {
  return s == CoverStatus::matches_known_exact ? "matches-known-exact" : "heuristic-upper-bound";
}

std::size_t default_grid_size(Ambient ambient) {
  switch (ambient.n) {
    case 1: return 3600;
    case 2: return 10000;
    default: return 20000;
  }
}

const FinitePointCloud& certification_grid(Ambient ambient, std::size_t count) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, std::size_t>, std::unique_ptr<FinitePointCloud>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[std::make_tuple(static_cast<int>(ambient.kind), ambient.n, count)];
  if (!slot) slot = std::make_unique<FinitePointCloud>(sample_space(ambient, count, SampleStrategy::grid));
  return *slot;
}

double certify_cover(std::span<const SpherePoint> centers, const FinitePointCloud& grid) {
  if (grid.empty()) throw PreconditionError("certify_cover: empty grid");
  if (centers.empty()) throw PreconditionError("certify_cover: no centers");
  return covering_radius_of_points(centers, grid);
}

// ---------------------------------------------------------------------------
// Solver

namespace {

// Normalized measure of a closed r-ball in S^n.
double cap_fraction(int n, double r) {
  if (r >= kPi) return 1.0;
  switch (n) {
    case 1: return r / kPi;
    case 2: return (1.0 - std::cos(r)) / 2.0;
    case 3: return (r - std::sin(r) * std::cos(r)) / kPi;
    default: return 1.0;
  }
}

// k balls of radius below this cannot cover: their total measure is short.
double radius_lower_bound(Ambient ambient, int k) {
  const double need = ambient.kind == AmbientKind::projective ? 0.5 / k : 1.0 / k;
  double lo = 0.0, hi = kPi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cap_fraction(ambient.n, mid) < need ? lo : hi) = mid;
  }
  return lo;
}

class CoverSearch {
 public:
  CoverSearch(Ambient ambient, int k, const FinitePointCloud& grid, const CoverConfig& cfg)
      : ambient_(ambient),
        k_(k),
        grid_(grid),
        cfg_(cfg),
        proj_(ambient.kind == AmbientKind::projective),
        floor_(radius_lower_bound(ambient, k)) {}

  struct Result {
    std::vector<SpherePoint> centers;
    double radius = std::numeric_limits<double>::infinity();
  };

  // Nothing can beat the measure bound, so the search may stop.
  bool optimal(const Result& r) const { return r.radius <= floor_ + 1e-9; }

  Result run_start(int start) {
    Rng rng = make_rng(cfg_.seed, "cover-start", static_cast<std::uint64_t>(start));
    auto centers = farthest_point_init(rng);
    grid_lloyd(centers);
    Result best{centers, exact(centers)};
    polish(best, 200);
    smooth_polish(best, 150);
    if (optimal(best)) return best;

    // annealed random kicks
    Result current = best;
    const int rounds = std::max(cfg_.anneal_rounds, 0);
    for (int t = 0; t < rounds; ++t) {
      const double frac = rounds > 1 ? static_cast<double>(t) / (rounds - 1) : 1.0;
      const double kick = cfg_.kick_start * std::pow(cfg_.kick_end / cfg_.kick_start, frac);
      Result trial = current;
      const auto j = static_cast<std::size_t>(uniform_index(rng, trial.centers.size()));
      const auto u = random_tangent(trial.centers[j], rng);
      trial.centers[j] = normalize_sign(exp_map(trial.centers[j], u, kick));
      if (uniform01(rng) < 0.5) {
        // a second, smaller kick to every center
        for (auto& c : trial.centers) c = normalize_sign(exp_map(c, random_tangent(c, rng), 0.25 * kick));
      }
      trial.radius = exact(trial.centers);
      polish(trial, 2);
      smooth_polish(trial, 12);
      const double temperature = 0.05 * kick;
      if (trial.radius < current.radius ||
          uniform01(rng) < std::exp(-(trial.radius - current.radius) / temperature)) {
        current = std::move(trial);
      }
      if (current.radius < best.radius) best = current;
      if (optimal(best)) return best;
    }
    smooth_polish(best, 300);
    polish(best, 50);
    return best;
  }

  double exact(const std::vector<SpherePoint>& centers) const {
    return exact_covering_radius(ambient_, centers);
  }

 private:
  SpherePoint normalize_sign(SpherePoint p) const { return proj_ ? canonical_sign(p) : p; }

  double sim(const SpherePoint& a, const SpherePoint& b) const { return ambient_.similarity(a, b); }

  std::vector<SpherePoint> farthest_point_init(Rng& rng) const {
    const std::size_t n = grid_.size();
    std::vector<SpherePoint> centers;
    centers.push_back(grid_.point(uniform_index(rng, n)));
    std::vector<double> best(n, -2.0);
    while (static_cast<int>(centers.size()) < k_) {
      std::size_t far = 0;
      double far_sim = 2.0;
      for (std::size_t g = 0; g < n; ++g) {
        best[g] = std::max(best[g], sim(grid_.point(g), centers.back()));
        if (best[g] < far_sim) {
          far_sim = best[g];
          far = g;
        }
      }
      centers.push_back(grid_.point(far));
    }
    return centers;
  }

  // Max grid distance to the nearest center, with the assignment.  Ties go
  // to the lowest center index.
  double assign(const std::vector<SpherePoint>& centers, std::vector<int>& owner) const {
    owner.assign(grid_.size(), 0);
    double worst = 1.0;
    for (std::size_t g = 0; g < grid_.size(); ++g) {
      double best = -2.0;
      int arg = 0;
      for (int c = 0; c < k_; ++c) {
        const double s = sim(grid_.point(g), centers[static_cast<std::size_t>(c)]);
        if (s > best) {
          best = s;
          arg = c;
        }
      }
      owner[g] = arg;
      worst = std::min(worst, best);
    }
    return clamped_acos(worst);
  }

  // Approximate minimax center of a cell by subgradient steps toward the
  // farthest member, keeping the best iterate.
  SpherePoint recenter(const SpherePoint& start, const std::vector<SpherePoint>& cell) const {
    SpherePoint c = start;
    SpherePoint best = start;
    double best_val = std::numeric_limits<double>::infinity();
    for (int t = 0; t <= cfg_.recenter_steps; ++t) {
      double far_dot = 2.0;
      const SpherePoint* far = nullptr;
      for (const auto& p : cell) {
        const double d = proj_ ? std::abs(dot(p, c)) : dot(p, c);
        if (d < far_dot) {
          far_dot = d;
          far = &p;
        }
      }
      const double val = clamped_acos(far_dot);
      if (val < best_val) {
        best_val = val;
        best = c;
      }
      if (t == cfg_.recenter_steps || far == nullptr || val < 1e-15) break;
      SpherePoint target = *far;
      if (proj_ && dot(target, c) < 0.0) target = target.antipode();
      // tangent direction toward the farthest point
      std::vector<double> u(c.ambient_size());
      const double cs = dot(target, c);
      double norm2 = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = target[i] - cs * c[i];
        norm2 += u[i] * u[i];
      }
      if (norm2 < 1e-30) break;
      for (double& x : u) x /= std::sqrt(norm2);
      c = exp_map(c, u, val / (t + 2.0));
    }
    return normalize_sign(best);
  }

  void grid_lloyd(std::vector<SpherePoint>& centers) const {
    std::vector<int> owner;
    double best = assign(centers, owner);
    auto best_centers = centers;
    for (int it = 0; it < cfg_.lloyd_iterations; ++it) {
      std::vector<std::vector<SpherePoint>> cells(static_cast<std::size_t>(k_));
      for (std::size_t g = 0; g < grid_.size(); ++g)
        cells[static_cast<std::size_t>(owner[g])].push_back(grid_.point(g));
      for (int c = 0; c < k_; ++c) {
        const auto ci = static_cast<std::size_t>(c);
        if (!cells[ci].empty()) centers[ci] = recenter(centers[ci], cells[ci]);
      }
      const double value = assign(centers, owner);
      if (value < best - 1e-12) {
        best = value;
        best_centers = centers;
      } else {
        break;
      }
    }
    centers = std::move(best_centers);
  }

  // Exact Lloyd iteration: every center moves to the minimax center of the
  // vertices of its own Voronoi cell.
  void polish(Result& r, int iterations) const {
    auto centers = r.centers;
    int stall = 0;
    for (int it = 0; it < iterations && stall < 8; ++it) {
      std::vector<SpherePoint> lifted = centers;
      if (proj_)
        for (const auto& c : centers) lifted.push_back(c.antipode());
      std::vector<std::vector<SpherePoint>> cells(centers.size());
      std::vector<std::size_t> owners;
      const std::size_t vertex_degree = centers.front().ambient_size();
      for (const auto& v : voronoi_candidates(lifted)) {
        double best = -2.0;
        for (const auto& c : lifted) best = std::max(best, dot(v, c));
        owners.clear();
        for (std::size_t l = 0; l < lifted.size(); ++l)
          if (dot(v, lifted[l]) >= best - 1e-10) owners.push_back(l);
        // only cell vertices (equidistant from n+1 centers) bound a cell
        if (owners.size() < vertex_degree) continue;
        for (std::size_t l : owners) {
          const std::size_t owner = l % centers.size();
          cells[owner].push_back(l < centers.size() ? v : v.antipode());
        }
      }
      for (std::size_t c = 0; c < centers.size(); ++c) {
        if (cells[c].size() < 2) continue;
        if (auto m = minimax_center(cells[c])) centers[c] = normalize_sign(*m);
      }
      const double value = exact(centers);
      if (value < r.radius - 1e-13) {
        r.radius = value;
        r.centers = centers;
        stall = 0;
      } else {
        ++stall;
      }
    }
  }

  // A Delaunay simplex: n+1 lifted centers equidistant from one Voronoi
  // vertex.  Its circumradius is acos(sign * |foot|), where foot is the
  // closest point to the origin on the members' affine hull.
  struct Simplex {
    std::vector<std::size_t> members;  // lifted indices; l >= k means -x_{l-k}
    double sign = 1.0;
  };

  std::vector<Simplex> delaunay(const std::vector<SpherePoint>& centers, double& radius) const {
    std::vector<SpherePoint> lifted = centers;
    if (proj_)
      for (const auto& c : centers) lifted.push_back(c.antipode());
    const std::size_t degree = centers.front().ambient_size();
    std::vector<Simplex> out;
    std::vector<std::size_t> owners;
    double worst = 1.0;
    for (const auto& v : voronoi_candidates(lifted)) {
      double best = -2.0;
      for (const auto& c : lifted) best = std::max(best, dot(v, c));
      worst = std::min(worst, best);
      owners.clear();
      for (std::size_t l = 0; l < lifted.size(); ++l)
        if (dot(v, lifted[l]) >= best - 1e-9) owners.push_back(l);
      if (owners.size() < degree || owners.size() > 8) continue;
      // every degree-subset of the owners spans the same vertex
      std::vector<std::size_t> pick(degree);
      for (std::size_t i = 0; i < degree; ++i) pick[i] = i;
      for (;;) {
        Simplex s;
        for (std::size_t i : pick) s.members.push_back(owners[i]);
        std::vector<std::vector<double>> pts;
        for (std::size_t l : s.members) pts.emplace_back(lifted[l].coords().begin(), lifted[l].coords().end());
        std::vector<const std::vector<double>*> ptr;
        for (const auto& p : pts) ptr.push_back(&p);
        if (auto f = detail::affine_foot(ptr)) {
          s.sign = dot(v.coords(), f->point) >= 0.0 ? 1.0 : -1.0;
          out.push_back(std::move(s));
        }
        std::size_t i = degree;
        while (i > 0 && pick[i - 1] == owners.size() - degree + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < degree; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    radius = clamped_acos(worst);
    return out;
  }

  double circumradius(const Simplex& s, const std::vector<std::vector<double>>& x) const {
    const std::size_t k = x.size();
    if (s.members.size() == 3 && x.front().size() == 3) {
      double p[3][3];
      for (int m = 0; m < 3; ++m) {
        const std::size_t l = s.members[m];
        const double sg = l >= k ? -1.0 : 1.0;
        for (int a = 0; a < 3; ++a) p[m][a] = sg * x[l % k][a];
      }
      const double u[3] = {p[1][0] - p[0][0], p[1][1] - p[0][1], p[1][2] - p[0][2]};
      const double w[3] = {p[2][0] - p[0][0], p[2][1] - p[0][1], p[2][2] - p[0][2]};
      const double nrm[3] = {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
      const double n2 = nrm[0] * nrm[0] + nrm[1] * nrm[1] + nrm[2] * nrm[2];
      if (n2 < 1e-30) return kPi;
      const double h = std::abs(nrm[0] * p[0][0] + nrm[1] * p[0][1] + nrm[2] * p[0][2]) / std::sqrt(n2);
      return clamped_acos(s.sign * h);
    }
    std::vector<std::vector<double>> pts;
    for (std::size_t l : s.members) {
      pts.push_back(x[l % k]);
      if (l >= k)
        for (double& c : pts.back()) c = -c;
    }
    std::vector<const std::vector<double>*> ptr;
    for (const auto& p : pts) ptr.push_back(&p);
    const auto f = detail::affine_foot(ptr);
    if (!f) return kPi;
    double norm2 = 0.0;
    for (double c : f->point) norm2 += c * c;
    return clamped_acos(s.sign * std::sqrt(norm2));
  }

  static double soft_max(const std::vector<double>& v, double beta) {
    const double top = *std::max_element(v.begin(), v.end());
    double sum = 0.0;
    for (double x : v) sum += std::exp(beta * (x - top));
    return top + std::log(sum) / beta;
  }

  static void normalize(std::vector<double>& v) {
    double n2 = 0.0;
    for (double c : v) n2 += c * c;
    const double inv = 1.0 / std::sqrt(n2);
    for (double& c : v) c *= inv;
  }

  // Gradient descent on a log-sum-exp of Delaunay circumradii with a rising
  // sharpness; the simplex list is rebuilt every iteration and the exact
  // covering radius decides which iterate is kept.
  void smooth_polish(Result& r, int iterations) const {
    const std::size_t k = r.centers.size();
    const std::size_t dim = r.centers.front().ambient_size();
    std::vector<std::vector<double>> x;
    for (const auto& c : r.centers) x.emplace_back(c.coords().begin(), c.coords().end());
    double step = 0.02;
    constexpr double h = 1e-7;
    for (int it = 0; it < iterations; ++it) {
      std::vector<SpherePoint> centers;
      for (const auto& v : x) centers.push_back(normalize_sign(SpherePoint(v)));
      double radius = 0.0;
      const auto simplices = delaunay(centers, radius);
      if (radius < r.radius - 1e-13) {
        r.radius = radius;
        r.centers = centers;
      }
      if (simplices.empty() || step < 1e-9) break;
      x.clear();
      for (const auto& c : centers) x.emplace_back(c.coords().begin(), c.coords().end());
      const double frac = iterations > 1 ? static_cast<double>(it) / (iterations - 1) : 1.0;
      const double beta = 30.0 * std::pow(100.0, frac);
      std::vector<std::vector<std::size_t>> incident(k);
      std::vector<double> vals(simplices.size());
      for (std::size_t s = 0; s < simplices.size(); ++s) {
        vals[s] = circumradius(simplices[s], x);
        for (std::size_t l : simplices[s].members) {
          auto& inc = incident[l % k];
          if (inc.empty() || inc.back() != s) inc.push_back(s);
        }
      }
      const double f0 = soft_max(vals, beta);
      std::vector<std::vector<double>> grad(k, std::vector<double>(dim, 0.0));
      double gmax = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        if (incident[i].empty()) continue;
        const auto keep = x[i];
        for (std::size_t a = 0; a < dim; ++a) {
          x[i] = keep;
          x[i][a] += h;
          normalize(x[i]);
          auto trial = vals;
          for (std::size_t s : incident[i]) trial[s] = circumradius(simplices[s], x);
          grad[i][a] = (soft_max(trial, beta) - f0) / h;
        }
        x[i] = keep;
        double along = 0.0;
        for (std::size_t a = 0; a < dim; ++a) along += grad[i][a] * x[i][a];
        double g2 = 0.0;
        for (std::size_t a = 0; a < dim; ++a) {
          grad[i][a] -= along * x[i][a];
          g2 += grad[i][a] * grad[i][a];
        }
        gmax = std::max(gmax, std::sqrt(g2));
      }
      if (gmax < 1e-14) break;
      bool moved = false;
      for (int attempt = 0; attempt < 8 && !moved; ++attempt) {
        auto y = x;
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t a = 0; a < dim; ++a) y[i][a] -= step * grad[i][a] / gmax;
          normalize(y[i]);
        }
        std::vector<double> trial(simplices.size());
        for (std::size_t s = 0; s < simplices.size(); ++s) trial[s] = circumradius(simplices[s], y);
        if (soft_max(trial, beta) < f0) {
          x = std::move(y);
          step *= 1.5;
          moved = true;
        } else {
          step *= 0.5;
        }
      }
      if (!moved) step = std::max(step, 1e-4);  // a new simplex list may unlock progress
    }
  }

  Ambient ambient_;
  int k_;
  const FinitePointCloud& grid_;
  const CoverConfig& cfg_;
  bool proj_;
  double floor_;
};

}  // namespace

CoveringSolution solve_cov(Ambient ambient, int k, const CoverConfig& config) {
  if (k < 1) throw PreconditionError("solve_cov: k must be at least 1");
  if (!ambient.geodesic() || ambient.n < 1 || ambient.n > 3)
    throw PreconditionError("solve_cov: ambient must be S^n or RP^n with n in {1,2,3}");
  if (config.multistarts < 1) throw PreconditionError("solve_cov: at least one multistart is required");
  const std::size_t grid_size = config.grid_size == 0 ? default_grid_size(ambient) : config.grid_size;
  const double mesh = grid_mesh(ambient, grid_size);
  if (config.mesh_tolerance && mesh > *config.mesh_tolerance)
    throw CoverageError("grid of " + std::to_string(grid_size) + " points has mesh " + std::to_string(mesh) +
                        " rad, above the requested tolerance " + std::to_string(*config.mesh_tolerance));
  const FinitePointCloud& grid = certification_grid(ambient, grid_size);

  CoverSearch search(ambient, k, grid, config);
  CoverSearch::Result best;
  int best_start = 0;
  for (int s = 0; s < config.multistarts; ++s) {
    auto r = search.run_start(s);
    if (r.radius < best.radius) {
      best = std::move(r);
      best_start = s;
    }
    if (search.optimal(best)) break;
  }

  CoveringSolution sol;
  sol.ambient = ambient;
  sol.k = k;
  sol.centers = std::move(best.centers);
  sol.grid_size = grid_size;
  sol.grid_mesh = mesh;
  sol.radius_achieved = certify_cover(sol.centers, grid);
  sol.radius_exact = best.radius;
  // The Voronoi evaluation is exact up to rounding; the grid bound holds as
  // long as the measured mesh is a true mesh.  Either is an upper bound.
  sol.radius_certified =
      std::max(sol.radius_achieved, std::min(sol.radius_achieved + mesh, sol.radius_exact + 1e-12));
  sol.best_start = best_start;
  if (auto known = known_cov(ambient, k); known && known->tight &&
                                          sol.radius_certified <= known->value + kKnownMatchTolerance) {
    sol.status = CoverStatus::matches_known_exact;
  }
  return sol;
}

namespace {

// Normalized measure of a closed delta-ball, so that no fewer than
// 1 / fraction balls can cover.
int area_lower_bound(Ambient ambient, double delta) {
  if (delta >= ambient.diameter()) return 1;
  double fraction = cap_fraction(ambient.n, delta);
  if (ambient.kind == AmbientKind::projective) fraction *= 2.0;  // a ball in RP^n lifts to two antipodal caps
  if (fraction >= 1.0) return 1;
  return std::max(1, static_cast<int>(std::ceil(1.0 / fraction - 1e-9)));
}

}  // namespace

NumCoverResult num_cover(Ambient ambient, double delta, int k_max, const CoverConfig& config) {
  if (!(delta > 0.0)) throw PreconditionError("num_cover: delta must be positive");
  if (k_max < 1) throw PreconditionError("num_cover: k_max must be at least 1");
  const double slack = 1e-12 * std::max(1.0, delta);
  NumCoverResult out;

  if (ambient.n == 1 && ambient.geodesic()) {
    // closed form cov(k) = c/k; find the least k with c/k <= delta
    const double c = ambient.kind == AmbientKind::sphere ? kPi : kPi / 2.0;
    const double guess = std::ceil(c / delta);
    if (guess > static_cast<double>(k_max) + 1.0) return out;
    int k = std::max(1, static_cast<int>(guess));
    while (k > 1 && known_cov(ambient, k - 1)->value <= delta + slack) --k;
    while (known_cov(ambient, k)->value > delta + slack) ++k;
    if (k > k_max) return out;
    out.value = k;
    out.exact = true;
    out.certified_radius = known_cov(ambient, k)->value;
    return out;
  }

  // Database bracket: cov(k) <= delta < cov(k-1), both tight.
  std::optional<int> literature_bound;
  for (int k = 1; k <= k_max; ++k) {
    const auto kv = known_cov(ambient, k);
    if (!kv || kv->value > delta + slack) continue;
    if (!literature_bound) literature_bound = k;
    if (!kv->tight) continue;
    bool bracketed = k == 1;
    if (!bracketed) {
      const auto prev = known_cov(ambient, k - 1);
      bracketed = prev && prev->tight && prev->value > delta + slack;
    }
    if (bracketed) {
      out.value = k;
      out.exact = true;
      out.certified_radius = kv->value;
      return out;
    }
    break;
  }

  // Nothing below the area bound can cover, nor anything at or below a
  // tight tabulated k whose radius exceeds delta.
  const int floor_k = area_lower_bound(ambient, delta);
  int first = floor_k;
  for (int k = 1; k <= k_max; ++k)
    if (auto kv = known_cov(ambient, k); kv && kv->tight && kv->value > delta + slack) first = std::max(first, k + 1);
  const int limit = literature_bound ? std::min(*literature_bound - 1, k_max) : k_max;
  for (int k = first; k <= limit; ++k) {
    const auto sol = solve_cov(ambient, k, config);
    if (sol.radius_certified <= delta + slack) {
      out.value = k;
      out.exact = k == first;
      out.certified_radius = sol.radius_certified;
      return out;
    }
  }
  if (literature_bound) {
    out.value = literature_bound;
    out.certified_radius = known_cov(ambient, *literature_bound)->value;
  }
  return out;
}

nlohmann::json to_json(const CoveringSolution& s) {
  nlohmann::json centers = nlohmann::json::array();
  for (const auto& c : s.centers) centers.push_back(std::vector<double>(c.coords().begin(), c.coords().end()));
  nlohmann::json j = {
      {"ambient", {{"kind", s.ambient.kind == AmbientKind::sphere ? "sphere" : "projective"}, {"n", s.ambient.n}}},
      {"k", s.k},
      {"centers", std::move(centers)},
      {"grid_size", s.grid_size},
      {"radius_achieved", s.radius_achieved},
      {"grid_mesh", s.grid_mesh},
      {"radius_exact", s.radius_exact},
      {"radius_certified", s.radius_certified},
      {"status", to_string(s.status)},
      {"best_start", s.best_start},
  };
  if (auto kv = known_cov(s.ambient, s.k)) {
    j["known"] = {{"value", kv->value}, {"tight", kv->tight}, {"expr", kv->expr}, {"source", kv->source}};
  }
  return j;
}

}  // namespace vrs
