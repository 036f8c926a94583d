#include "vrs/conic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vrs/covering.hpp"
#include "vrs/error.hpp"

namespace vrs {

std::string to_string(ConicMode m) { return m == ConicMode::exhaustive ? "exhaustive" : "sampled"; }

ConicMode parse_conic_mode(std::string_view s) {
  if (s == "exhaustive") return ConicMode::exhaustive;
  if (s == "sampled") return ConicMode::sampled;
  throw PreconditionError("unknown conic mode '" + std::string(s) + "'");
}

CovSource parse_cov_source(std::string_view s) {
  if (s == "known") return CovSource::known;
  if (s == "solved") return CovSource::solved;
  throw PreconditionError("unknown cov source '" + std::string(s) + "'");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (r > kMax / (n - i)) return kMax;
    r = r * (n - i) / (i + 1);
  }
  return r;
}

namespace {

// Open r-balls of every cloud point as rows of a bit matrix.
class BallTable {
 public:
  BallTable(const FinitePointCloud& cloud, double r) : n_(cloud.size()), words_((n_ + 63) / 64), bits_(n_ * words_, 0) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t v = 0; v < n_; ++v)
        if (cloud.dist(i, v) < r) bits_[i * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  }

  std::size_t words() const { return words_; }
  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }

  // out = a & row(i); returns whether any bit survives
  bool intersect(const std::uint64_t* a, std::size_t i, std::uint64_t* out) const {
    const std::uint64_t* b = row(i);
    std::uint64_t any = 0;
    for (std::size_t w = 0; w < words_; ++w) any |= (out[w] = a[w] & b[w]);
    return any != 0;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

// Lexicographic DFS over m-subsets with running intersections.  A prefix
// whose intersection is already empty fails on its first completion, which
// is also the first failing tuple in lexicographic order.
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const BallTable& balls, std::size_t n, std::size_t m)
      : balls_(balls), n_(n), m_(m), idx_(m), inter_(m * balls.words()) {}

  bool run() { return visit(0, 0); }
  std::uint64_t checked() const { return checked_; }
  const std::vector<Vertex>& failing() const { return failing_; }

 private:
  bool visit(std::size_t depth, std::size_t start) {
    const std::size_t w = balls_.words();
    std::uint64_t* out = inter_.data() + depth * w;
    for (std::size_t i = start; i + (m_ - depth) <= n_; ++i) {
      idx_[depth] = static_cast<Vertex>(i);
      bool alive;
      if (depth == 0) {
        std::copy_n(balls_.row(i), w, out);
        alive = std::any_of(out, out + w, [](std::uint64_t x) { return x != 0; });
      } else {
        alive = balls_.intersect(out - w, i, out);
      }
      if (!alive) {
        ++checked_;
        failing_.assign(idx_.begin(), idx_.begin() + static_cast<std::ptrdiff_t>(depth) + 1);
        for (std::size_t j = 1; j < m_ - depth; ++j) failing_.push_back(static_cast<Vertex>(i + j));
        return false;
      }
      if (depth + 1 == m_) ++checked_;
      else if (!visit(depth + 1, i + 1)) return false;
    }
    return true;
  }

  const BallTable& balls_;
  std::size_t n_, m_;
  std::vector<Vertex> idx_;
  std::vector<std::uint64_t> inter_;
  std::uint64_t checked_ = 0;
  std::vector<Vertex> failing_;
};

std::vector<Vertex> random_subset(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<Vertex> out;
  while (out.size() < m) {
    const auto v = static_cast<Vertex>(uniform_index(rng, n));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  std::ranges::sort(out);
  return out;
}

}  // namespace

ConicCertificate conic_check(const FinitePointCloud& cloud, double r, int k, const ConicConfig& config) {
  if (k < 0) throw PreconditionError("conic_check: k must be nonnegative");
  if (!(r > 0.0)) throw PreconditionError("conic_check: r must be positive");
  const std::size_t n = cloud.size();
  const std::size_t m = 2 * static_cast<std::size_t>(k) + 2;
  if (n < m)
    throw PreconditionError("conic_check: cloud has " + std::to_string(n) + " points, needs at least " +
                            std::to_string(m));
  ConicCertificate cert;
  cert.r = r;
  cert.k = k;
  cert.mode = config.mode;
  const BallTable balls(cloud, r);
  if (config.mode == ConicMode::exhaustive) {
    const std::uint64_t total = binomial(n, m);
    if (total > config.tuple_budget)
      throw ResourceLimitError("conic_check: exhaustive mode needs " + std::to_string(total) + " " +
                               std::to_string(m) + "-subsets, above the tuple budget of " +
                               std::to_string(config.tuple_budget));
    ExhaustiveSearch search(balls, n, m);
    cert.witness_found_for_all = search.run();
    cert.tuples_checked = search.checked();
    if (!cert.witness_found_for_all) {
      cert.failures = 1;
      cert.failing_tuple = search.failing();
    }
  } else {
    Rng rng = make_rng(config.seed, "conic-sampled");
    std::vector<std::uint64_t> acc(balls.words());
    for (std::uint64_t t = 0; t < config.tuple_budget; ++t) {
      const auto tuple = random_subset(rng, n, m);
      std::copy_n(balls.row(tuple[0]), balls.words(), acc.begin());
      bool alive = true;
      for (std::size_t j = 1; j < m && alive; ++j) alive = balls.intersect(acc.data(), tuple[j], acc.data());
      alive = alive && std::any_of(acc.begin(), acc.end(), [](std::uint64_t x) { return x != 0; });
      ++cert.tuples_checked;
      if (!alive) {
        ++cert.failures;
        if (!cert.failing_tuple || tuple < *cert.failing_tuple) cert.failing_tuple = tuple;
      }
    }
    cert.witness_found_for_all = cert.failures == 0;
  }
  if (config.attach_density && cloud.ambient().geodesic() && cloud.ambient().n <= 3) {
    const auto& grid = certification_grid(cloud.ambient(), default_grid_size(cloud.ambient()));
    cert.sample_covering_radius = covering_radius_of_sample(cloud, grid);
  }
  return cert;
}

double conic_radius(const FinitePointCloud& cloud, int k, std::uint64_t tuple_budget) {
  if (k < 0) throw PreconditionError("conic_radius: k must be nonnegative");
  const std::size_t n = cloud.size();
  const std::size_t m = 2 * static_cast<std::size_t>(k) + 2;
  if (n < m) throw PreconditionError("conic_radius: cloud too small");
  const std::uint64_t total = binomial(n, m);
  if (total > tuple_budget)
    throw ResourceLimitError("conic_radius: " + std::to_string(total) + " subsets exceed the tuple budget of " +
                             std::to_string(tuple_budget));
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = cloud.dist(i, j);
  // far[depth][v] = max distance from v to the first depth+1 tuple members
  std::vector<double> far(m * n);
  double rho = 0.0;
  auto visit = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
    double* cur = far.data() + depth * n;
    for (std::size_t i = start; i + (m - depth) <= n; ++i) {
      const double* row = d.data() + i * n;
      if (depth == 0) std::copy_n(row, n, cur);
      else
        for (std::size_t v = 0; v < n; ++v) cur[v] = std::max((cur - n)[v], row[v]);
      if (depth + 1 == m) rho = std::max(rho, *std::min_element(cur, cur + n));
      else self(self, depth + 1, i + 1);
    }
  };
  visit(visit, 0, 0);
  return rho;
}

Threshold claim1_threshold(int n, int k, CovSource source) {
  if (n < 1) throw PreconditionError("claim1_threshold: n must be >= 1");
  if (k < 0) throw PreconditionError("claim1_threshold: k must be nonnegative");
  const Ambient sphere = Ambient::sphere(n);
  const int m = 2 * k + 2;
  Threshold t;
  if (source == CovSource::known) {
    const auto known = known_cov(sphere, m);
    if (!known)
      throw PreconditionError("claim1_threshold: no known value of cov_" + sphere.tag() + "(" + std::to_string(m) + ")");
    t.cov = known->value;
    t.tight = known->tight;
    t.provenance = n == 1 ? "closed-form" : "table";
  } else {
    const auto sol = solve_cov(sphere, m);
    t.cov = sol.radius_certified;
    t.tight = false;
    t.provenance = "solver-upper-bound";
  }
  t.value = kPi - t.cov;
  return t;
}

double ball_measure_fraction(Ambient ambient, double r) {
  if (!ambient.geodesic() || ambient.n < 1 || ambient.n > 2)
    throw PreconditionError("ball measure has a closed form only on S^1, S^2, RP^1, RP^2");
  if (r < 0.0) throw PreconditionError("ball radius must be nonnegative");
  auto cap = [&](double t) {
    if (t >= kPi) return 1.0;
    return ambient.n == 1 ? t / kPi : (1.0 - std::cos(t)) / 2.0;
  };
  if (ambient.kind == AmbientKind::sphere) return cap(r);
  // an RP^n ball of radius r <= pi/2 lifts to two antipodal caps
  if (r >= kPi / 2) return 1.0;
  return std::min(1.0, 2.0 * cap(r));
}

bool volume_conn_bound(Ambient ambient, double r, int k) {
  if (k < 0) throw PreconditionError("volume_conn_bound: k must be nonnegative");
  const double need = (2.0 * k + 1.0) / (2.0 * k + 2.0);
  return ball_measure_fraction(ambient, r) > need;
}

double rigidity_margin(double rho, double r) {
  if (!(r > rho)) throw PreconditionError("rigidity_margin: needs r > rho");
  return (r - rho) / 2.0;
}

RigidityReport rigidity_experiment(const FinitePointCloud& cloud, double r, int k, double nu, int seeds,
                                   std::uint64_t seed, const ConicConfig& config) {
  if (nu < 0.0) throw PreconditionError("rigidity_experiment: nu must be nonnegative");
  if (seeds < 1) throw PreconditionError("rigidity_experiment: seeds must be >= 1");
  ConicConfig cfg = config;
  cfg.mode = ConicMode::exhaustive;
  RigidityReport rep;
  rep.r = r;
  rep.k = k;
  rep.nu = nu;
  rep.baseline = conic_check(cloud, r, k, cfg);
  if (!rep.baseline.witness_found_for_all)
    throw PreconditionError("rigidity_experiment: the unperturbed cloud has no certificate at this scale");
  rep.rho = conic_radius(cloud, k, cfg.tuple_budget);
  rep.margin = rigidity_margin(rep.rho, r);
  rep.within_hypothesis = nu < rep.margin;
  if (!rep.within_hypothesis) rep.flags.emplace_back("outside the rigidity hypothesis (nu >= margin): result informational only");
  cfg.attach_density = false;
  rep.persisted_all = true;
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t child = derive_seed(seed, "rigidity", static_cast<std::uint64_t>(s));
    const auto cert = conic_check(perturb_within(cloud, nu, child), r, k, cfg);
    rep.runs.push_back({child, cert.witness_found_for_all, cert.failing_tuple});
    if (!cert.witness_found_for_all) {
      rep.persisted_all = false;
      if (rep.within_hypothesis) rep.flags.push_back("counterexample candidate at seed " + std::to_string(child));
    }
  }
  return rep;
}

nlohmann::json to_json(const ConicCertificate& c) {
  nlohmann::json j;
  j["r"] = c.r;
  j["k"] = c.k;
  j["mode"] = to_string(c.mode);
  j["tuples_checked"] = c.tuples_checked;
  j["failures"] = c.failures;
  j["witness_found_for_all"] = c.witness_found_for_all;
  j["certified"] = c.certified();
  j["failing_tuple"] = c.failing_tuple ? nlohmann::json(*c.failing_tuple) : nlohmann::json(nullptr);
  j["sample_covering_radius"] =
      c.sample_covering_radius ? nlohmann::json(*c.sample_covering_radius) : nlohmann::json(nullptr);
  if (c.mode == ConicMode::sampled) j["note"] = "sampled mode is evidence only, not a certificate";
  return j;
}

nlohmann::json to_json(const Threshold& t) {
  return {{"threshold", t.value}, {"cov", t.cov}, {"tight", t.tight}, {"provenance", t.provenance}};
}

nlohmann::json to_json(const RigidityReport& r) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& run : r.runs)
    runs.push_back({{"seed", run.seed},
                    {"persisted", run.persisted},
                    {"failing_tuple", run.failing_tuple ? nlohmann::json(*run.failing_tuple) : nlohmann::json(nullptr)}});
  return {{"r", r.r},
          {"k", r.k},
          {"nu", r.nu},
          {"rho", r.rho},
          {"margin", r.margin},
          {"within_hypothesis", r.within_hypothesis},
          {"baseline", to_json(r.baseline)},
          {"runs", runs},
          {"persisted_all", r.persisted_all},
          {"flags", r.flags}};
}

}  // namespace vrs
