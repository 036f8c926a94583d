#include "vrs/bounds.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "vrs/error.hpp"

namespace vrs {

PiRational::PiRational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw PreconditionError("PiRational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

double PiRational::value() const { return kPi * static_cast<double>(num_) / static_cast<double>(den_); }

std::string PiRational::to_string() const {
  if (num_ == 0) return "0";
  std::string s = num_ == 1 ? "pi" : num_ == -1 ? "-pi" : std::to_string(num_) + "pi";
  if (den_ != 1) s += "/" + std::to_string(den_);
  return s;
}

std::optional<PiRational> PiRational::parse(std::string_view s) {
  if (s == "0") return PiRational(0, 1);
  const auto at = s.find("pi");
  if (at == std::string_view::npos) return std::nullopt;
  std::int64_t num = 1;
  const std::string head(s.substr(0, at));
  if (head == "-") num = -1;
  else if (!head.empty()) {
    try {
      std::size_t used = 0;
      num = std::stoll(head, &used);
      if (used != head.size()) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  std::int64_t den = 1;
  const std::string tail(s.substr(at + 2));
  if (!tail.empty()) {
    if (tail[0] != '/') return std::nullopt;
    try {
      std::size_t used = 0;
      den = std::stoll(tail.substr(1), &used);
      if (used != tail.size() - 1 || den == 0) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return PiRational(num, den);
}

PiRational operator+(PiRational a, PiRational b) { return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_}; }
PiRational operator-(PiRational a, PiRational b) { return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_}; }
PiRational operator*(PiRational a, std::int64_t c) { return {a.num_ * c, a.den_}; }

std::strong_ordering operator<=>(const PiRational& a, const PiRational& b) {
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

// ---------------------------------------------------------------------------

double ConnectivityInterval::r_lo() const { return kPi - delta_hi; }
double ConnectivityInterval::r_hi() const { return kPi - delta_lo; }

namespace {

struct Endpoint {
  double value = 0.0;
  std::string expr;
  std::string provenance;
  bool tight = false;
  std::optional<PiRational> exact;
};

Endpoint cov_endpoint(Ambient ambient, int k, CovSource source) {
  Endpoint e;
  if (source == CovSource::known) {
    const auto kv = known_cov(ambient, k);
    if (!kv)
      throw PreconditionError("no known value of cov_" + ambient.tag() + "(" + std::to_string(k) +
                              "); use the solver source");
    e.value = kv->value;
    e.expr = kv->expr;
    e.tight = kv->tight;
    e.provenance = ambient.n == 1 ? "closed-form" : "table";
    e.exact = PiRational::parse(kv->expr);
  } else {
    const auto sol = solve_cov(ambient, k);
    e.value = sol.radius_certified;
    e.provenance = "solver-upper-bound";
  }
  return e;
}

}  // namespace

ConnectivityInterval theorem_interval(int n, int k, CovSource source) {
  if (n < 1) throw PreconditionError("theorem_interval: n must be >= 1");
  if (k < 1) throw PreconditionError("theorem_interval: k must be >= 1");
  const auto lo = cov_endpoint(Ambient::sphere(n), 2 * k + 2, source);
  const auto hi_cov = cov_endpoint(Ambient::projective(n), k, source);
  ConnectivityInterval row;
  row.n = n;
  row.k = k;
  row.delta_lo = lo.value;
  row.lo_expr = lo.expr;
  row.lo_provenance = lo.provenance;
  row.lo_tight = lo.tight;
  row.lo_exact = lo.exact;
  row.delta_hi = 2.0 * hi_cov.value;
  row.hi_provenance = hi_cov.provenance;
  row.hi_tight = hi_cov.tight;
  if (hi_cov.exact) {
    row.hi_exact = *hi_cov.exact * 2;
    row.hi_expr = row.hi_exact->to_string();
    row.delta_hi = row.hi_exact->value();
  } else if (!hi_cov.expr.empty()) {
    row.hi_expr = "2*" + hi_cov.expr;
  }
  if (row.lo_exact) row.delta_lo = row.lo_exact->value();
  if (!row.lo_tight) row.flags.emplace_back("lo-bound-only");
  if (!row.hi_tight) row.flags.emplace_back("hi-bound-only");
  if (lo.provenance == "solver-upper-bound") row.flags.emplace_back("lo-conservative");
  if (row.empty()) row.flags.emplace_back("empty-invalid");
  return row;
}

std::vector<ConnectivityInterval> interval_table(int n, int k_max, CovSource source) {
  if (k_max < 1) throw PreconditionError("interval_table: k_max must be >= 1");
  std::vector<ConnectivityInterval> rows;
  for (int k = 1; k <= k_max; ++k) rows.push_back(theorem_interval(n, k, source));
  return rows;
}

CorollaryBounds corollary1_bounds(int n, double delta, int k_max, const CoverConfig& config) {
  if (!(delta > 0.0)) throw PreconditionError("corollary1_bounds: delta must be positive");
  CorollaryBounds b;
  b.n = n;
  b.delta = delta;
  b.sphere_cover = num_cover(Ambient::sphere(n), delta, k_max, config);
  b.projective_cover = num_cover(Ambient::projective(n), delta / 2.0, k_max, config);
  if (b.sphere_cover.value) {
    const int m = *b.sphere_cover.value;
    b.lower = (m + 1) / 2 - 2;  // ceil(m/2) - 2
    b.lower_certified = b.sphere_cover.exact;
    if (!b.lower_certified) b.flags.emplace_back("lower bound uses an upper estimate of numCover and is not certified");
  } else {
    b.flags.emplace_back("numCover of the sphere unresolved");
  }
  if (b.projective_cover.value) {
    b.upper = *b.projective_cover.value - 2;
    // an upper estimate of numCover still gives a valid, weaker upper bound
    b.upper_certified = true;
    if (!b.projective_cover.exact) b.flags.emplace_back("upper bound from an upper estimate of numCover");
  } else {
    b.flags.emplace_back("numCover of projective space unresolved");
  }
  return b;
}

std::string S1HomotopyType::to_string() const {
  return contractible ? "contractible" : "S^" + std::to_string(sphere_dim);
}

S1HomotopyType s1_exact(double r) {
  if (!(r > 0.0)) throw PreconditionError("s1_exact: r must be positive");
  S1HomotopyType t;
  if (r >= kPi) {
    t.contractible = true;
    t.conn = std::numeric_limits<int>::max();
    return t;
  }
  auto upper = [](int k) { return 2.0 * kPi * (k + 1) / (2.0 * k + 3.0); };
  // least k with r <= 2 pi (k+1)/(2k+3)
  int k = std::max(0, static_cast<int>(std::ceil((3.0 * r - 2.0 * kPi) / (2.0 * kPi - 2.0 * r))));
  while (k > 0 && r <= upper(k - 1)) --k;
  while (r > upper(k)) ++k;
  t.k = k;
  t.sphere_dim = 2 * k + 1;
  t.conn = 2 * k;
  return t;
}

std::vector<S1IntervalRow> s1_interval_table(int k_max) {
  if (k_max < 1) throw PreconditionError("s1_interval_table: k_max must be >= 1");
  std::vector<S1IntervalRow> rows;
  for (int k = 1; k <= k_max; ++k) {
    S1IntervalRow row;
    row.k = k;
    row.theorem_lo = PiRational(1, 2 * k + 2);
    row.theorem_hi = PiRational(1, k);
    row.exact_empty = k % 2 == 0;
    if (row.exact_empty) {
      row.contained = true;
    } else {
      row.exact_lo = PiRational(1, k + 2);
      row.exact_hi = PiRational(1, k);
      row.contained = row.theorem_lo <= row.exact_lo && row.exact_hi <= row.theorem_hi;
      row.right_endpoint_tight = row.exact_hi == row.theorem_hi;
    }
    rows.push_back(row);
  }
  return rows;
}

InfiniteChangeReport infinite_change_probe(int n, double epsilon, int k_max) {
  if (!(epsilon > 0.0)) throw PreconditionError("infinite_change_probe: epsilon must be positive");
  if (k_max < 1) throw PreconditionError("infinite_change_probe: k_max must be >= 1");
  InfiniteChangeReport rep;
  rep.n = n;
  rep.epsilon = epsilon;
  rep.label = "finite evidence only: the forced lower bound on conn grows without bound as delta -> 0";
  for (int k = 1; k <= k_max; ++k) {
    if (!known_cov(Ambient::sphere(n), 2 * k + 2) || !known_cov(Ambient::projective(n), k)) break;
    auto row = theorem_interval(n, k);
    if (row.delta_lo < epsilon && row.delta_hi > 0.0) rep.intersecting.push_back(std::move(row));
  }
  // ceil(numCover/2) - 2 > K  iff  numCover > 2K + 4  iff  delta < cov(2K + 4)
  for (int K = 0;; ++K) {
    const auto kv = known_cov(Ambient::sphere(n), 2 * K + 4);
    if (!kv || K >= k_max) break;
    if (kv->value < epsilon) rep.targets.push_back({K, kv->value, kv->expr});
  }
  return rep;
}

nlohmann::json to_json(const CorollaryBounds& b) {
  auto opt = [](const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"n", b.n},
          {"delta", b.delta},
          {"numcover_sphere", opt(b.sphere_cover.value)},
          {"numcover_sphere_exact", b.sphere_cover.exact},
          {"numcover_projective", opt(b.projective_cover.value)},
          {"numcover_projective_exact", b.projective_cover.exact},
          {"lower", opt(b.lower)},
          {"upper", opt(b.upper)},
          {"lower_certified", b.lower_certified},
          {"upper_certified", b.upper_certified},
          {"flags", b.flags}};
}

nlohmann::json to_json(const S1HomotopyType& t) {
  return {{"homotopy_type", t.to_string()},
          {"contractible", t.contractible},
          {"conn", t.contractible ? nlohmann::json("infinity") : nlohmann::json(t.conn)}};
}

nlohmann::json to_json(const S1IntervalRow& row) {
  return {{"k", row.k},
          {"exact", row.exact_empty ? nlohmann::json("empty")
                                    : nlohmann::json::array({row.exact_lo.to_string(), row.exact_hi.to_string()})},
          {"theorem", nlohmann::json::array({row.theorem_lo.to_string(), row.theorem_hi.to_string()})},
          {"contained", row.contained},
          {"right_endpoint_tight", row.right_endpoint_tight}};
}

nlohmann::json to_json(const InfiniteChangeReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.intersecting) rows.push_back(to_json(row));
  nlohmann::json targets = nlohmann::json::array();
  for (const auto& t : r.targets)
    targets.push_back({{"K", t.K}, {"delta_threshold", t.delta_threshold}, {"expr", t.expr}});
  return {{"n", r.n}, {"epsilon", r.epsilon}, {"intersecting", rows}, {"targets", targets}, {"label", r.label}};
}

}  // namespace vrs
