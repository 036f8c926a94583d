#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrs/conic.hpp"
#include "vrs/covering.hpp"

namespace vrs {

/// Exact rational multiple of pi, kept in lowest terms with a positive
/// denominator.
class PiRational {
 public:
  PiRational() = default;
  PiRational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const;
  /// "0", "pi", "pi/4", "3pi/4", "-pi/2".
  std::string to_string() const;
  /// Inverse of to_string; nullopt when `s` is not of that form.
  static std::optional<PiRational> parse(std::string_view s);

  friend PiRational operator+(PiRational a, PiRational b);
  friend PiRational operator-(PiRational a, PiRational b);
  friend PiRational operator*(PiRational a, std::int64_t c);
  friend bool operator==(const PiRational&, const PiRational&) = default;
  friend std::strong_ordering operator<=>(const PiRational& a, const PiRational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Values of delta = pi - r at which conn(vr(S^n, pi - delta)) = k - 1 is
/// possible: [delta_lo, delta_hi) with delta_lo = cov_{S^n}(2k+2) and
/// delta_hi = 2 cov_{RP^n}(k).
struct ConnectivityInterval {
  int n = 0;
  int k = 0;
  double delta_lo = 0.0;
  double delta_hi = 0.0;
  std::string lo_expr;  // closed form, empty when only a decimal is known
  std::string hi_expr;
  std::string lo_provenance;  // "closed-form", "table" or "solver-upper-bound"
  std::string hi_provenance;
  bool lo_tight = false;
  bool hi_tight = false;
  std::optional<PiRational> lo_exact;
  std::optional<PiRational> hi_exact;
  std::vector<std::string> flags;

  double r_lo() const;  // pi - delta_hi (open)
  double r_hi() const;  // pi - delta_lo (closed)
  bool empty() const { return !(delta_lo < delta_hi); }
};

ConnectivityInterval theorem_interval(int n, int k, CovSource source = CovSource::known);

/// Rows k = 1..k_max.
std::vector<ConnectivityInterval> interval_table(int n, int k_max, CovSource source = CovSource::known);

struct CorollaryBounds {
  int n = 0;
  double delta = 0.0;
  NumCoverResult sphere_cover;      // numCover_{S^n}(delta)
  NumCoverResult projective_cover;  // numCover_{RP^n}(delta / 2)
  std::optional<int> lower;         // ceil(numCover_S / 2) - 2
  std::optional<int> upper;         // numCover_RP - 2
  bool lower_certified = false;     // needs an exact covering number
  bool upper_certified = false;
  std::vector<std::string> flags;
};

CorollaryBounds corollary1_bounds(int n, double delta, int k_max = 64, const CoverConfig& config = {});

struct S1HomotopyType {
  bool contractible = false;
  int k = 0;           // vr(S^1, r) ~ S^{2k+1}
  int sphere_dim = 0;  // 2k + 1
  int conn = 0;        // 2k; meaningless when contractible
  std::string to_string() const;
};

/// Homotopy type of vr(S^1, r): S^{2k+1} for 2 pi k/(2k+1) < r <= 2 pi (k+1)/(2k+3),
/// contractible for r >= pi.
S1HomotopyType s1_exact(double r);

struct S1IntervalRow {
  int k = 0;
  bool exact_empty = false;           // even k
  PiRational exact_lo, exact_hi;      // [pi/(k+2), pi/k) for odd k
  PiRational theorem_lo, theorem_hi;  // [pi/(2k+2), pi/k)
  bool contained = false;
  bool right_endpoint_tight = false;
};

std::vector<S1IntervalRow> s1_interval_table(int k_max);

struct ConnectivityTarget {
  int K = 0;
  double delta_threshold = 0.0;  // delta below this forces conn > K
  std::string expr;
};

struct InfiniteChangeReport {
  int n = 0;
  double epsilon = 0.0;
  std::vector<ConnectivityInterval> intersecting;  // rows meeting delta in (0, epsilon)
  std::vector<ConnectivityTarget> targets;
  std::string label;
};

InfiniteChangeReport infinite_change_probe(int n, double epsilon, int k_max);

// --- report emission -------------------------------------------------------

enum class ReportFormat { csv, svg, json };
ReportFormat parse_report_format(std::string_view s);
std::string extension(ReportFormat f);

std::string intervals_csv(const std::vector<ConnectivityInterval>& rows);
std::vector<ConnectivityInterval> intervals_from_csv(const std::string& csv);
nlohmann::json intervals_json(const std::vector<ConnectivityInterval>& rows);
std::vector<ConnectivityInterval> intervals_from_json(const nlohmann::json& j);
/// Horizontal bar per k over the r-axis; hollow markers at open endpoints,
/// solid at closed ones, red where the source value is only a bound.
std::string intervals_svg(int n, const std::vector<ConnectivityInterval>& rows);

std::string render_report(int n, int k_max, ReportFormat format, CovSource source = CovSource::known);
/// Writes the rendered report to `path`.
void emit_report(int n, int k_max, ReportFormat format, const std::filesystem::path& path,
                 CovSource source = CovSource::known);

nlohmann::json to_json(const ConnectivityInterval& row);
nlohmann::json to_json(const CorollaryBounds& b);
nlohmann::json to_json(const S1HomotopyType& t);
nlohmann::json to_json(const S1IntervalRow& row);
nlohmann::json to_json(const InfiniteChangeReport& r);

}  // namespace vrs
