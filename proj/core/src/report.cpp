#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vrs/bounds.hpp"
#include "vrs/error.hpp"

namespace vrs {

ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "svg") return ReportFormat::svg;
  if (s == "json") return ReportFormat::json;
  throw PreconditionError("unknown report format '" + std::string(s) + "'");
}

std::string extension(ReportFormat f) {
  switch (f) {
    case ReportFormat::csv: return "csv";
    case ReportFormat::svg: return "svg";
    case ReportFormat::json: return "json";
  }
  return "txt";
}

namespace {

constexpr const char* kCsvHeader =
    "n,k,delta_lo,lo_exact_expr,lo_provenance,delta_hi,hi_exact_expr,hi_provenance,r_lo,r_hi,flags";

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string f3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool has_flag(const ConnectivityInterval& row, std::string_view f) {
  return std::find(row.flags.begin(), row.flags.end(), f) != row.flags.end();
}

}  // namespace

std::string intervals_csv(const std::vector<ConnectivityInterval>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << r.k << ',' << g17(r.delta_lo) << ',' << r.lo_expr << ',' << r.lo_provenance << ','
       << g17(r.delta_hi) << ',' << r.hi_expr << ',' << r.hi_provenance << ',' << g17(r.r_lo()) << ','
       << g17(r.r_hi()) << ',' << join(r.flags, ';') << '\n';
  }
  return os.str();
}

std::vector<ConnectivityInterval> intervals_from_csv(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw PreconditionError("interval CSV: unexpected header");
  std::vector<ConnectivityInterval> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 11) throw PreconditionError("interval CSV: expected 11 fields, got " + std::to_string(f.size()));
    ConnectivityInterval r;
    r.n = std::stoi(f[0]);
    r.k = std::stoi(f[1]);
    r.delta_lo = std::stod(f[2]);
    r.lo_expr = f[3];
    r.lo_provenance = f[4];
    r.delta_hi = std::stod(f[5]);
    r.hi_expr = f[6];
    r.hi_provenance = f[7];
    if (!f[10].empty()) r.flags = split(f[10], ';');
    r.lo_tight = !has_flag(r, "lo-bound-only");
    r.hi_tight = !has_flag(r, "hi-bound-only");
    r.lo_exact = PiRational::parse(r.lo_expr);
    r.hi_exact = PiRational::parse(r.hi_expr);
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json to_json(const ConnectivityInterval& r) {
  return {{"n", r.n},
          {"k", r.k},
          {"delta_lo", r.delta_lo},
          {"lo_exact_expr", r.lo_expr},
          {"lo_provenance", r.lo_provenance},
          {"lo_tight", r.lo_tight},
          {"delta_hi", r.delta_hi},
          {"hi_exact_expr", r.hi_expr},
          {"hi_provenance", r.hi_provenance},
          {"hi_tight", r.hi_tight},
          {"r_lo", r.r_lo()},
          {"r_hi", r.r_hi()},
          {"flags", r.flags}};
}

nlohmann::json intervals_json(const std::vector<ConnectivityInterval>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  return {{"rows", arr},
          {"convention",
           "conn(vr(S^n, pi - delta)) = k - 1 requires delta in [delta_lo, delta_hi), i.e. r in (r_lo, r_hi]"}};
}

std::vector<ConnectivityInterval> intervals_from_json(const nlohmann::json& j) {
  std::vector<ConnectivityInterval> rows;
  for (const auto& e : j.at("rows")) {
    ConnectivityInterval r;
    r.n = e.at("n").get<int>();
    r.k = e.at("k").get<int>();
    r.delta_lo = e.at("delta_lo").get<double>();
    r.lo_expr = e.at("lo_exact_expr").get<std::string>();
    r.lo_provenance = e.at("lo_provenance").get<std::string>();
    r.lo_tight = e.at("lo_tight").get<bool>();
    r.delta_hi = e.at("delta_hi").get<double>();
    r.hi_expr = e.at("hi_exact_expr").get<std::string>();
    r.hi_provenance = e.at("hi_provenance").get<std::string>();
    r.hi_tight = e.at("hi_tight").get<bool>();
    r.flags = e.at("flags").get<std::vector<std::string>>();
    r.lo_exact = PiRational::parse(r.lo_expr);
    r.hi_exact = PiRational::parse(r.hi_expr);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string intervals_svg(int n, const std::vector<ConnectivityInterval>& rows) {
  const int width = 960;
  const int row_h = 40;
  const int height = row_h * static_cast<int>(std::max<std::size_t>(rows.size(), 1));
  const double left = 70.0;
  const double right = 30.0;
  auto x_of = [&](double r) { return left + (width - left - right) * std::clamp(r, 0.0, kPi) / kPi; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<title>Intervals of r where vr(S^" << n << ", r) may have connectivity k-1</title>\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  for (int q = 0; q <= 4; ++q) {
    const double x = x_of(kPi * q / 4.0);
    os << "<line x1=\"" << f3(x) << "\" y1=\"0\" x2=\"" << f3(x) << "\" y2=\"" << height
       << "\" stroke=\"#dddddd\"/>\n";
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double y = row_h * static_cast<double>(i) + row_h / 2.0;
    os << "<text x=\"8\" y=\"" << f3(y + 4) << "\">k=" << r.k << "</text>\n";
    if (r.empty()) {
      os << "<text x=\"" << f3(left) << "\" y=\"" << f3(y + 4) << "\" fill=\"#999999\">empty</text>\n";
      continue;
    }
    const double x0 = x_of(r.r_lo());
    const double x1 = x_of(r.r_hi());
    os << "<line x1=\"" << f3(x0) << "\" y1=\"" << f3(y) << "\" x2=\"" << f3(x1) << "\" y2=\"" << f3(y)
       << "\" stroke=\"#1f5fa8\" stroke-width=\"4\"/>\n";
    // r_lo = pi - delta_hi is open, r_hi = pi - delta_lo is closed
    const char* c0 = r.hi_tight ? "#1f5fa8" : "#d62728";
    const char* c1 = r.lo_tight ? "#1f5fa8" : "#d62728";
    os << "<circle cx=\"" << f3(x0) << "\" cy=\"" << f3(y) << "\" r=\"5\" fill=\"white\" stroke=\"" << c0
       << "\" stroke-width=\"2\"/>\n";
    os << "<circle cx=\"" << f3(x1) << "\" cy=\"" << f3(y) << "\" r=\"5\" fill=\"" << c1 << "\" stroke=\"" << c1
       << "\" stroke-width=\"2\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_report(int n, int k_max, ReportFormat format, CovSource source) {
  const auto rows = interval_table(n, k_max, source);
  switch (format) {
    case ReportFormat::csv: return intervals_csv(rows);
    case ReportFormat::svg: return intervals_svg(n, rows);
    case ReportFormat::json: return intervals_json(rows).dump(2) + "\n";
  }
  return {};
}

void emit_report(int n, int k_max, ReportFormat format, const std::filesystem::path& path, CovSource source) {
  const std::string body = render_report(n, k_max, format, source);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << body;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace vrs
