#include "vrs/tools/app.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vrs/bounds.hpp"
#include "vrs/complex.hpp"
#include "vrs/conic.hpp"
#include "vrs/covering.hpp"
#include "vrs/error.hpp"
#include "vrs/homology.hpp"
#include "vrs/oddmap.hpp"
#include "vrs/tools/acceptance.hpp"

#ifndef VRS_VERSION
#define VRS_VERSION "0.0.0"
#endif

namespace vrs::tools {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kOutputDirEnv = "VRS_OUTPUT_DIR";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_file(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw PreconditionError(path.string() + ": " + e.what());
  }
}

// Everything a subcommand writes goes through here so the manifest can list it.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

  fs::path resolve(const std::string& name) const {
    const fs::path p(name);
    return p.is_absolute() ? p : dir_ / p;
  }

  void write(const std::string& name, const std::string& body) {
    const fs::path p = resolve(name);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot open " + p.string() + " for writing");
    out << body;
    if (!out) throw Error("write failed for " + p.string());
    written_.push_back(p.string());
  }

  const std::vector<std::string>& written() const { return written_; }

 private:
  fs::path dir_;
  std::vector<std::string> written_;
};

json scalar_from_text(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  if (!s.empty()) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end && *end == '\0') {
      if (s.find_first_of(".eEnN") == std::string::npos) {
        try {
          return std::stoll(s);
        } catch (const std::exception&) {
        }
      }
      return v;
    }
  }
  return s;
}

// Echo of every option with a long name, using the effective value.
void echo_options(const CLI::App& app, json& into) {
  for (const CLI::Option* opt : app.get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty() || names.front() == "help" || names.front() == "config") continue;
    const std::string& key = names.front();
    if (opt->get_expected_max() == 0) {
      into[key] = opt->count() > 0;
      continue;
    }
    std::vector<std::string> values = opt->results();
    if (values.empty()) {
      const std::string def = opt->get_default_str();
      if (def.empty()) continue;
      values.push_back(def);
    }
    if (opt->get_expected_max() > 1) {
      json arr = json::array();
      for (const auto& v : values) arr.push_back(scalar_from_text(v));
      into[key] = arr;
    } else {
      into[key] = scalar_from_text(values.back());
    }
  }
}

struct Globals {
  std::uint64_t seed = 1;
  std::string output_dir;
  std::size_t max_simplices = BuildOptions{}.max_simplices;
  std::uint64_t tuple_budget = ConicConfig{}.tuple_budget;
  double mesh_tolerance = 0.0;  // 0: not enforced
  std::string config;
};

FinitePointCloud load_cloud(const std::string& path) { return cloud_from_json(parse_json_file(path)); }

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// --- subcommands -------------------------------------------------------------

struct CoverArgs {
  std::string ambient = "s2";
  int k = 0;
  std::size_t grid = 0;
  int starts = CoverConfig{}.multistarts;
  int rounds = CoverConfig{}.anneal_rounds;
  double kick_start = CoverConfig{}.kick_start;
  double kick_end = CoverConfig{}.kick_end;
  bool table = false;
  std::string out;
};

CoverConfig cover_config(const CoverArgs& a, const Globals& g) {
  CoverConfig cfg;
  cfg.grid_size = a.grid;
  cfg.multistarts = a.starts;
  cfg.anneal_rounds = a.rounds;
  cfg.kick_start = a.kick_start;
  cfg.kick_end = a.kick_end;
  cfg.seed = g.seed;
  if (g.mesh_tolerance > 0.0) cfg.mesh_tolerance = g.mesh_tolerance;
  return cfg;
}

void run_cover(const CoverArgs& a, const Globals& g, Outputs& outs, std::ostream& out) {
  const Ambient amb = Ambient::parse(a.ambient);
  const CoverConfig cfg = cover_config(a, g);
  if (a.table) {
    std::vector<int> ks;
    for (const auto& kv : known_table(amb)) ks.push_back(kv.k);
    if (ks.empty() && amb.n == 1)
      for (int k = 1; k <= 12; ++k) ks.push_back(k);
    if (ks.empty()) throw PreconditionError("cover --table: no tabulated values for " + amb.tag());
    std::ostringstream csv;
    csv << "k,known,tight,solved,gap\n";
    for (int k : ks) {
      const auto kv = known_cov(amb, k);
      const auto sol = solve_cov(amb, k, cfg);
      csv << k << ',' << g17(kv->value) << ',' << (kv->tight ? "true" : "false") << ','
          << g17(sol.radius_certified) << ',' << g17(sol.radius_certified - kv->value) << '\n';
      out << "cov_" << amb.tag() << "(" << k << "): known " << g6(kv->value) << (kv->tight ? " (tight)" : " (bound)")
          << ", solved " << g6(sol.radius_certified) << "\n";
    }
    outs.write(a.out.empty() ? "cover_table.csv" : a.out, csv.str());
    return;
  }
  if (a.k < 1) throw PreconditionError("cover: --k is required and must be >= 1");
  const auto sol = solve_cov(amb, a.k, cfg);
  outs.write(a.out.empty() ? "cover.json" : a.out, to_json(sol).dump(2) + "\n");
  out << "cov_" << amb.tag() << "(" << a.k << ") <= " << g6(sol.radius_certified) << " (certified; grid "
      << sol.grid_size << ", mesh " << g6(sol.grid_mesh) << ", status " << to_string(sol.status) << ")\n";
  if (auto kv = known_cov(amb, a.k))
    out << "known value " << g6(kv->value) << (kv->tight ? " (tight)" : " (upper bound)") << ", gap "
        << g6(sol.radius_certified - kv->value) << "\n";
}

struct SampleArgs {
  std::string ambient = "s1";
  std::size_t count = 0;
  std::string strategy = "uniform-random";
  std::string out = "cloud.json";
};

void run_sample(const SampleArgs& a, const Globals& g, Outputs& outs, std::ostream& out) {
  const auto cloud = sample_space(Ambient::parse(a.ambient), a.count, parse_strategy(a.strategy), g.seed);
  outs.write(a.out, to_json(cloud).dump(2) + "\n");
  out << cloud.size() << " points on " << cloud.ambient().tag() << " (" << a.strategy << "), diameter "
      << g6(cloud.diameter()) << "\n";
}

struct VrArgs {
  std::string cloud;
  double r = 0.0;
  int cap = 4;
  std::string out = "cx.txt";
};

void run_vr(const VrArgs& a, const Globals& g, Outputs& outs, std::ostream& out) {
  const auto cloud = load_cloud(a.cloud);
  const auto cx = build_vr(cloud, a.r, a.cap, BuildOptions{g.max_simplices});
  std::ostringstream os;
  write_complex(os, cx);
  outs.write(a.out, os.str());
  out << "vr(r=" << g6(a.r) << ", cap " << a.cap << "): f-vector";
  for (auto f : f_vector(cx)) out << ' ' << f;
  out << "\n";
}

struct HomologyArgs {
  std::string complex;
  std::string cloud;
  double r = 0.0;
  int cap = 4;
  std::string out = "betti.json";
};

void run_homology(const HomologyArgs& a, const Globals& g, Outputs& outs, std::ostream& out) {
  VRComplex cx;
  if (!a.complex.empty()) {
    std::ifstream in(a.complex);
    if (!in) throw PreconditionError("cannot open " + a.complex);
    cx = read_complex(in);
  } else if (!a.cloud.empty()) {
    cx = build_vr(load_cloud(a.cloud), a.r, a.cap, BuildOptions{g.max_simplices});
  } else {
    throw PreconditionError("homology: give --complex or --cloud with --r");
  }
  const auto prof = betti(cx);
  outs.write(a.out, to_json(prof).dump(2) + "\n");
  out << "reduced Betti (Z/2):";
  for (auto b : prof.reduced_betti) out << ' ' << b;
  out << "; connectivity " << prof.connectivity.to_string() << "\n";
}

struct ConicArgs {
  std::string cloud;
  double r = 0.0;
  int k = 0;
  std::string mode = "exhaustive";
  std::string out = "conic.json";
};

void run_conic(const ConicArgs& a, const Globals& g, Outputs& outs, std::ostream& out) {
  const auto cloud = load_cloud(a.cloud);
  ConicConfig cfg;
  cfg.mode = parse_conic_mode(a.mode);
  cfg.tuple_budget = g.tuple_budget;
  cfg.seed = g.seed;
  const auto cert = conic_check(cloud, a.r, a.k, cfg);
  outs.write(a.out, to_json(cert).dump(2) + "\n");
  out << (cert.witness_found_for_all ? "every " : "not every ") << 2 * a.k + 2 << "-tuple of open " << g6(a.r)
      << "-balls meets (" << cert.tuples_checked << " tuples, " << to_string(cert.mode) << ")";
  if (cert.certified()) out << ": conn >= " << a.k;
  out << "\n";
}

struct RigidityArgs {
  std::string cloud;
  double r = 0.0;
  int k = 0;
  double nu = 0.0;
  int seeds = 20;
  std::string out = "rigidity.json";
};

void run_rigidity(const RigidityArgs& a, const Globals& g, Outputs& outs, std::ostream& out) {
  const auto cloud = load_cloud(a.cloud);
  ConicConfig cfg;
  cfg.tuple_budget = g.tuple_budget;
  const auto rep = rigidity_experiment(cloud, a.r, a.k, a.nu, a.seeds, g.seed, cfg);
  outs.write(a.out, to_json(rep).dump(2) + "\n");
  int kept = 0;
  for (const auto& run : rep.runs) kept += run.persisted;
  out << "margin " << g6(rep.margin) << ", nu " << g6(a.nu) << (rep.within_hypothesis ? "" : " (outside margin)")
      << ": certificate persisted in " << kept << "/" << rep.runs.size() << " runs\n";
}

struct OddmapArgs {
  int n = 2;
  int k = 0;
  double delta = 0.0;
  std::string centers = "known";
  int trials = 10'000;
  std::size_t points = 300;
  std::string cloud;
  int max_support = OddMapVerifyConfig{}.max_support;
  std::string out = "oddmap.json";
};

void run_oddmap(const OddmapArgs& a, const Globals& g, Outputs& outs, std::ostream& out) {
  CoverConfig cc;
  cc.seed = g.seed;
  const auto spec = make_oddmap_spec(a.n, a.delta, a.k, parse_center_source(a.centers), cc);
  const auto cloud = a.cloud.empty() ? sample_space(Ambient::sphere(a.n), a.points, SampleStrategy::uniform_random,
                                                    derive_seed(g.seed, "oddmap-cloud"))
                                     : load_cloud(a.cloud);
  OddMapVerifyConfig vc;
  vc.max_support = a.max_support;
  const auto rep = verify_oddmap(cloud, spec, a.trials, g.seed, vc);
  json j = to_json(rep);
  j["spec"] = to_json(spec);
  outs.write(a.out, j.dump(2) + "\n");
  out << rep.trials << " trials: min norm " << g6(rep.min_norm) << ", odd defect " << rep.max_odd_defect
      << ", violations " << rep.violations << ", origin hits " << rep.origin_hits << "\n";
}

struct IntervalArgs {
  int n = 1;
  int kmax = 7;
  std::string format = "csv";
  std::string source = "known";
  std::string out;
};

void run_intervals(const IntervalArgs& a, Outputs& outs, std::ostream& out) {
  const auto fmt = parse_report_format(a.format);
  const auto src = parse_cov_source(a.source);
  const std::string body = render_report(a.n, a.kmax, fmt, src);
  outs.write(a.out.empty() ? "intervals_n" + std::to_string(a.n) + "." + extension(fmt) : a.out, body);
  for (const auto& row : interval_table(a.n, a.kmax, src)) {
    out << "k=" << row.k << ": delta in [" << g6(row.delta_lo) << ", " << g6(row.delta_hi) << "), r in ("
        << g6(row.r_lo()) << ", " << g6(row.r_hi()) << "]";
    for (const auto& f : row.flags) out << ' ' << f;
    out << "\n";
  }
}

struct ReportArgs {
  int n = 1;
  int kmax = 7;
  std::string source = "known";
  std::vector<std::string> formats = {"csv", "svg", "json"};
  double epsilon = 0.0;
  std::vector<double> deltas;
  int starts = 4;  // solver effort for covering numbers beyond the tables
  int rounds = 20;
  std::string prefix;
};

void run_report(const ReportArgs& a, const Globals& g, Outputs& outs, std::ostream& out) {
  const auto src = parse_cov_source(a.source);
  const std::string prefix = a.prefix.empty() ? "intervals_n" + std::to_string(a.n) : a.prefix;
  for (const auto& f : a.formats) {
    const auto fmt = parse_report_format(f);
    outs.write(prefix + "." + extension(fmt), render_report(a.n, a.kmax, fmt, src));
  }
  if (a.n == 1) {
    json rows = json::array();
    for (const auto& row : s1_interval_table(a.kmax)) rows.push_back(to_json(row));
    outs.write(prefix + "_exact.json", json{{"rows", rows}}.dump(2) + "\n");
  }
  if (a.epsilon > 0.0) {
    const auto probe = infinite_change_probe(a.n, a.epsilon, a.kmax);
    outs.write(prefix + "_probe.json", to_json(probe).dump(2) + "\n");
    out << probe.intersecting.size() << " intervals meet delta < " << g6(a.epsilon) << "; " << probe.label << "\n";
  }
  if (!a.deltas.empty()) {
    CoverConfig cc;
    cc.seed = g.seed;
    cc.multistarts = a.starts;
    cc.anneal_rounds = a.rounds;
    json arr = json::array();
    for (double d : a.deltas) {
      const auto b = corollary1_bounds(a.n, d, 64, cc);
      arr.push_back(to_json(b));
      out << "delta " << g6(d) << ": " << (b.lower ? std::to_string(*b.lower) : "?") << " <= conn <= "
          << (b.upper ? std::to_string(*b.upper) : "?") << "\n";
    }
    outs.write(prefix + "_bounds.json", arr.dump(2) + "\n");
  }
  out << "wrote " << outs.written().size() << " files for n=" << a.n << ", k <= " << a.kmax << "\n";
}

struct AcceptArgs {
  std::string suite = "primary";
  std::vector<int> only;
  std::string out = "acceptance.json";
};

bool run_accept(const AcceptArgs& a, const Globals& g, Outputs& outs, std::ostream& out) {
  if (a.suite != "primary") throw PreconditionError("accept: unknown suite '" + a.suite + "'");
  AcceptanceOptions opt;
  opt.only = a.only;
  opt.seed = g.seed;
  const auto results = run_acceptance(opt, [&](const CriterionResult& r) { out << format_line(r) << std::endl; });
  const json j = to_json(results);
  outs.write(a.out, j.dump(2) + "\n");
  return j.at("all_pass").get<bool>();
}

}  // namespace

std::vector<std::string> expand_config(std::vector<std::string> args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  std::string path;
  if (it != args.end() && std::next(it) != args.end()) {
    path = *std::next(it);
  } else {
    for (const auto& a : args)
      if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  if (path.empty()) return args;
  json cfg = parse_json_file(path);
  // a manifest can be replayed directly
  if (cfg.is_object() && cfg.contains("tool") && cfg.contains("config")) cfg = cfg.at("config");
  if (!cfg.is_object()) throw PreconditionError(path + ": config must be a JSON object");
  static const std::vector<std::string> kSubcommands = {"cover",     "sample",    "vr",     "homology", "conic",
                                                        "rigidity",  "oddmap",    "intervals", "report", "accept"};
  const bool has_sub = std::any_of(args.begin(), args.end(), [](const std::string& a) {
    return std::find(kSubcommands.begin(), kSubcommands.end(), a) != kSubcommands.end();
  });
  auto given = [&](const std::string& key) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "subcommand" || key == "config" || given(key)) continue;
    if (key == "output-dir" && std::getenv(kOutputDirEnv)) continue;
    auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back("--" + key);
    } else if (value.is_array()) {
      if (value.empty()) continue;
      extra.push_back("--" + key);
      for (const auto& v : value) extra.push_back(text(v));
    } else if (!value.is_null()) {
      extra.push_back("--" + key);
      extra.push_back(text(value));
    }
  }
  if (!has_sub && cfg.contains("subcommand")) args.insert(args.begin(), cfg.at("subcommand").get<std::string>());
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vietoris-Rips complexes of spheres: covering radii, homology, conic certificates, odd maps"};
  app.name("vrs");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(VRS_VERSION));

  Globals g;
  app.add_option("--seed", g.seed, "root seed; every module derives a named child stream")->group("Global");
  app.add_option("--output-dir", g.output_dir, "directory for outputs (env " + std::string(kOutputDirEnv) + ")")
      ->group("Global");
  app.add_option("--max-simplices", g.max_simplices, "simplex ceiling for complex construction")->group("Global");
  app.add_option("--tuple-budget", g.tuple_budget, "subset budget for exhaustive conic checks")->group("Global");
  app.add_option("--mesh-tolerance", g.mesh_tolerance, "fail when the certification grid mesh exceeds this (rad)")
      ->group("Global");
  app.add_option("--config", g.config, "JSON file with option values keyed by long option name")->group("Global");

  CoverArgs cover;
  auto* c = app.add_subcommand("cover", "solve cov_X(k) with a certified radius");
  c->add_option("--ambient", cover.ambient, "s1, s2, s3, rp1, rp2, rp3");
  c->add_option("--k", cover.k, "number of centers")->check(CLI::PositiveNumber);
  c->add_option("--grid", cover.grid, "certification grid size (0: default for the ambient)");
  c->add_option("--starts", cover.starts, "independent multistarts")->check(CLI::PositiveNumber);
  c->add_option("--rounds", cover.rounds, "annealing rounds per start")->check(CLI::NonNegativeNumber);
  c->add_option("--kick-start", cover.kick_start, "initial annealing kick (rad)");
  c->add_option("--kick-end", cover.kick_end, "final annealing kick (rad)");
  c->add_flag("--table", cover.table, "compare the solver against every tabulated value (CSV)");
  c->add_option("--out", cover.out, "output file (default cover.json, or cover_table.csv with --table)");

  SampleArgs sample;
  auto* sa = app.add_subcommand("sample", "write a finite sample of S^n or RP^n");
  sa->add_option("--ambient", sample.ambient, "s1, s2, rp2, ...");
  sa->add_option("--count", sample.count, "number of points")->required()->check(CLI::PositiveNumber);
  sa->add_option("--strategy", sample.strategy, "uniform-random, evenly-spaced-circle, fibonacci-s2, grid");
  sa->add_option("--out", sample.out, "output cloud JSON");

  VrArgs vr;
  auto* v = app.add_subcommand("vr", "build the Vietoris-Rips complex of a cloud");
  v->add_option("--cloud", vr.cloud, "cloud JSON")->required();
  v->add_option("--r", vr.r, "scale; simplices have diameter < r")->required();
  v->add_option("--cap", vr.cap, "top simplex dimension")->check(CLI::NonNegativeNumber);
  v->add_option("--out", vr.out, "complex text file");

  HomologyArgs hom;
  auto* h = app.add_subcommand("homology", "reduced Z/2 Betti numbers and connectivity");
  h->add_option("--complex", hom.complex, "complex text file from vr");
  h->add_option("--cloud", hom.cloud, "cloud JSON (alternative to --complex)");
  h->add_option("--r", hom.r, "scale when building from --cloud");
  h->add_option("--cap", hom.cap, "top simplex dimension when building from --cloud");
  h->add_option("--out", hom.out, "output JSON");

  ConicArgs conic;
  auto* cn = app.add_subcommand("conic", "ball-intersection (conic) certificate");
  cn->add_option("--cloud", conic.cloud, "cloud JSON")->required();
  cn->add_option("--r", conic.r, "ball radius")->required();
  cn->add_option("--k", conic.k, "connectivity level; tuples of size 2k+2")->required();
  cn->add_option("--mode", conic.mode, "exhaustive or sampled");
  cn->add_option("--out", conic.out, "output JSON");

  RigidityArgs rig;
  auto* rg = app.add_subcommand("rigidity", "does a conic certificate survive perturbation?");
  rg->add_option("--cloud", rig.cloud, "cloud JSON")->required();
  rg->add_option("--r", rig.r, "ball radius")->required();
  rg->add_option("--k", rig.k, "connectivity level")->required();
  rg->add_option("--nu", rig.nu, "perturbation size (rad)")->required();
  rg->add_option("--seeds", rig.seeds, "number of perturbed clouds")->check(CLI::PositiveNumber);
  rg->add_option("--out", rig.out, "output JSON");

  OddmapArgs odd;
  auto* od = app.add_subcommand("oddmap", "verify the odd map into S^(k-1) on random simplices");
  od->add_option("--n", odd.n, "sphere dimension")->check(CLI::PositiveNumber);
  od->add_option("--k", odd.k, "number of projective centers")->required();
  od->add_option("--delta", odd.delta, "complex scale is pi - delta")->required();
  od->add_option("--centers", odd.centers, "known or solved");
  od->add_option("--trials", odd.trials, "random weighted simplices")->check(CLI::PositiveNumber);
  od->add_option("--points", odd.points, "size of the sampled cloud when --cloud is absent");
  od->add_option("--cloud", odd.cloud, "cloud JSON on S^n");
  od->add_option("--max-support", odd.max_support, "largest simplex size drawn");
  od->add_option("--out", odd.out, "output JSON");

  IntervalArgs iv;
  auto* in = app.add_subcommand("intervals", "delta intervals allowing conn = k - 1");
  in->add_option("--n", iv.n, "sphere dimension")->check(CLI::PositiveNumber);
  in->add_option("--kmax", iv.kmax, "largest k")->check(CLI::PositiveNumber);
  in->add_option("--format", iv.format, "csv, json or svg");
  in->add_option("--source", iv.source, "known or solved covering radii");
  in->add_option("--out", iv.out, "output file (default intervals_n<n>.<ext>)");

  ReportArgs rep;
  auto* rp = app.add_subcommand("report", "interval figure data in every format, plus optional probes");
  rp->add_option("--n", rep.n, "sphere dimension")->check(CLI::PositiveNumber);
  rp->add_option("--kmax", rep.kmax, "largest k")->check(CLI::PositiveNumber);
  rp->add_option("--source", rep.source, "known or solved covering radii");
  rp->add_option("--formats", rep.formats, "subset of csv, svg, json")->delimiter(',');
  rp->add_option("--epsilon", rep.epsilon, "also list intervals meeting delta < epsilon");
  rp->add_option("--delta", rep.deltas, "connectivity brackets from covering numbers at these deltas")
      ->delimiter(',');
  rp->add_option("--starts", rep.starts, "solver multistarts for covering numbers with --delta")
      ->check(CLI::PositiveNumber);
  rp->add_option("--rounds", rep.rounds, "solver annealing rounds with --delta")->check(CLI::NonNegativeNumber);
  rp->add_option("--prefix", rep.prefix, "file name prefix (default intervals_n<n>)");

  AcceptArgs acc;
  auto* ac = app.add_subcommand("accept", "run the acceptance suite");
  ac->add_option("--suite", acc.suite, "primary");
  ac->add_option("--only", acc.only, "criterion ids to run")->delimiter(',');
  ac->add_option("--out", acc.out, "output JSON");

  try {
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  fs::path dir = ".";
  if (app.get_option("--output-dir")->count() > 0) {
    dir = g.output_dir;
  } else if (const char* env = std::getenv(kOutputDirEnv)) {
    dir = env;
  } else if (!g.output_dir.empty()) {
    dir = g.output_dir;
  }
  Outputs outs(dir);

  const auto t0 = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    const std::string name = sub->get_name();
    if (name == "cover") run_cover(cover, g, outs, out);
    else if (name == "sample") run_sample(sample, g, outs, out);
    else if (name == "vr") run_vr(vr, g, outs, out);
    else if (name == "homology") run_homology(hom, g, outs, out);
    else if (name == "conic") run_conic(conic, g, outs, out);
    else if (name == "rigidity") run_rigidity(rig, g, outs, out);
    else if (name == "oddmap") run_oddmap(odd, g, outs, out);
    else if (name == "intervals") run_intervals(iv, outs, out);
    else if (name == "report") run_report(rep, g, outs, out);
    else if (name == "accept") code = run_accept(acc, g, outs, out) ? kExitOk : kExitComputation;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kExitComputation;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json config;
  config["subcommand"] = sub->get_name();
  echo_options(app, config);
  echo_options(*sub, config);
  config.erase("version");
  config["output-dir"] = dir.string();
  const json manifest = {{"tool", "vrs"},
                         {"version", VRS_VERSION},
                         {"config", config},
                         {"outputs", outs.written()},
                         {"exit_code", code},
                         {"wall_time_seconds", wall}};
  try {
    // next to the first output
    if (outs.written().empty())
      Outputs(dir).write(sub->get_name() + ".manifest.json", manifest.dump(2) + "\n");
    else
      Outputs(".").write(outs.written().front() + ".manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return code;
}

}  // namespace vrs::tools
