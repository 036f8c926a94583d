#include "vrs/complex.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "vrs/error.hpp"

namespace vrs {

VRComplex::VRComplex(Trusted, double scale, int dim_cap, std::size_t vertex_count,
                     std::vector<std::vector<Vertex>> simplices)
    : scale_(scale), dim_cap_(dim_cap), vertex_count_(vertex_count), flat_(std::move(simplices)) {
  flat_.resize(static_cast<std::size_t>(dim_cap_) + 1);
}

VRComplex::VRComplex(double scale, int dim_cap, std::size_t vertex_count,
                     std::vector<std::vector<Vertex>> simplices)
    : scale_(scale), dim_cap_(dim_cap), vertex_count_(vertex_count), flat_(std::move(simplices)) {
  if (dim_cap_ < 0) throw PreconditionError("dim_cap must be nonnegative");
  flat_.resize(static_cast<std::size_t>(dim_cap_) + 1);
  for (int d = 0; d <= dim_cap_; ++d) {
    const auto width = static_cast<std::size_t>(d) + 1;
    const auto& f = flat_[static_cast<std::size_t>(d)];
    if (f.size() % width != 0) throw PreconditionError("ragged simplex array");
    for (std::size_t s = 0; s * width < f.size(); ++s) {
      auto cur = simplex(d, s);
      for (std::size_t i = 0; i < width; ++i) {
        if (cur[i] >= vertex_count_) throw PreconditionError("simplex vertex out of range");
        if (i > 0 && cur[i] <= cur[i - 1]) throw PreconditionError("simplex vertices must be strictly increasing");
      }
      if (s > 0) {
        auto prev = simplex(d, s - 1);
        if (!std::lexicographical_compare(prev.begin(), prev.end(), cur.begin(), cur.end()))
          throw PreconditionError("simplices must be sorted and duplicate-free");
      }
    }
  }
  // downward closure
  std::vector<Vertex> face;
  for (int d = 1; d <= dim_cap_; ++d) {
    for (std::size_t s = 0; s < count(d); ++s) {
      auto sigma = simplex(d, s);
      for (std::size_t drop = 0; drop < sigma.size(); ++drop) {
        face.clear();
        for (std::size_t i = 0; i < sigma.size(); ++i)
          if (i != drop) face.push_back(sigma[i]);
        if (!index_of(face)) throw PreconditionError("complex is not downward closed");
      }
    }
  }
}

std::size_t VRComplex::count(int dim) const {
  if (dim < 0 || dim >= stored_dimensions()) return 0;
  return flat_[static_cast<std::size_t>(dim)].size() / (static_cast<std::size_t>(dim) + 1);
}

std::span<const Vertex> VRComplex::flat(int dim) const {
  if (dim < 0 || dim >= stored_dimensions()) return {};
  return flat_[static_cast<std::size_t>(dim)];
}

std::span<const Vertex> VRComplex::simplex(int dim, std::size_t index) const {
  const auto width = static_cast<std::size_t>(dim) + 1;
  return flat(dim).subspan(index * width, width);
}

std::optional<std::size_t> VRComplex::index_of(std::span<const Vertex> sigma) const {
  if (sigma.empty()) return std::nullopt;
  const int dim = static_cast<int>(sigma.size()) - 1;
  if (dim >= stored_dimensions()) return std::nullopt;
  std::size_t lo = 0;
  std::size_t hi = count(dim);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    auto m = simplex(dim, mid);
    if (std::lexicographical_compare(m.begin(), m.end(), sigma.begin(), sigma.end())) lo = mid + 1;
    else hi = mid;
  }
  if (lo < count(dim) && std::ranges::equal(simplex(dim, lo), sigma)) return lo;
  return std::nullopt;
}

int VRComplex::top_dimension() const {
  for (int d = stored_dimensions() - 1; d >= 0; --d)
    if (count(d) > 0) return d;
  return -1;
}

std::size_t VRComplex::total_simplices() const {
  std::size_t total = 0;
  for (int d = 0; d < stored_dimensions(); ++d) total += count(d);
  return total;
}

// ---------------------------------------------------------------------------

namespace {

// Depth-first flag expansion.  Each simplex carries the sorted list of
// vertices adjacent to all of its members and larger than its last vertex;
// children append one of them.  Visiting children in increasing order emits
// every dimension in lexicographic order.
class FlagExpander {
 public:
  FlagExpander(std::vector<std::vector<Vertex>> upper, int dim_cap, std::size_t ceiling)
      : upper_(std::move(upper)), dim_cap_(dim_cap), ceiling_(ceiling),
        out_(static_cast<std::size_t>(dim_cap) + 1), stack_(static_cast<std::size_t>(dim_cap) + 2) {}

  std::vector<std::vector<Vertex>> run() {
    for (Vertex v = 0; v < upper_.size(); ++v) {
      prefix_.assign(1, v);
      emit();
      if (dim_cap_ > 0) expand(upper_[v], 1);
    }
    return std::move(out_);
  }

 private:
  void emit() {
    if (++total_ > ceiling_)
      throw ResourceLimitError("Vietoris-Rips complex exceeds the simplex ceiling of " + std::to_string(ceiling_) +
                               " (raise max_simplices or lower dim_cap / scale)");
    auto& f = out_[prefix_.size() - 1];
    f.insert(f.end(), prefix_.begin(), prefix_.end());
  }

  void expand(const std::vector<Vertex>& candidates, std::size_t depth) {
    auto& next = stack_[depth];
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const Vertex v = candidates[i];
      prefix_.push_back(v);
      emit();
      if (static_cast<int>(depth) < dim_cap_) {
        next.clear();
        const auto& nv = upper_[v];
        std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1, candidates.end(),
                              nv.begin(), nv.end(), std::back_inserter(next));
        if (!next.empty()) {
          // deeper calls only touch stack_[depth + 1] and beyond
          expand(next, depth + 1);
        }
      }
      prefix_.pop_back();
    }
  }

  std::vector<std::vector<Vertex>> upper_;
  int dim_cap_;
  std::size_t ceiling_;
  std::size_t total_ = 0;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> stack_;
  std::vector<Vertex> prefix_;
};

}  // namespace

VRComplex build_vr(const FinitePointCloud& cloud, double r, int dim_cap, const BuildOptions& options) {
  if (!(r > 0.0)) throw PreconditionError("build_vr: scale must be positive");
  if (dim_cap < 0) throw PreconditionError("build_vr: dim_cap must be nonnegative");
  const std::size_t n = cloud.size();
  std::vector<std::vector<Vertex>> upper(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (cloud.dist(i, j) < r) upper[i].push_back(static_cast<Vertex>(j));
  FlagExpander expander(std::move(upper), dim_cap, options.max_simplices);
  auto flat = expander.run();
  return VRComplex(VRComplex::Trusted{}, r, dim_cap, n, std::move(flat));
}

double simplex_diameter(std::span<const Vertex> simplex, const FinitePointCloud& cloud) {
  if (simplex.empty()) throw PreconditionError("simplex_diameter: empty simplex");
  double diam = 0.0;
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    if (simplex[i] >= cloud.size()) throw PreconditionError("simplex_diameter: vertex out of range");
    for (std::size_t j = i + 1; j < simplex.size(); ++j) diam = std::max(diam, cloud.dist(simplex[i], simplex[j]));
  }
  return diam;
}

std::vector<std::size_t> f_vector(const VRComplex& complex) {
  std::vector<std::size_t> f;
  for (int d = 0; d <= complex.top_dimension(); ++d) f.push_back(complex.count(d));
  return f;
}

void write_complex(std::ostream& os, const VRComplex& complex) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", complex.scale());
  os << "# vrs-complex scale=" << buf << " cap=" << complex.dim_cap() << " vertices=" << complex.vertex_count()
     << '\n';
  for (int d = 0; d < complex.stored_dimensions(); ++d) {
    for (std::size_t s = 0; s < complex.count(d); ++s) {
      os << d;
      for (Vertex v : complex.simplex(d, s)) os << ' ' << v;
      os << '\n';
    }
  }
}

VRComplex read_complex(std::istream& is) {
  std::string line;
  double scale = 0.0;
  int cap = -1;
  std::size_t vertices = 0;
  bool header = false;
  std::vector<std::vector<Vertex>> flat;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string tok;
      while (hs >> tok) {
        if (tok.starts_with("scale=")) scale = std::stod(tok.substr(6));
        else if (tok.starts_with("cap=")) cap = std::stoi(tok.substr(4));
        else if (tok.starts_with("vertices=")) vertices = std::stoull(tok.substr(9));
      }
      header = header || line.find("vrs-complex") != std::string::npos;
      continue;
    }
    std::istringstream ls(line);
    int dim = -1;
    if (!(ls >> dim) || dim < 0) throw PreconditionError("complex file line " + std::to_string(lineno) + ": bad dimension");
    if (flat.size() <= static_cast<std::size_t>(dim)) flat.resize(static_cast<std::size_t>(dim) + 1);
    std::size_t read = 0;
    long long v = 0;
    while (ls >> v) {
      if (v < 0) throw PreconditionError("complex file line " + std::to_string(lineno) + ": negative vertex");
      flat[static_cast<std::size_t>(dim)].push_back(static_cast<Vertex>(v));
      if (!header) vertices = std::max(vertices, static_cast<std::size_t>(v) + 1);
      ++read;
    }
    if (read != static_cast<std::size_t>(dim) + 1)
      throw PreconditionError("complex file line " + std::to_string(lineno) + ": expected " + std::to_string(dim + 1) +
                              " vertices");
  }
  if (cap < 0) cap = flat.empty() ? 0 : static_cast<int>(flat.size()) - 1;
  if (flat.size() > static_cast<std::size_t>(cap) + 1) throw PreconditionError("complex file exceeds its declared cap");
  return VRComplex(scale, cap, vertices, std::move(flat));
}

}  // namespace vrs
