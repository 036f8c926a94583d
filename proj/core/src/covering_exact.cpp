// Exact covering radius of a finite center set on S^n / RP^n.
//
// The farthest point v* from a center set C is a local maximum of
// g(v) = min_c d(v, c).  With S the centers at minimal distance, optimality
// forces sum lambda_i c_i = t v* for some lambda in the simplex, and by
// Caratheodory S can be taken affinely independent with |S| <= n+1.  Then v*
// is orthogonal to every difference c_i - c_j and lies in span(S), so it is
// +/- the foot of the perpendicular from the origin onto aff(S).  The
// remaining case t = 0 (g* = pi/2 with the origin in conv(S)) is an extreme
// ray of the polar cone: orthogonal to n independent centers, or to the whole
// span when the centers are rank deficient.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "detail/exact.hpp"
#include "vrs/covering.hpp"
#include "vrs/error.hpp"

namespace vrs {

namespace {

using detail::Vec;

double vdot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Solves the m x m system in place (row-major); false when singular.
bool solve_small(std::vector<double>& a, std::vector<double>& b, std::size_t m) {
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return m == 0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r * m + col]) > std::abs(a[piv * m + col])) piv = r;
    if (std::abs(a[piv * m + col]) < 1e-12 * scale) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < m; ++c) std::swap(a[col * m + c], a[piv * m + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r * m + col] / a[col * m + col];
      for (std::size_t c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = m; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < m; ++c) s -= a[i * m + c] * b[c];
    b[i] = s / a[i * m + i];
  }
  return true;
}

}  // namespace

namespace detail {

// Closest point to the origin on the affine hull of the given vectors.
std::optional<Foot> affine_foot(const std::vector<const Vec*>& pts) {
  const std::size_t m = pts.size() - 1;
  const Vec& p0 = *pts[0];
  const std::size_t dim = p0.size();
  std::vector<Vec> d(m, Vec(dim));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < dim; ++c) d[i][c] = (*pts[i + 1])[c] - p0[c];
  std::vector<double> g(m * m), rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) g[i * m + j] = vdot(d[i], d[j]);
    rhs[i] = -vdot(d[i], p0);
  }
  if (!solve_small(g, rhs, m)) return std::nullopt;
  Foot f{p0, Vec(m + 1)};
  double lead = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < dim; ++c) f.point[c] += rhs[i] * d[i][c];
    f.weights[i + 1] = rhs[i];
    lead -= rhs[i];
  }
  f.weights[0] = lead;
  return f;
}

}  // namespace detail

namespace {

using detail::affine_foot;

// Orthonormal basis of span(vectors) by modified Gram-Schmidt.
std::vector<Vec> orthonormal_basis(const std::vector<const Vec*>& vs) {
  std::vector<Vec> basis;
  for (const Vec* v : vs) {
    Vec w = *v;
    for (const Vec& b : basis) {
      const double p = vdot(w, b);
      for (std::size_t c = 0; c < w.size(); ++c) w[c] -= p * b[c];
    }
    const double norm = std::sqrt(vdot(w, w));
    if (norm > 1e-10) {
      for (double& c : w) c /= norm;
      basis.push_back(std::move(w));
    }
  }
  return basis;
}

// A unit vector orthogonal to the orthonormal `basis` (which must not span).
Vec complement_vector(const std::vector<Vec>& basis, std::size_t dim) {
  Vec best;
  double best_norm = -1.0;
  for (std::size_t e = 0; e < dim; ++e) {
    Vec w(dim, 0.0);
    w[e] = 1.0;
    for (const Vec& b : basis) {
      const double p = vdot(w, b);
      for (std::size_t c = 0; c < dim; ++c) w[c] -= p * b[c];
    }
    const double norm = std::sqrt(vdot(w, w));
    if (norm > best_norm) {
      best_norm = norm;
      best = std::move(w);
    }
  }
  for (double& c : best) c /= best_norm;
  return best;
}

template <class Visit>
void for_each_subset(std::size_t n, std::size_t size, Visit&& visit) {
  if (size == 0 || size > n) return;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  for (;;) {
    visit(idx);
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void push_unit(std::vector<SpherePoint>& out, const Vec& v) {
  out.emplace_back(v);
  Vec neg = v;
  for (double& c : neg) c = -c;
  out.emplace_back(std::move(neg));
}

// On S^2 the candidates have closed forms: +/- each center, +/- normalized
// pair midpoints and cross products, +/- triangle normals.  Returns false when
// the centers do not span R^3 so the caller takes the general path.
template <class Emit>
bool candidates3(std::span<const SpherePoint> centers, Emit&& emit) {
  using V3 = std::array<double, 3>;
  std::vector<V3> p;
  p.reserve(centers.size());
  for (const auto& c : centers) p.push_back({c[0], c[1], c[2]});
  auto cross = [](const V3& a, const V3& b) {
    return V3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  auto emit_unit = [&](V3 v) {
    const double n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    if (n2 < 1e-24) return;
    const double inv = 1.0 / std::sqrt(n2);
    for (double& c : v) c *= inv;
    emit(v);
    emit(V3{-v[0], -v[1], -v[2]});
  };
  const std::size_t m = p.size();
  bool spans = false;
  for (std::size_t i = 0; i < m; ++i) {
    emit_unit(p[i]);
    for (std::size_t j = i + 1; j < m; ++j) {
      emit_unit({p[i][0] + p[j][0], p[i][1] + p[j][1], p[i][2] + p[j][2]});
      const V3 ij = cross(p[i], p[j]);
      emit_unit(ij);
      const V3 d1{p[j][0] - p[i][0], p[j][1] - p[i][1], p[j][2] - p[i][2]};
      for (std::size_t l = j + 1; l < m; ++l) {
        const V3 d2{p[l][0] - p[i][0], p[l][1] - p[i][1], p[l][2] - p[i][2]};
        emit_unit(cross(d1, d2));
        if (!spans && std::abs(ij[0] * p[l][0] + ij[1] * p[l][1] + ij[2] * p[l][2]) > 1e-9) spans = true;
      }
    }
  }
  return spans;
}

}  // namespace

std::vector<SpherePoint> voronoi_candidates(std::span<const SpherePoint> sphere_centers) {
  std::vector<SpherePoint> out;
  if (sphere_centers.empty()) return out;
  const std::size_t dim = sphere_centers.front().ambient_size();
  if (dim == 3) {
    if (candidates3(sphere_centers, [&](const auto& v) { out.emplace_back(std::vector<double>(v.begin(), v.end())); }))
      return out;
    out.clear();
  }
  const std::size_t count = sphere_centers.size();
  std::vector<Vec> vs;
  vs.reserve(count);
  for (const auto& c : sphere_centers) vs.emplace_back(c.coords().begin(), c.coords().end());

  std::vector<const Vec*> sel;
  for (std::size_t size = 1; size <= std::min(dim, count); ++size) {
    for_each_subset(count, size, [&](const std::vector<std::size_t>& idx) {
      sel.clear();
      for (std::size_t i : idx) sel.push_back(&vs[i]);
      if (auto foot = affine_foot(sel)) {
        const double norm = std::sqrt(vdot(foot->point, foot->point));
        if (norm > 1e-12) {
          for (double& c : foot->point) c /= norm;
          push_unit(out, foot->point);
        }
      }
      if (size + 1 == dim) {
        const auto basis = orthonormal_basis(sel);
        if (basis.size() == size) push_unit(out, complement_vector(basis, dim));
      }
    });
  }
  std::vector<const Vec*> all;
  for (const Vec& v : vs) all.push_back(&v);
  const auto basis = orthonormal_basis(all);
  if (basis.size() < dim) push_unit(out, complement_vector(basis, dim));
  return out;
}

namespace {

// 2 atan2(|u - v|, |u + v|); acos of the dot loses about 1e-8 near 0 and pi
template<class V>
double precise_distance(const V& u, const SpherePoint& c) {
  double minus = 0.0, plus = 0.0;
  for (std::size_t i = 0; i < c.ambient_size(); ++i) {
    minus += (u[i] - c[i]) * (u[i] - c[i]);
    plus += (u[i] + c[i]) * (u[i] + c[i]);
  }
  return 2.0 * std::atan2(std::sqrt(minus), std::sqrt(plus));
}

template<class V>
double nearest_distance(const V& u, std::span<const SpherePoint> centers) {
  double best = kPi;
  for (const auto& c : centers) best = std::min(best, precise_distance(u, c));
  return best;
}

}  // namespace

double exact_covering_radius(Ambient ambient, std::span<const SpherePoint> centers) {
  if (!ambient.geodesic()) throw PreconditionError("exact_covering_radius needs a geodesic ambient");
  if (centers.empty()) throw PreconditionError("exact_covering_radius: no centers");
  std::vector<SpherePoint> lifted(centers.begin(), centers.end());
  if (ambient.kind == AmbientKind::projective)
    for (const auto& c : centers) lifted.push_back(c.antipode());
  double worst = 1.0;  // smallest best-cosine over candidates
  if (lifted.front().ambient_size() == 3) {
    std::vector<std::array<double, 3>> p;
    for (const auto& c : lifted) p.push_back({c[0], c[1], c[2]});
    std::array<double, 3> far{};
    const bool spans = candidates3(lifted, [&](const std::array<double, 3>& v) {
      double best = -1.0;
      for (const auto& c : p) {
        const double d = v[0] * c[0] + v[1] * c[1] + v[2] * c[2];
        if (d >= worst) return;  // cannot lower worst
        best = std::max(best, d);
      }
      worst = best;
      far = v;
    });
    if (spans) return worst < 1.0 ? nearest_distance(far, lifted) : 0.0;
    worst = 1.0;
  }
  const SpherePoint* far = nullptr;
  const auto candidates = voronoi_candidates(lifted);
  for (const auto& v : candidates) {
    double best = -1.0;
    for (const auto& c : lifted) {
      best = std::max(best, dot(v, c));
      if (best >= worst) break;
    }
    if (best < worst) {
      worst = best;
      far = &v;
    }
  }
  return far ? nearest_distance(*far, lifted) : 0.0;
}

std::optional<SpherePoint> minimax_center(std::span<const SpherePoint> points) {
  if (points.empty()) return std::nullopt;
  const std::size_t dim = points.front().ambient_size();
  std::vector<Vec> vs;
  for (const auto& p : points) vs.emplace_back(p.coords().begin(), p.coords().end());
  double best_norm = std::numeric_limits<double>::infinity();
  Vec best;
  std::vector<const Vec*> sel;
  for (std::size_t size = 1; size <= std::min(dim, vs.size()); ++size) {
    for_each_subset(vs.size(), size, [&](const std::vector<std::size_t>& idx) {
      sel.clear();
      for (std::size_t i : idx) sel.push_back(&vs[i]);
      auto foot = affine_foot(sel);
      if (!foot) return;
      for (double w : foot->weights)
        if (w < -1e-12) return;
      const double norm = std::sqrt(vdot(foot->point, foot->point));
      if (norm < best_norm) {
        best_norm = norm;
        best = std::move(foot->point);
      }
    });
  }
  if (best.empty() || best_norm < 1e-10) return std::nullopt;
  return SpherePoint(std::move(best));
}

}  // namespace vrs
