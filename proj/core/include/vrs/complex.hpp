#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "vrs/geometry.hpp"

namespace vrs {

using Vertex = std::uint32_t;

/// Vietoris-Rips flag complex at a fixed scale under the strict convention
/// diam(sigma) < scale.  Simplices of each dimension are stored as a flat,
/// lexicographically sorted array of strictly increasing vertex tuples.
class VRComplex {
 public:
  VRComplex() = default;
  /// `simplices[d]` is the flat array of d-simplices; validated (sorted,
  /// increasing, downward closed) on construction.
  VRComplex(double scale, int dim_cap, std::size_t vertex_count, std::vector<std::vector<Vertex>> simplices);

  /// Skips validation; for builders that emit sorted, closed output.
  struct Trusted {};
  VRComplex(Trusted, double scale, int dim_cap, std::size_t vertex_count, std::vector<std::vector<Vertex>> simplices);

  double scale() const { return scale_; }
  int dim_cap() const { return dim_cap_; }
  std::size_t vertex_count() const { return vertex_count_; }

  /// Number of stored dimensions (dim_cap + 1).
  int stored_dimensions() const { return static_cast<int>(flat_.size()); }
  std::size_t count(int dim) const;
  std::span<const Vertex> simplex(int dim, std::size_t index) const;
  std::span<const Vertex> flat(int dim) const;
  /// Index of `simplex` within its dimension, by binary search.
  std::optional<std::size_t> index_of(std::span<const Vertex> simplex) const;
  /// Highest dimension with at least one simplex; -1 when empty.
  int top_dimension() const;
  std::size_t total_simplices() const;

 private:
  double scale_ = 0.0;
  int dim_cap_ = 0;
  std::size_t vertex_count_ = 0;
  std::vector<std::vector<Vertex>> flat_;
};

struct BuildOptions {
  std::size_t max_simplices = 5'000'000;
};

/// Flag complex of the graph {d(i, j) < r} up to dimension `dim_cap`.
VRComplex build_vr(const FinitePointCloud& cloud, double r, int dim_cap = 4, const BuildOptions& options = {});

/// Largest pairwise distance inside `simplex`; 0 for a vertex.
double simplex_diameter(std::span<const Vertex> simplex, const FinitePointCloud& cloud);

/// Simplex counts by dimension, trailing zeros dropped.
std::vector<std::size_t> f_vector(const VRComplex& complex);

/// Plain-text export: a `#` header line, then one simplex per line as
/// "<dim> <v0> <v1> ...".
void write_complex(std::ostream& os, const VRComplex& complex);
VRComplex read_complex(std::istream& is);

}  // namespace vrs
