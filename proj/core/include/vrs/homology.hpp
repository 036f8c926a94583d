#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrs/complex.hpp"

namespace vrs {

/// Column-sparse matrix over Z/2.  Each column is a sorted list of row
/// indices holding a one.
class SparseBinaryMatrix {
 public:
  SparseBinaryMatrix() = default;
  SparseBinaryMatrix(std::size_t rows, std::vector<std::vector<std::uint32_t>> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const std::vector<std::uint32_t>& column(std::size_t j) const { return columns_[j]; }
  bool at(std::size_t i, std::size_t j) const;
  std::size_t nonzeros() const;

  /// Product over Z/2.
  SparseBinaryMatrix operator*(const SparseBinaryMatrix& rhs) const;
  bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<std::uint32_t>> columns_;
};

/// Boundary map from dim-simplices (columns) to (dim-1)-simplices (rows).
SparseBinaryMatrix boundary_matrix(const VRComplex& complex, int dim);

/// Rank over Z/2 by column reduction.
std::size_t rank_z2(const SparseBinaryMatrix& m);

struct HomologicalConnectivity {
  int value = -1;         // exact, or a lower bound when censored
  bool censored = false;  // every computed reduced Betti number vanished
  std::string to_string() const;
};

struct BettiProfile {
  std::vector<std::size_t> reduced_betti;  // dimensions 0 .. dim_cap-1
  int dim_cap = 0;
  HomologicalConnectivity connectivity;
  std::vector<std::size_t> ranks;          // rank of the boundary map out of dimension d
  std::vector<std::string> flags;
};

/// Reduced Z/2 Betti numbers of the complex in dimensions 0 .. dim_cap-1.
BettiProfile betti(const VRComplex& complex);

/// First nonvanishing reduced Betti number minus one; censored at
/// dim_cap-1 when all of them vanish.
HomologicalConnectivity homological_connectivity(const BettiProfile& profile);

/// Independent reference for small clouds: enumerates every vertex subset,
/// keeps those of diameter < r, and ranks dense boundary matrices by
/// Gaussian elimination.  Limited to 24 points.
std::vector<std::size_t> oracle_reduced_betti(const FinitePointCloud& cloud, double r, int dim_cap);

nlohmann::json to_json(const BettiProfile& profile);

}  // namespace vrs
