#include "vrs/homology.hpp"

#include <algorithm>
#include <bit>
#include <iterator>

#include "vrs/error.hpp"

namespace vrs {

SparseBinaryMatrix::SparseBinaryMatrix(std::size_t rows, std::vector<std::vector<std::uint32_t>> columns)
    : rows_(rows), columns_(std::move(columns)) {
  for (auto& c : columns_) {
    std::ranges::sort(c);
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw PreconditionError("duplicate row in column");
    if (!c.empty() && c.back() >= rows_) throw PreconditionError("row index out of range");
  }
}

bool SparseBinaryMatrix::at(std::size_t i, std::size_t j) const {
  const auto& c = columns_[j];
  return std::binary_search(c.begin(), c.end(), static_cast<std::uint32_t>(i));
}

std::size_t SparseBinaryMatrix::nonzeros() const {
  std::size_t nz = 0;
  for (const auto& c : columns_) nz += c.size();
  return nz;
}

bool SparseBinaryMatrix::is_zero() const {
  return std::ranges::all_of(columns_, [](const auto& c) { return c.empty(); });
}

SparseBinaryMatrix SparseBinaryMatrix::operator*(const SparseBinaryMatrix& rhs) const {
  if (cols() != rhs.rows()) throw PreconditionError("matrix shape mismatch");
  std::vector<std::vector<std::uint32_t>> out(rhs.cols());
  std::vector<std::uint8_t> acc(rows_, 0);
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    for (std::uint32_t k : rhs.column(j))
      for (std::uint32_t i : columns_[k]) acc[i] ^= 1;
    for (std::uint32_t k : rhs.column(j))
      for (std::uint32_t i : columns_[k])
        if (acc[i]) {
          out[j].push_back(i);
          acc[i] = 0;
        }
  }
  return SparseBinaryMatrix(rows_, std::move(out));
}

SparseBinaryMatrix boundary_matrix(const VRComplex& complex, int dim) {
  if (dim < 1 || dim > complex.dim_cap())
    throw PreconditionError("boundary_matrix: dimension " + std::to_string(dim) + " outside [1, " +
                            std::to_string(complex.dim_cap()) + "]");
  std::vector<std::vector<std::uint32_t>> cols(complex.count(dim));
  std::vector<Vertex> face;
  for (std::size_t s = 0; s < cols.size(); ++s) {
    auto sigma = complex.simplex(dim, s);
    for (std::size_t drop = 0; drop < sigma.size(); ++drop) {
      face.clear();
      for (std::size_t i = 0; i < sigma.size(); ++i)
        if (i != drop) face.push_back(sigma[i]);
      cols[s].push_back(static_cast<std::uint32_t>(*complex.index_of(face)));
    }
  }
  return SparseBinaryMatrix(complex.count(dim - 1), std::move(cols));
}

namespace {

constexpr std::uint32_t kNone = 0xffffffffu;

void add_into(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& source,
              std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

// Left-to-right reduction; returns the rank and records the pivot row of
// every nonzero reduced column in `pivots`.  Columns flagged in `cleared`
// are known to reduce to zero and are skipped.
std::size_t reduce(std::vector<std::vector<std::uint32_t>> cols, std::size_t rows,
                   const std::vector<bool>& cleared, std::vector<std::uint32_t>* pivots) {
  std::vector<std::uint32_t> owner(rows, kNone);
  std::vector<std::uint32_t> scratch;
  std::size_t rank = 0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (!cleared.empty() && cleared[j]) {
      cols[j].clear();
      continue;
    }
    auto& c = cols[j];
    while (!c.empty() && owner[c.back()] != kNone) add_into(c, cols[owner[c.back()]], scratch);
    if (!c.empty()) {
      owner[c.back()] = static_cast<std::uint32_t>(j);
      if (pivots) pivots->push_back(c.back());
      ++rank;
    }
  }
  return rank;
}

}  // namespace

std::size_t rank_z2(const SparseBinaryMatrix& m) {
  std::vector<std::vector<std::uint32_t>> cols;
  cols.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return reduce(std::move(cols), m.rows(), {}, nullptr);
}

std::string HomologicalConnectivity::to_string() const {
  return censored ? "at least " + std::to_string(value) + " (censored)" : std::to_string(value);
}

BettiProfile betti(const VRComplex& complex) {
  if (complex.dim_cap() < 1) throw PreconditionError("betti: complex must be built with dim_cap >= 1");
  if (complex.vertex_count() == 0 || complex.count(0) == 0) throw PreconditionError("betti: empty complex");
  const int cap = complex.dim_cap();
  std::vector<std::size_t> rank(static_cast<std::size_t>(cap) + 2, 0);
  std::vector<bool> cleared;
  // Top-down so each pivot row of the boundary out of dimension d marks a
  // (d-1)-simplex whose own column must reduce to zero.
  for (int d = cap; d >= 1; --d) {
    auto m = boundary_matrix(complex, d);
    std::vector<std::vector<std::uint32_t>> cols;
    cols.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
    std::vector<std::uint32_t> pivots;
    rank[static_cast<std::size_t>(d)] = reduce(std::move(cols), m.rows(), cleared, &pivots);
    cleared.assign(complex.count(d - 1), false);
    for (std::uint32_t p : pivots) cleared[p] = true;
  }
  BettiProfile out;
  out.dim_cap = cap;
  out.ranks.assign(rank.begin(), rank.begin() + cap + 1);
  for (int d = 0; d < cap; ++d) {
    const auto ud = static_cast<std::size_t>(d);
    std::size_t b = complex.count(d) - rank[ud] - rank[ud + 1];
    if (d == 0) b -= 1;
    out.reduced_betti.push_back(b);
  }
  out.flags.push_back("reduced_betti[" + std::to_string(cap - 1) + "] may be affected by the dimension cap");
  out.flags.push_back("homological connectivity is a proxy for homotopy connectivity");
  out.connectivity = homological_connectivity(out);
  return out;
}

HomologicalConnectivity homological_connectivity(const BettiProfile& profile) {
  for (std::size_t i = 0; i < profile.reduced_betti.size(); ++i)
    if (profile.reduced_betti[i] != 0) return {static_cast<int>(i) - 1, false};
  return {profile.dim_cap - 1, true};
}

// ---------------------------------------------------------------------------

namespace {

// Rank over Z/2 of a dense matrix whose rows are bit masks.
std::size_t dense_rank(std::vector<std::uint64_t> rows) {
  std::size_t rank = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const std::uint64_t mask = std::uint64_t{1} << bit;
    auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                           [&](std::uint64_t r) { return (r & mask) != 0; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(rank), it);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && (rows[i] & mask)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

// Dense rank for matrices wider than 64 columns: rows as vectors of words.
std::size_t dense_rank_wide(std::vector<std::vector<std::uint64_t>> rows, std::size_t ncols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < rows.size() && !(rows[piv][w] & mask)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && (rows[i][w] & mask))
        for (std::size_t k = 0; k < rows[i].size(); ++k) rows[i][k] ^= rows[rank][k];
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<std::size_t> oracle_reduced_betti(const FinitePointCloud& cloud, double r, int dim_cap) {
  const std::size_t n = cloud.size();
  if (n == 0 || n > 24) throw PreconditionError("oracle_reduced_betti: needs 1..24 points");
  if (dim_cap < 1) throw PreconditionError("oracle_reduced_betti: dim_cap must be >= 1");
  // simplices[d] = bit masks of d-simplices, in increasing mask order
  std::vector<std::vector<std::uint32_t>> simplices(static_cast<std::size_t>(dim_cap) + 1);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    const int d = std::popcount(mask) - 1;
    if (d > dim_cap) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> j & 1) && !(cloud.dist(i, j) < r)) ok = false;
    }
    if (ok) simplices[static_cast<std::size_t>(d)].push_back(mask);
  }
  std::vector<std::size_t> rank(static_cast<std::size_t>(dim_cap) + 2, 0);
  for (int d = 1; d <= dim_cap; ++d) {
    const auto& cols = simplices[static_cast<std::size_t>(d)];
    const auto& rowset = simplices[static_cast<std::size_t>(d) - 1];
    // transpose: one dense row per d-simplex, bits indexed by faces
    const std::size_t words = (rowset.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::uint32_t sigma : cols) {
      std::vector<std::uint64_t> row(words, 0);
      for (std::size_t f = 0; f < rowset.size(); ++f) {
        const std::uint32_t face = rowset[f];
        if ((face & sigma) == face) row[f / 64] |= std::uint64_t{1} << (f % 64);
      }
      rows.push_back(std::move(row));
    }
    if (words == 1) {
      std::vector<std::uint64_t> narrow;
      for (auto& row : rows) narrow.push_back(row[0]);
      rank[static_cast<std::size_t>(d)] = dense_rank(std::move(narrow));
    } else {
      rank[static_cast<std::size_t>(d)] = dense_rank_wide(std::move(rows), rowset.size());
    }
  }
  std::vector<std::size_t> out;
  for (int d = 0; d < dim_cap; ++d) {
    const auto ud = static_cast<std::size_t>(d);
    std::size_t b = simplices[ud].size() - rank[ud] - rank[ud + 1];
    out.push_back(d == 0 ? b - 1 : b);
  }
  return out;
}

nlohmann::json to_json(const BettiProfile& p) {
  nlohmann::json j;
  j["reduced_betti"] = p.reduced_betti;
  j["dim_cap"] = p.dim_cap;
  j["connectivity"] = p.connectivity.value;
  j["censored"] = p.connectivity.censored;
  j["connectivity_text"] = p.connectivity.to_string();
  j["ranks"] = p.ranks;
  j["flags"] = p.flags;
  return j;
}

}  // namespace vrs
