#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tweetpol {

/// Sparse real vector with sorted, unique indices and no stored zeros.
class SparseVector {
 public:
  using Index = std::uint32_t;

  SparseVector() = default;
  explicit SparseVector(Index dim) : dim_(dim) {}

  /// Sorts entries; zero weights are dropped. Throws InvalidArgument on an
  /// out-of-range or repeated index.
  static SparseVector from_entries(Index dim, std::vector<std::pair<Index, double>> entries);

  /// Keeps the nonzero coordinates of a dense vector.
  static SparseVector from_dense(std::span<const double> dense);

  Index dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }

  std::span<const Index> indices() const noexcept { return indices_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Stored weight at `index`, 0 when absent.
  double at(Index index) const noexcept;

  std::vector<double> to_dense() const;
  double squared_norm() const;

  /// Multiplies every stored weight; factor must be nonzero.
  void scale(double factor);

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  Index dim_ = 0;
  std::vector<Index> indices_;
  std::vector<double> values_;
};

/// Sparse-sparse inner product (sorted merge).
double sparse_dot(const SparseVector& a, const SparseVector& b);

}  // namespace tweetpol
