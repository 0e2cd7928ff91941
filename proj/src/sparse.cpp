#include "tweetpol/sparse.hpp"

#include <algorithm>
#include <string>

#include "tweetpol/error.hpp"
#include "tweetpol/kernels.hpp"

namespace tweetpol {

SparseVector SparseVector::from_entries(Index dim, std::vector<std::pair<Index, double>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector v(dim);
  v.indices_.reserve(entries.size());
  v.values_.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto [index, value] = entries[k];
    if (index >= dim) {
      throw Error(ErrorCode::InvalidArgument,
                  "index " + std::to_string(index) + " out of range for dim " + std::to_string(dim));
    }
    if (k > 0 && entries[k - 1].first == index) {
      throw Error(ErrorCode::InvalidArgument, "repeated index " + std::to_string(index));
    }
    if (value == 0.0) continue;
    v.indices_.push_back(index);
    v.values_.push_back(value);
  }
  return v;
}

SparseVector SparseVector::from_dense(std::span<const double> dense) {
  SparseVector v(static_cast<Index>(dense.size()));
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) {
      v.indices_.push_back(static_cast<Index>(i));
      v.values_.push_back(dense[i]);
    }
  }
  return v;
}

double SparseVector::at(Index index) const noexcept {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
  if (it == indices_.end() || *it != index) return 0.0;
  return values_[static_cast<std::size_t>(it - indices_.begin())];
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> dense(dim_, 0.0);
  for (std::size_t k = 0; k < indices_.size(); ++k) dense[indices_[k]] = values_[k];
  return dense;
}

double SparseVector::squared_norm() const { return kernels::sum_squares(values_); }

void SparseVector::scale(double factor) {
  if (factor == 0.0) throw Error(ErrorCode::InvalidArgument, "scaling by zero");
  kernels::scale(values_, factor);
}

double sparse_dot(const SparseVector& a, const SparseVector& b) {
  const auto ai = a.indices();
  const auto bi = b.indices();
  const auto av = a.values();
  const auto bv = b.values();
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ai.size() && j < bi.size()) {
    if (ai[i] < bi[j]) {
      ++i;
    } else if (bi[j] < ai[i]) {
      ++j;
    } else {
      sum += av[i++] * bv[j++];
    }
  }
  return sum;
}

}  // namespace tweetpol
