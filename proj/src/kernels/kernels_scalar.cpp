#include "tweetpol/kernels.hpp"

namespace tweetpol::kernels::scalar {

double gather_dot(const double* values, const std::uint32_t* indices, std::size_t nnz,
                  const double* dense) {
  double sum = 0.0;
  for (std::size_t k = 0; k < nnz; ++k) sum += values[k] * dense[indices[k]];
  return sum;
}

void scatter_axpy(double alpha, const double* values, const std::uint32_t* indices,
                  std::size_t nnz, double* dense) {
  for (std::size_t k = 0; k < nnz; ++k) dense[indices[k]] += alpha * values[k];
}

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double sum_squares(const double* x, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i] * x[i];
  return sum;
}

void scale(double* x, std::size_t n, double factor) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= factor;
}

}  // namespace tweetpol::kernels::scalar
