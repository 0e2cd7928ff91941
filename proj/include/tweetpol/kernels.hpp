#pragma once

// Numeric inner loops shared by the vectorizer and the classifier.
//
// Every kernel has a scalar reference implementation; an AVX2/FMA variant is
// compiled into its own translation unit and selected at runtime when the CPU
// supports it. Setting TWEETPOL_SIMD=scalar in the environment forces the
// reference path. Vector variants reassociate sums, so results agree with the
// scalar path to rounding, not bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>

namespace tweetpol::kernels {

struct KernelTable {
  const char* name;
  // sum_k values[k] * dense[indices[k]]
  double (*gather_dot)(const double* values, const std::uint32_t* indices, std::size_t nnz,
                       const double* dense);
  // dense[indices[k]] += alpha * values[k]
  void (*scatter_axpy)(double alpha, const double* values, const std::uint32_t* indices,
                       std::size_t nnz, double* dense);
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  void (*scale)(double* x, std::size_t n, double factor);
};

const KernelTable& scalar_table() noexcept;

// nullptr when the build has no AVX2 variant or the running CPU lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;

// Table used by the library; resolved once.
const KernelTable& active() noexcept;

inline double gather_dot(std::span<const double> values, std::span<const std::uint32_t> indices,
                         std::span<const double> dense) {
  return active().gather_dot(values.data(), indices.data(), values.size(), dense.data());
}

inline void scatter_axpy(double alpha, std::span<const double> values,
                         std::span<const std::uint32_t> indices, std::span<double> dense) {
  active().scatter_axpy(alpha, values.data(), indices.data(), values.size(), dense.data());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double sum_squares(std::span<const double> x) {
  return active().sum_squares(x.data(), x.size());
}

inline void scale(std::span<double> x, double factor) {
  active().scale(x.data(), x.size(), factor);
}

namespace scalar {
double gather_dot(const double* values, const std::uint32_t* indices, std::size_t nnz,
                  const double* dense);
void scatter_axpy(double alpha, const double* values, const std::uint32_t* indices,
                  std::size_t nnz, double* dense);
double dot(const double* a, const double* b, std::size_t n);
double sum_squares(const double* x, std::size_t n);
void scale(double* x, std::size_t n, double factor);
}  // namespace scalar

#if defined(TWEETPOL_HAVE_AVX2)
namespace avx2 {
double gather_dot(const double* values, const std::uint32_t* indices, std::size_t nnz,
                  const double* dense);
double dot(const double* a, const double* b, std::size_t n);
double sum_squares(const double* x, std::size_t n);
void scale(double* x, std::size_t n, double factor);
}  // namespace avx2
#endif

}  // namespace tweetpol::kernels
