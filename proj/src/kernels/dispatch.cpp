#include <cstdlib>
#include <cstring>

#include "tweetpol/kernels.hpp"

namespace tweetpol::kernels {

namespace {

constexpr KernelTable kScalar{"scalar", scalar::gather_dot, scalar::scatter_axpy, scalar::dot,
                              scalar::sum_squares, scalar::scale};

#if defined(TWEETPOL_HAVE_AVX2)
// No scatter instruction in AVX2; the scalar loop is used for axpy.
constexpr KernelTable kAvx2{"avx2", avx2::gather_dot, scalar::scatter_axpy, avx2::dot,
                            avx2::sum_squares, avx2::scale};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& resolve() noexcept {
  const char* forced = std::getenv("TWEETPOL_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return kScalar;
  if (const KernelTable* t = avx2_table()) return *t;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(TWEETPOL_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& table = resolve();
  return table;
}

}  // namespace tweetpol::kernels
