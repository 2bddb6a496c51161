// Compiled with -mavx2; only reached through avx2_table() after a CPU check.

#include <immintrin.h>

#include "perdecomp/kernels.hpp"

namespace perdecomp::kernels {

namespace detail {

void compose_avx2(const std::uint32_t* outer, const std::uint32_t* inner, std::uint32_t* out,
                  std::size_t n) {
  std::size_t i = 0;
  const auto* base = reinterpret_cast<const int*>(outer);
  for (; i + 8 <= n; i += 8) {
    const __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(inner + i));
    const __m256i v = _mm256_i32gather_epi32(base, idx, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), v);
  }
  for (; i < n; ++i) out[i] = outer[inner[i]];
}

bool is_identity_avx2(const std::uint32_t* perm, std::size_t n) {
  std::size_t i = 0;
  __m256i iota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i step = _mm256_set1_epi32(8);
  for (; i + 8 <= n; i += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(perm + i));
    const __m256i eq = _mm256_cmpeq_epi32(v, iota);
    if (_mm256_movemask_epi8(eq) != -1) return false;
    iota = _mm256_add_epi32(iota, step);
  }
  for (; i < n; ++i)
    if (perm[i] != i) return false;
  return true;
}

void gather_sub_avx2(const std::int64_t* f, const std::uint32_t* perm, std::int64_t* out,
                     std::size_t n) {
  std::size_t i = 0;
  const auto* base = reinterpret_cast<const long long*>(f);
  for (; i + 4 <= n; i += 4) {
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(perm + i));
    const __m256i moved = _mm256_i32gather_epi64(base, idx, 8);
    const __m256i here = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(f + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_sub_epi64(moved, here));
  }
  for (; i < n; ++i) out[i] = f[perm[i]] - f[i];
}

std::size_t first_nonzero_avx2(const std::int64_t* v, std::size_t n) {
  std::size_t i = 0;
  const __m256i zero = _mm256_setzero_si256();
  for (; i + 4 <= n; i += 4) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
    const int zero_mask = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(x, zero)));
    if (zero_mask != 0xF) return i + static_cast<std::size_t>(__builtin_ctz(~zero_mask & 0xF));
  }
  for (; i < n; ++i)
    if (v[i] != 0) return i;
  return n;
}

extern const KernelTable kAvx2;
const KernelTable kAvx2{"avx2", compose_avx2, is_identity_avx2, gather_sub_avx2,
                        first_nonzero_avx2};

}  // namespace detail

}  // namespace perdecomp::kernels
