#pragma once

// Data-parallel inner loops: permutation composition, identity tests and the
// gather-subtract that implements a difference operator on integer-scaled
// function values. Every routine has a scalar reference implementation; an
// AVX2 variant is selected at runtime when the CPU supports it.

#include <cstddef>
#include <cstdint>
#include <span>

namespace perdecomp::kernels {

struct KernelTable {
  const char* name;
  /// out[i] = outer[inner[i]]
  void (*compose)(const std::uint32_t* outer, const std::uint32_t* inner, std::uint32_t* out,
                  std::size_t n);
  /// perm[i] == i for all i
  bool (*is_identity)(const std::uint32_t* perm, std::size_t n);
  /// out[i] = f[perm[i]] - f[i]
  void (*gather_sub)(const std::int64_t* f, const std::uint32_t* perm, std::int64_t* out,
                     std::size_t n);
  /// index of the first nonzero entry, or n
  std::size_t (*first_nonzero)(const std::int64_t* v, std::size_t n);
};

enum class Backend { Auto, Scalar, Avx2 };

const KernelTable& scalar_table() noexcept;

/// nullptr when AVX2 kernels were not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_table() noexcept;

/// The table used by the library. Chosen once: AVX2 when available unless the
/// environment variable PERDECOMP_KERNELS=scalar is set.
const KernelTable& active() noexcept;

/// Overrides the active table (tests and benchmarks). Returns false when the
/// requested backend is unavailable; the active table is then unchanged.
bool select_backend(Backend backend) noexcept;

inline void compose(std::span<const std::uint32_t> outer, std::span<const std::uint32_t> inner,
                    std::span<std::uint32_t> out) {
  active().compose(outer.data(), inner.data(), out.data(), inner.size());
}

inline bool is_identity(std::span<const std::uint32_t> perm) {
  return active().is_identity(perm.data(), perm.size());
}

inline void gather_sub(std::span<const std::int64_t> f, std::span<const std::uint32_t> perm,
                       std::span<std::int64_t> out) {
  active().gather_sub(f.data(), perm.data(), out.data(), perm.size());
}

inline std::size_t first_nonzero(std::span<const std::int64_t> v) {
  return active().first_nonzero(v.data(), v.size());
}

}  // namespace perdecomp::kernels
