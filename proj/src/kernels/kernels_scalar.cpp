#include "perdecomp/kernels.hpp"

namespace perdecomp::kernels {

namespace {

void compose_scalar(const std::uint32_t* outer, const std::uint32_t* inner, std::uint32_t* out,
                    std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = outer[inner[i]];
}

bool is_identity_scalar(const std::uint32_t* perm, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (perm[i] != i) return false;
  return true;
}

void gather_sub_scalar(const std::int64_t* f, const std::uint32_t* perm, std::int64_t* out,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = f[perm[i]] - f[i];
}

std::size_t first_nonzero_scalar(const std::int64_t* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (v[i] != 0) return i;
  return n;
}

constexpr KernelTable kScalar{"scalar", compose_scalar, is_identity_scalar, gather_sub_scalar,
                              first_nonzero_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace perdecomp::kernels
