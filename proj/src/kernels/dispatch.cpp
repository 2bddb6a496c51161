#include <atomic>
#include <cstdlib>
#include <cstring>

#include "perdecomp/kernels.hpp"

namespace perdecomp::kernels {

#if defined(PERDECOMP_HAVE_AVX2_KERNELS)
namespace detail {
extern const KernelTable kAvx2;
}
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(PERDECOMP_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial_table() noexcept {
  const char* env = std::getenv("PERDECOMP_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_table();
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& active_slot() noexcept {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable* avx2_table() noexcept {
#if defined(PERDECOMP_HAVE_AVX2_KERNELS)
  static const bool ok = cpu_has_avx2();
  return ok ? &detail::kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept { return *active_slot().load(std::memory_order_relaxed); }

bool select_backend(Backend backend) noexcept {
  const KernelTable* t = nullptr;
  switch (backend) {
    case Backend::Auto: t = initial_table(); break;
    case Backend::Scalar: t = &scalar_table(); break;
    case Backend::Avx2: t = avx2_table(); break;
  }
  if (t == nullptr) return false;
  active_slot().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace perdecomp::kernels
