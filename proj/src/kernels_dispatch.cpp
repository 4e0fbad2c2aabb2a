#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"

namespace oapx::kernels {
namespace {

const KernelSet* lookup(std::string_view name) {
  if (name == "scalar") return &scalar();
  if (name == "avx2") return avx2();
  if (name == "neon") return neon();
  return nullptr;
}

const KernelSet* detect() {
  if (const char* forced = std::getenv("ORTHO_APPROX_KERNELS")) {
    if (const KernelSet* set = lookup(forced)) return set;
  }
  if (const KernelSet* set = avx2()) return set;
  if (const KernelSet* set = neon()) return set;
  return &scalar();
}

std::atomic<const KernelSet*>& slot() {
  static std::atomic<const KernelSet*> chosen{detect()};
  return chosen;
}

}  // namespace

const KernelSet* avx2() {
#if defined(OAPX_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_set() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet* neon() {
#if defined(OAPX_HAVE_NEON)
  return &detail::neon_set();
#else
  return nullptr;
#endif
}

const KernelSet& active() { return *slot().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelSet* set = lookup(name);
  if (set == nullptr) return false;
  slot().store(set, std::memory_order_release);
  return true;
}

}  // namespace oapx::kernels
