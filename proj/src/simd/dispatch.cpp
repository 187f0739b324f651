#include <atomic>

#include "jcq/errors.hpp"
#include "jcq/simd/batch.hpp"

// Runtime backend selection.  auto_detect probes the CPU once per call
// (cheap builtin) and prefers the widest available implementation; an
// explicit selection is process-wide and sticky until changed.

namespace jcq::simd {

namespace {
std::atomic<Backend> g_backend{Backend::auto_detect};
}

bool avx2_supported() {
  if (avx2_table() == nullptr) {
    return false;  // not compiled in (non-x86 build)
  }
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

void select_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_supported()) {
    throw DomainError("avx2 backend requested but not available on this host");
  }
  g_backend.store(b, std::memory_order_relaxed);
}

Backend selected_backend() {
  return g_backend.load(std::memory_order_relaxed);
}

const KernelTable& active_table() {
  switch (g_backend.load(std::memory_order_relaxed)) {
    case Backend::scalar:
      return scalar_table();
    case Backend::avx2:
      return *avx2_table();  // select_backend verified availability
    case Backend::auto_detect:
      break;
  }
  return avx2_supported() ? *avx2_table() : scalar_table();
}

}  // namespace jcq::simd
