#pragma once

#include <atomic>
#include <cstdint>

// Heap high-water-mark accounting. The accessors below are always available;
// the actual instrumentation is linked into a binary by defining
// CUTBENCH_MEMTRACK_IMPLEMENT in exactly one of its translation units before
// including this header. That unit interposes malloc/free/realloc/calloc and
// the aligned variants (glibc entry points), so every in-process heap
// allocation is counted -- including those made internally by container and
// matrix libraries that bypass operator new. Without the implementing unit,
// active() stays false and measurements fall back to documented estimates.

namespace cutbench::memtrack {

inline std::atomic<std::uint64_t> g_current{0};
inline std::atomic<std::uint64_t> g_peak{0};
inline std::atomic<bool> g_active{false};

inline bool active() noexcept { return g_active.load(std::memory_order_relaxed); }

inline std::uint64_t current_bytes() noexcept {
  return g_current.load(std::memory_order_relaxed);
}

inline std::uint64_t peak_bytes() noexcept { return g_peak.load(std::memory_order_relaxed); }

/// Restart the high-water mark at the current level (call before a run).
inline void reset_peak() noexcept {
  g_peak.store(g_current.load(std::memory_order_relaxed), std::memory_order_relaxed);
}

namespace detail {

inline void on_alloc(std::uint64_t size) noexcept {
  const std::uint64_t now = g_current.fetch_add(size, std::memory_order_relaxed) + size;
  std::uint64_t peak = g_peak.load(std::memory_order_relaxed);
  while (now > peak &&
         !g_peak.compare_exchange_weak(peak, now, std::memory_order_relaxed)) {
  }
}

inline void on_release(std::uint64_t size) noexcept {
  g_current.fetch_sub(size, std::memory_order_relaxed);
}

}  // namespace detail
}  // namespace cutbench::memtrack

#ifdef CUTBENCH_MEMTRACK_IMPLEMENT

#include <malloc.h>  // malloc_usable_size

#include <cerrno>
#include <cstddef>

extern "C" {
void* __libc_malloc(std::size_t size);
void __libc_free(void* ptr);
void* __libc_realloc(void* ptr, std::size_t size);
void* __libc_calloc(std::size_t count, std::size_t size);
void* __libc_memalign(std::size_t alignment, std::size_t size);
}

namespace cutbench::memtrack::detail {

inline void track_new(void* p) noexcept {
  if (p != nullptr) on_alloc(malloc_usable_size(p));
}

inline void track_gone(void* p) noexcept {
  if (p != nullptr) on_release(malloc_usable_size(p));
}

struct Activator {
  Activator() noexcept { g_active.store(true, std::memory_order_relaxed); }
};
static const Activator g_activator;

}  // namespace cutbench::memtrack::detail

extern "C" void* malloc(std::size_t size) {
  void* p = __libc_malloc(size);
  cutbench::memtrack::detail::track_new(p);
  return p;
}

extern "C" void free(void* ptr) {
  cutbench::memtrack::detail::track_gone(ptr);
  __libc_free(ptr);
}

extern "C" void* calloc(std::size_t count, std::size_t size) {
  void* p = __libc_calloc(count, size);
  cutbench::memtrack::detail::track_new(p);
  return p;
}

extern "C" void* realloc(void* ptr, std::size_t size) {
  cutbench::memtrack::detail::track_gone(ptr);
  void* p = __libc_realloc(ptr, size);
  cutbench::memtrack::detail::track_new(p);
  return p;
}

extern "C" void* memalign(std::size_t alignment, std::size_t size) {
  void* p = __libc_memalign(alignment, size);
  cutbench::memtrack::detail::track_new(p);
  return p;
}

extern "C" void* aligned_alloc(std::size_t alignment, std::size_t size) {
  void* p = __libc_memalign(alignment, size);
  cutbench::memtrack::detail::track_new(p);
  return p;
}

extern "C" int posix_memalign(void** out, std::size_t alignment, std::size_t size) {
  if (out == nullptr || alignment < sizeof(void*) || (alignment & (alignment - 1)) != 0)
    return EINVAL;
  void* p = __libc_memalign(alignment, size);
  if (p == nullptr) return ENOMEM;
  cutbench::memtrack::detail::track_new(p);
  *out = p;
  return 0;
}

#endif  // CUTBENCH_MEMTRACK_IMPLEMENT
