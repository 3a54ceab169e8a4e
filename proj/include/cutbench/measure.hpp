#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>

#include "cutbench/memtrack.hpp"

namespace cutbench {

template <typename T>
struct Measured {
  T result;
  double time_ms = 0.0;
  std::uint64_t peak_mem_bytes = 0;
  std::string mem_mode;  // "tracked" or "estimated"
};

/// Wall-clock and peak-heap measurement around one solver call. With live
/// allocation instrumentation the peak is the high-water mark of bytes
/// allocated above the pre-call level; otherwise `estimate_bytes` (a
/// documented capacity-based formula supplied by the caller) is recorded and
/// the record is flagged "estimated". Tracked measurements share one global
/// high-water mark, so tracked runs must not execute concurrently.
template <typename F>
Measured<std::invoke_result_t<F&>> measure_run(F&& fn, std::uint64_t estimate_bytes = 0,
                                               bool use_tracking = true) {
  const bool tracked = use_tracking && memtrack::active();
  std::uint64_t base = 0;
  if (tracked) {
    base = memtrack::current_bytes();
    memtrack::reset_peak();
  }
  const auto t0 = std::chrono::steady_clock::now();
  Measured<std::invoke_result_t<F&>> out{fn(), 0.0, 0, ""};
  const auto t1 = std::chrono::steady_clock::now();
  out.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  if (tracked) {
    const std::uint64_t peak = memtrack::peak_bytes();
    out.peak_mem_bytes = peak > base ? peak - base : 0;
    out.mem_mode = "tracked";
  } else {
    out.peak_mem_bytes = estimate_bytes;
    out.mem_mode = "estimated";
  }
  return out;
}

}  // namespace cutbench
