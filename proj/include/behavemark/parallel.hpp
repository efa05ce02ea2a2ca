#ifndef BEHAVEMARK_PARALLEL_HPP
#define BEHAVEMARK_PARALLEL_HPP

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "behavemark/keyed_randomness.hpp"

namespace behavemark {

// Seed for trial `index` of an experiment: first 8 bytes (big-endian) of
// SHA256(be64(experiment_seed) || be64(index)). Trials are reproducible
// regardless of how they are scheduled across threads.
inline std::uint64_t trial_seed(std::uint64_t experiment_seed, std::uint64_t index) {
  std::vector<std::uint8_t> buf;
  buf.reserve(16);
  for (int shift = 56; shift >= 0; shift -= 8)
    buf.push_back(static_cast<std::uint8_t>((experiment_seed >> shift) & 0xffu));
  for (int shift = 56; shift >= 0; shift -= 8)
    buf.push_back(static_cast<std::uint8_t>((index >> shift) & 0xffu));
  const auto digest = sha256(buf);
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed = (seed << 8) | digest[static_cast<std::size_t>(i)];
  return seed;
}

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs fn(0..count-1). threads == 1 is the serial reference path; threads == 0
// lets OpenMP pick. Each trial must write only to its own output slot, so
// serial and parallel runs produce bit-identical results.
template <class Fn>
void for_each_trial(std::size_t count, int threads, Fn&& fn) {
#ifdef _OPENMP
  if (threads != 1) {
    std::exception_ptr error;
    std::mutex error_mutex;
    const int nt = threads > 0 ? threads : hardware_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    return;
  }
#else
  (void)threads;
#endif
  for (std::size_t i = 0; i < count; ++i) fn(i);
}

}  // namespace behavemark

#endif
