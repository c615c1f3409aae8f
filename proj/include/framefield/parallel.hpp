#pragma once

#include <cstdint>
#include <functional>

namespace framefield {

// Worker count for grid sweeps: hardware concurrency, capped by the
// FRAMEFIELD_THREADS environment variable when it is set.
unsigned sweep_threads();

struct SweepMax {
  double value = 0.0;
  std::uint64_t index = 0;  // first index attaining `value`
};

// max_{i < count} f(i), evaluated in parallel chunks. The result is
// independent of the thread count: ties resolve to the smallest index.
SweepMax sweep_max(std::uint64_t count, const std::function<double(std::uint64_t)>& f);

// Runs body(i) for i < count across the sweep threads, at least `grain`
// iterations per thread.
void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t)>& body, std::uint64_t grain = 2048);

// Well-mixed 64-bit seed for stream `stream` of a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace framefield
