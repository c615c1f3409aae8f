#include "framefield/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace framefield {
namespace {

constexpr std::uint64_t kMinChunk = 2048;

// NaN compares as the largest deviation so a broken point is never hidden.
bool worse(double a, double b) {
  if (std::isnan(a)) return !std::isnan(b);
  return a > b;
}

template <class Chunk>
void run_chunks(std::uint64_t count, unsigned workers, Chunk&& chunk) {
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint64_t per = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * per;
    const std::uint64_t hi = std::min(count, lo + per);
    pool.emplace_back([&, w, lo, hi] {
      try {
        chunk(w, lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

unsigned workers_for(std::uint64_t count, std::uint64_t grain = kMinChunk) {
  const std::uint64_t by_size = std::max<std::uint64_t>(1, count / std::max<std::uint64_t>(grain, 1));
  return static_cast<unsigned>(std::min<std::uint64_t>(sweep_threads(), by_size));
}

}  // namespace

unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRAMEFIELD_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

SweepMax sweep_max(std::uint64_t count, const std::function<double(std::uint64_t)>& f) {
  const unsigned workers = workers_for(count);
  auto scan = [&f](std::uint64_t lo, std::uint64_t hi) {
    SweepMax best{-1.0, lo};
    for (std::uint64_t i = lo; i < hi; ++i) {
      const double v = f(i);
      if (worse(v, best.value)) best = {v, i};
    }
    return best;
  };
  if (count == 0) return {};
  if (workers <= 1) return scan(0, count);

  std::vector<SweepMax> partial(workers, SweepMax{-1.0, 0});
  run_chunks(count, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    if (lo < hi) partial[w] = scan(lo, hi);
  });
  SweepMax best = partial[0];
  for (unsigned w = 1; w < workers; ++w)
    if (worse(partial[w].value, best.value)) best = partial[w];
  return best;
}

void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t)>& body, std::uint64_t grain) {
  const unsigned workers = workers_for(count, grain);
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  run_chunks(count, workers, [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) body(i);
  });
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t x = base + 0x9E3779B97F4A7C15ull * (stream + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace framefield
