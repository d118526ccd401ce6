#include "w11/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

#include "w11/error.hpp"

namespace w11 {

namespace {

constexpr std::size_t kChunks = 64;

unsigned threads_from_env() {
  if (const char* env = std::getenv("W11_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::atomic<unsigned>& thread_setting() {
  static std::atomic<unsigned> n{threads_from_env()};
  return n;
}

template <class Fn>
void run_workers(std::size_t tasks, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), tasks));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks; i = next++) fn(i);
    });
  }
}

}  // namespace

const char* to_string(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::Usage:
      return "usage";
    case ErrorCategory::Schema:
      return "schema";
    case ErrorCategory::Domain:
      return "domain";
    case ErrorCategory::Resolution:
      return "resolution";
  }
  return "unknown";
}

unsigned thread_count() { return thread_setting().load(); }

void set_thread_count(unsigned n) { thread_setting().store(std::max(1u, n)); }

double parallel_sum(std::size_t n,
                    const std::function<void(std::size_t, std::size_t, CompensatedSum&)>& body) {
  if (n == 0) return 0.0;
  const std::size_t chunks = std::min(n, kChunks);
  std::vector<CompensatedSum> partial(chunks);
  run_workers(chunks, [&](std::size_t c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    body(begin, end, partial[c]);
  });
  CompensatedSum total;
  for (const auto& p : partial) total.add(p);
  return total.value();
}

std::vector<double> parallel_sums(
    std::size_t n, std::size_t k,
    const std::function<void(std::size_t, std::size_t, std::span<CompensatedSum>)>& body) {
  std::vector<double> out(k, 0.0);
  if (n == 0) return out;
  const std::size_t chunks = std::min(n, kChunks);
  std::vector<CompensatedSum> partial(chunks * k);
  run_workers(chunks, [&](std::size_t c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    body(begin, end, std::span<CompensatedSum>(partial.data() + c * k, k));
  });
  for (std::size_t j = 0; j < k; ++j) {
    CompensatedSum total;
    for (std::size_t c = 0; c < chunks; ++c) total.add(partial[c * k + j]);
    out[j] = total.value();
  }
  return out;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t chunks = std::min(n, kChunks);
  run_workers(chunks, [&](std::size_t c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    for (std::size_t i = begin; i < end; ++i) body(i);
  });
}

double unit_ball_volume(int d) {
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

}  // namespace w11
