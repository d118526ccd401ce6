#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace w11 {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Worker threads used by the reduction kernels. Defaults to $W11_THREADS
/// (or 1 when unset).
unsigned thread_count();
void set_thread_count(unsigned n);

/// Splits [0, n) into a fixed number of chunks (independent of the thread
/// count), reduces each chunk with `body(begin, end, acc)` and combines the
/// partial sums in chunk order, so the result is bitwise reproducible for
/// any thread count.
double parallel_sum(std::size_t n,
                    const std::function<void(std::size_t, std::size_t, CompensatedSum&)>& body);

/// As parallel_sum, with `k` independent accumulators per chunk.
std::vector<double> parallel_sums(
    std::size_t n, std::size_t k,
    const std::function<void(std::size_t, std::size_t, std::span<CompensatedSum>)>& body);

/// Runs `body(i)` for each i in [0, n). Callers must write to disjoint memory.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Volume of the Euclidean unit ball in R^d.
double unit_ball_volume(int d);

inline double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace w11
