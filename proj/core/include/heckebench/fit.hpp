#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace heckebench::fit {

/// Allowed factor between fitted constants of different groups.
inline constexpr double kDriftLimit = 2.0;

struct ConstantFit {
  double constant = 0.0;             ///< max over all points of measured / bound
  std::vector<double> ratios;        ///< measured / bound per point
  std::vector<double> group_constants;
  double drift = 1.0;                ///< max / min of group_constants
  double growth = 1.0;               ///< max over group pairs i < j of C_j / C_i
  bool stable = true;                ///< growth < kDriftLimit
};

/// Fits measured <= C bound. Points are split into groups by `group` (one id per
/// point, ids ascending with the scale parameter); each group gets its own constant
/// (the max ratio inside it). An upper bound is contradicted only when the constant
/// grows with scale, so the fit is stable when no later group exceeds an earlier
/// one by kDriftLimit. The two-sided drift is reported alongside.
ConstantFit fit_constant(std::span<const double> measured, std::span<const double> bound,
                         std::span<const int> group);

/// Same with every point in its own group.
ConstantFit fit_constant(std::span<const double> measured, std::span<const double> bound);

double median(std::vector<double> values);

/// Runs fn(0..n-1) on up to `threads` workers (0 = hardware concurrency) and
/// returns the results in index order. The first exception is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn,
                            unsigned threads = 0) {
  std::vector<T> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace heckebench::fit
