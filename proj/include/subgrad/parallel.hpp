#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "subgrad/errors.hpp"

namespace subgrad {

/// Failure inside one Monte-Carlo trial.
class TrialError : public Error {
 public:
  TrialError(std::size_t trial, const std::string& what)
      : Error("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}

  std::size_t trial() const noexcept { return trial_; }

 private:
  std::size_t trial_;
};

inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Each index is
/// processed exactly once; results must be written to index-owned slots. If
/// any call throws, the failure with the smallest index is rethrown as a
/// TrialError once all workers have stopped.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), count));
  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto drain = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      if (failed.load(std::memory_order_relaxed)) return;
      try {
        fn(i);
      } catch (...) {
        failures[i] = std::current_exception();
        failed = true;
      }
    }
  };

  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(drain);
  }

  for (std::size_t i = 0; i < count; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& e) {
      throw TrialError(i, e.what());
    } catch (...) {
      throw TrialError(i, "unknown failure");
    }
  }
}

}  // namespace subgrad
