#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fc::detail {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. The first
/// exception stops the remaining work and is rethrown.
template <class Fn>
void parallel_for(int jobs, std::size_t count, Fn&& fn) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Thread-safe counter that reports at most every `interval`.
class Ticker {
 public:
  Ticker(std::string label, std::size_t total, const std::function<void(const std::string&)>& sink,
         std::chrono::seconds interval = std::chrono::seconds(10))
      : label_(std::move(label)), total_(total), sink_(sink), interval_(interval),
        last_(std::chrono::steady_clock::now()) {}

  void tick() {
    const std::size_t done = ++done_;
    if (!sink_) return;
    const auto now = std::chrono::steady_clock::now();
    std::lock_guard lock(mu_);
    if (now - last_ < interval_) return;
    last_ = now;
    sink_(label_ + ": " + std::to_string(done) + "/" + std::to_string(total_));
  }

 private:
  std::string label_;
  std::size_t total_;
  const std::function<void(const std::string&)>& sink_;
  std::chrono::seconds interval_;
  std::atomic<std::size_t> done_{0};
  std::mutex mu_;
  std::chrono::steady_clock::time_point last_;
};

}  // namespace fc::detail
