#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace modvertex {

inline int default_thread_count() {
    if (const char* env = std::getenv("MODVERTEX_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Parallel loop over [0, n): workers pull the next index from a shared
/// counter.  fn(index, worker) must be safe across distinct indices.
inline void parallel_for(size_t n, int threads, const std::function<void(size_t, int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i, 0);
        return;
    }
    size_t nt = std::min<size_t>(static_cast<size_t>(threads), n);
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (size_t t = 0; t < nt; ++t)
        pool.emplace_back([&fn, &next, n, t] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i, static_cast<int>(t));
        });
    for (auto& th : pool) th.join();
}

/// Keeps the failure with the smallest index so parallel sweeps report the
/// same witness as a sequential run.
class FailureCollector {
  public:
    void report(size_t idx, std::string witness) {
        std::lock_guard<std::mutex> lock(mu_);
        if (idx < best_) {
            best_ = idx;
            witness_ = std::move(witness);
        }
    }
    bool failed() const { return best_ != SIZE_MAX; }
    const std::string& witness() const { return witness_; }

  private:
    std::mutex mu_;
    size_t best_ = SIZE_MAX;
    std::string witness_;
};

} // namespace modvertex
