#pragma once

#include <condition_variable>
#include <mutex>

namespace parity {

// Counting semaphore with a runtime-configurable limit. limit == 0 means
// unbounded.
class ConcurrencyLimit {
 public:
  explicit ConcurrencyLimit(int limit = 0) : limit_(limit) {}

  void acquire() {
    if (limit_ <= 0) return;
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return in_flight_ < limit_; });
    ++in_flight_;
  }

  void release() {
    if (limit_ <= 0) return;
    {
      std::lock_guard lock(mutex_);
      --in_flight_;
    }
    cv_.notify_one();
  }

  void set_limit(int limit) {
    std::lock_guard lock(mutex_);
    limit_ = limit;
  }

  class Guard {
   public:
    explicit Guard(ConcurrencyLimit& limit) : limit_(limit) { limit_.acquire(); }
    ~Guard() { limit_.release(); }
    Guard(const Guard&) = delete;
    Guard& operator=(const Guard&) = delete;

   private:
    ConcurrencyLimit& limit_;
  };

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  int limit_;
  int in_flight_ = 0;
};

}  // namespace parity
