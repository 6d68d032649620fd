#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

namespace expfam::classical::detail {

// Grow-on-demand table of a sequence whose terms are cheapest to produce in
// order. `fill(v, n)` must extend v to at least n entries.
class LazyTable {
 public:
  using Fill = std::function<void(std::vector<double>&, std::size_t)>;

  explicit LazyTable(Fill fill) : fill_(std::move(fill)) {}

  double at(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (n >= values_.size()) fill_(values_, std::max(n + 1, 2 * values_.size()));
    return values_[n];
  }

 private:
  Fill fill_;
  std::vector<double> values_;
  std::mutex mutex_;
};

inline std::shared_ptr<LazyTable> make_table(LazyTable::Fill fill) {
  return std::make_shared<LazyTable>(std::move(fill));
}

}  // namespace expfam::classical::detail
