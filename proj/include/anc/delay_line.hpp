#pragma once

#include <cstddef>
#include <vector>

namespace anc {

// Fixed-capacity sample history, newest first. Reads past the stored
// history (or before the first push) return 0.
class DelayLine {
 public:
  explicit DelayLine(std::size_t capacity)
      : buf_(capacity, 0.0), head_(0), fill_(0) {}

  void push(double sample) {
    head_ = (head_ == 0) ? buf_.size() - 1 : head_ - 1;
    buf_[head_] = sample;
    if (fill_ < buf_.size()) ++fill_;
  }

  // Sample pushed `lag` steps ago; lag 0 is the newest.
  double at(std::size_t lag) const {
    if (lag >= fill_) return 0.0;
    std::size_t i = head_ + lag;
    if (i >= buf_.size()) i -= buf_.size();
    return buf_[i];
  }

  std::size_t capacity() const { return buf_.size(); }
  std::size_t fill() const { return fill_; }

  void clear() {
    std::fill(buf_.begin(), buf_.end(), 0.0);
    head_ = 0;
    fill_ = 0;
  }

 private:
  std::vector<double> buf_;
  std::size_t head_;
  std::size_t fill_;
};

}  // namespace anc
