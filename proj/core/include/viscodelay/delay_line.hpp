// Copyright 2026 The viscodelay Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace viscodelay {

/// Ring buffer of the last depth + 1 velocity fields. Lag 0 is the newest
/// field, lag `depth` the one pushed depth steps earlier.
class DelayLine {
 public:
  DelayLine() = default;
  DelayLine(std::size_t depth, std::size_t width)
      : width_(width), slots_(depth + 1), data_(slots_ * width, 0.0), sums_(slots_, 0.0) {}

  std::size_t depth() const noexcept { return slots_ == 0 ? 0 : slots_ - 1; }
  std::size_t width() const noexcept { return width_; }
  bool empty() const noexcept { return slots_ == 0; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const double> lagged(std::size_t lag) const noexcept {
    assert(lag < slots_);
    const std::size_t slot = (head_ + slots_ - lag) % slots_;
    return {data_.data() + slot * width_, width_};
  }

  /// Sum of squares of a lagged field, cached at push time.
  double sum_of_squares(std::size_t lag) const noexcept {
    assert(lag < slots_);
    return sums_[(head_ + slots_ - lag) % slots_];
  }

  /// Overwrites a lagged field (used to seed the history).
  void assign(std::size_t lag, std::span<const double> field) noexcept {
    assert(lag < slots_ && field.size() == width_);
    const std::size_t slot = (head_ + slots_ - lag) % slots_;
    std::copy(field.begin(), field.end(), data_.begin() + slot * width_);
    sums_[slot] = squares(field);
  }

  void push(std::span<const double> field) noexcept {
    assert(field.size() == width_);
    head_ = (head_ + 1) % slots_;
    std::copy(field.begin(), field.end(), data_.begin() + head_ * width_);
    sums_[head_] = squares(field);
  }

 private:
  static double squares(std::span<const double> field) noexcept {
    double sum = 0.0;
    for (double x : field) sum += x * x;
    return sum;
  }

  std::size_t width_ = 0;
  std::size_t slots_ = 0;
  std::size_t head_ = 0;
  std::vector<double> data_;
  std::vector<double> sums_;
};

}  // namespace viscodelay
