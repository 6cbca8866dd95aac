// Copyright 2026 The policycert Authors.
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

#ifndef POLICYCERT_SAMPLE_BATCH_H_
#define POLICYCERT_SAMPLE_BATCH_H_

#include <optional>
#include <span>
#include <vector>

namespace policycert {

// IID scalar samples (costs or constraint values), sorted ascending at
// construction, with an optional almost-sure upper bound on the support.
// Immutable after construction.
class SampleBatch {
 public:
  // Throws InvalidArgument on an empty list, non-finite values, or a value
  // above `upper_bound`.
  explicit SampleBatch(std::vector<double> values,
                       std::optional<double> upper_bound = std::nullopt);

  std::span<const double> values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  std::optional<double> upper_bound() const { return upper_bound_; }

  // kth smallest value, 1-indexed: order_statistic(n) is the maximum.
  double order_statistic(int k) const;

  // Number of values strictly above `threshold` (failures when g > 0).
  int count_above(double threshold) const;

  SampleBatch with_upper_bound(double upper_bound) const;

 private:
  std::vector<double> values_;
  std::optional<double> upper_bound_;
};

inline double order_statistic(const SampleBatch& batch, int k) {
  return batch.order_statistic(k);
}

}  // namespace policycert

#endif  // POLICYCERT_SAMPLE_BATCH_H_
