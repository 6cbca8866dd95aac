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

#include "policycert/sample_batch.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "policycert/error.h"

namespace policycert {

SampleBatch::SampleBatch(std::vector<double> values,
                         std::optional<double> upper_bound)
    : values_(std::move(values)), upper_bound_(upper_bound) {
  internal::require(!values_.empty(), "sample batch must be nonempty");
  for (double v : values_) {
    internal::require(std::isfinite(v), "sample values must be finite");
  }
  // Stable so tied samples keep a deterministic provenance.
  std::stable_sort(values_.begin(), values_.end());
  if (upper_bound_) {
    internal::require(std::isfinite(*upper_bound_),
                      "upper bound must be finite");
    if (values_.back() > *upper_bound_) {
      internal::throw_invalid("sample value " + std::to_string(values_.back()) +
                              " exceeds the declared upper bound " +
                              std::to_string(*upper_bound_));
    }
  }
}

double SampleBatch::order_statistic(int k) const {
  if (k < 1 || k > size()) {
    internal::throw_invalid("order statistic index " + std::to_string(k) +
                            " outside [1, " + std::to_string(size()) + "]");
  }
  return values_[static_cast<std::size_t>(k - 1)];
}

int SampleBatch::count_above(double threshold) const {
  const auto first = std::upper_bound(values_.begin(), values_.end(), threshold);
  return static_cast<int>(values_.end() - first);
}

SampleBatch SampleBatch::with_upper_bound(double upper_bound) const {
  return SampleBatch(values_, upper_bound);
}

}  // namespace policycert
