// Copyright 2026 The speechveil Authors.
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

#include "speechveil/metrics/quality.h"

#include <algorithm>

#include <fmt/format.h>

#include "speechveil/core/errors.h"

namespace speechveil {

double PmosMean(const std::vector<double>& scores) {
  if (scores.empty()) throw UndefinedInputError("PMOS mean of no scores is undefined");
  for (double s : scores) {
    if (!(s >= 1.0 && s <= 5.0)) {
      throw ValidationError(fmt::format("PMOS score {} outside [1, 5]", s));
    }
  }
  // Summing in sorted order makes the result independent of input order.
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0;
  for (double s : sorted) sum += s;
  return sum / static_cast<double>(scores.size());
}

double PooledAccuracy(std::size_t correct, std::size_t total) {
  if (correct > total) {
    throw ValidationError(fmt::format("{} correct of {} spans", correct, total));
  }
  return total == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace speechveil
