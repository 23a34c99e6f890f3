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

#ifndef SPEECHVEIL_METRICS_QUALITY_H_
#define SPEECHVEIL_METRICS_QUALITY_H_

#include <cstddef>
#include <vector>

namespace speechveil {

// Arithmetic mean of predicted MOS values. Throws UndefinedInputError when
// empty and ValidationError for a score outside [1, 5].
double PmosMean(const std::vector<double>& scores);

// Correct spans over total spans, pooled; 1 for zero spans.
double PooledAccuracy(std::size_t correct, std::size_t total);

}  // namespace speechveil

#endif  // SPEECHVEIL_METRICS_QUALITY_H_
