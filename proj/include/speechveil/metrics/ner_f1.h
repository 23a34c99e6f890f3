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

#ifndef SPEECHVEIL_METRICS_NER_F1_H_
#define SPEECHVEIL_METRICS_NER_F1_H_

#include <cstddef>
#include <vector>

#include "speechveil/core/types.h"

namespace speechveil {

struct NerScore {
  std::size_t true_positives = 0;
  std::size_t gold_total = 0;
  std::size_t predicted_total = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Micro-averaged over utterances; each side reduced to a multiset of
// (label, scoring-normalized surface). With no entities on either side all
// three scores are 1; otherwise a zero denominator yields 0. Throws
// ValidationError when the lists differ in length.
NerScore ComputeNerF1(const std::vector<AnnotatedTranscript>& gold,
                      const std::vector<AnnotatedTranscript>& predicted);

}  // namespace speechveil

#endif  // SPEECHVEIL_METRICS_NER_F1_H_
