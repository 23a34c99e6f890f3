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

#ifndef SPEECHVEIL_METRICS_CALIBRATION_H_
#define SPEECHVEIL_METRICS_CALIBRATION_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace speechveil {

enum class TrialRole {
  kPositive,
  kNegative,
  kAnonymizedProbe,
  // Unprotected original audio scored as a probe; the "no protection" row.
  kOriginalProbe,
};

std::string_view ToString(TrialRole role);
TrialRole ParseTrialRole(std::string_view name);

struct TrialRecord {
  std::string enroll_speaker;
  std::string probe_utterance;
  double score = 0.0;
  TrialRole role = TrialRole::kPositive;

  // Throws ValidationError for a non-finite score.
  TrialRecord(std::string enroll, std::string probe, double score, TrialRole role);

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct ThresholdCalibration {
  double threshold = 0.0;
  double far = 0.0;
  double frr = 0.0;
  double eer = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  // Every positive and negative score was identical.
  bool degenerate = false;

  // Infinite thresholds serialize as "inf" / "-inf".
  nlohmann::json ToJson() const;
  static ThresholdCalibration FromJson(const nlohmann::json& json);
};

struct SweepPoint {
  double threshold;
  double far;
  double frr;
};

// All candidate thresholds in ascending order: -inf, midpoints between
// adjacent distinct scores, +inf. Accept iff score >= threshold.
std::vector<SweepPoint> ThresholdSweep(const std::vector<TrialRecord>& trials);

// Uses only positive and negative trials. Picks the candidate minimizing
// |FAR - FRR|, then FAR + FRR, then the threshold itself. Throws
// UndefinedInputError without at least one trial of each class.
ThresholdCalibration CalibrateThreshold(const std::vector<TrialRecord>& trials);

// Fraction of probe trials with score >= threshold. All trials must share a
// single probe role. Throws UndefinedInputError when empty.
double ComputeFar(const std::vector<TrialRecord>& probes,
                  const ThresholdCalibration& calibration);

// Header: enroll_speaker,probe_utterance,score,role.
void WriteTrialsCsv(const std::vector<TrialRecord>& trials, std::ostream& out);
std::vector<TrialRecord> ReadTrialsCsv(std::istream& in);

}  // namespace speechveil

#endif  // SPEECHVEIL_METRICS_CALIBRATION_H_
