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

#ifndef SPEECHVEIL_METRICS_EVAL_REPORT_H_
#define SPEECHVEIL_METRICS_EVAL_REPORT_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "speechveil/metrics/calibration.h"

namespace speechveil {

// Metrics for one slice of a run (the whole run or one attribute value).
struct ConditionMetrics {
  std::size_t utterances = 0;
  std::optional<double> far;
  std::optional<double> wer;
  std::optional<double> pmos;

  nlohmann::json ToJson() const;
  static ConditionMetrics FromJson(const nlohmann::json& json);
  friend bool operator==(const ConditionMetrics&, const ConditionMetrics&) = default;
};

struct EvalCounts {
  std::size_t utterances = 0;
  std::size_t succeeded = 0;
  std::size_t failed = 0;
  std::size_t positive_trials = 0;
  std::size_t negative_trials = 0;
  std::size_t probe_trials = 0;
  std::size_t entity_spans = 0;
  std::size_t replaced_spans = 0;

  friend bool operator==(const EvalCounts&, const EvalCounts&) = default;
};

struct EvalReport {
  // Anonymized probes against their source speaker.
  std::optional<double> far;
  // Original audio as probe; the unprotected baseline.
  std::optional<double> far_original;
  // ASR on synthesized audio against the sanitized text.
  std::optional<double> wer;
  // ASR on original audio against the gold transcript.
  std::optional<double> wer_original;
  // Null when the manifest carries no gold entities.
  std::optional<double> ner_f1;
  std::optional<double> ner_precision;
  std::optional<double> ner_recall;
  std::optional<double> replacement_accuracy;
  std::optional<double> pmos_mean;
  std::optional<double> pmos_original;
  std::optional<ThresholdCalibration> calibration;
  EvalCounts counts;
  // attribute name -> attribute value -> metrics
  std::map<std::string, std::map<std::string, ConditionMetrics>> breakdown;
  nlohmann::json provenance = nlohmann::json::object();

  nlohmann::json ToJson() const;
  static EvalReport FromJson(const nlohmann::json& json);
};

}  // namespace speechveil

#endif  // SPEECHVEIL_METRICS_EVAL_REPORT_H_
