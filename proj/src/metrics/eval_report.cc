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

#include "speechveil/metrics/eval_report.h"

#include <fmt/format.h>

#include "speechveil/core/errors.h"

namespace speechveil {
namespace {

nlohmann::json Optional(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json();
}

std::optional<double> ReadOptional(const nlohmann::json& json, const char* key) {
  if (!json.contains(key) || json.at(key).is_null()) return std::nullopt;
  return json.at(key).get<double>();
}

}  // namespace

nlohmann::json ConditionMetrics::ToJson() const {
  return {{"utterances", utterances},
          {"far", Optional(far)},
          {"wer", Optional(wer)},
          {"pmos", Optional(pmos)}};
}

ConditionMetrics ConditionMetrics::FromJson(const nlohmann::json& json) {
  ConditionMetrics m;
  m.utterances = json.value("utterances", std::size_t{0});
  m.far = ReadOptional(json, "far");
  m.wer = ReadOptional(json, "wer");
  m.pmos = ReadOptional(json, "pmos");
  return m;
}

nlohmann::json EvalReport::ToJson() const {
  nlohmann::json breakdown_json = nlohmann::json::object();
  for (const auto& [attribute, values] : breakdown) {
    nlohmann::json per_value = nlohmann::json::object();
    for (const auto& [value, metrics] : values) per_value[value] = metrics.ToJson();
    breakdown_json[attribute] = per_value;
  }
  return {{"far", Optional(far)},
          {"far_original", Optional(far_original)},
          {"wer", Optional(wer)},
          {"wer_original", Optional(wer_original)},
          {"ner_f1", Optional(ner_f1)},
          {"ner_precision", Optional(ner_precision)},
          {"ner_recall", Optional(ner_recall)},
          {"replacement_accuracy", Optional(replacement_accuracy)},
          {"pmos_mean", Optional(pmos_mean)},
          {"pmos_original", Optional(pmos_original)},
          {"calibration", calibration ? calibration->ToJson() : nlohmann::json()},
          {"counts",
           {{"utterances", counts.utterances},
            {"succeeded", counts.succeeded},
            {"failed", counts.failed},
            {"positive_trials", counts.positive_trials},
            {"negative_trials", counts.negative_trials},
            {"probe_trials", counts.probe_trials},
            {"entity_spans", counts.entity_spans},
            {"replaced_spans", counts.replaced_spans}}},
          {"breakdown", breakdown_json},
          {"provenance", provenance}};
}

EvalReport EvalReport::FromJson(const nlohmann::json& json) {
  EvalReport r;
  try {
    r.far = ReadOptional(json, "far");
    r.far_original = ReadOptional(json, "far_original");
    r.wer = ReadOptional(json, "wer");
    r.wer_original = ReadOptional(json, "wer_original");
    r.ner_f1 = ReadOptional(json, "ner_f1");
    r.ner_precision = ReadOptional(json, "ner_precision");
    r.ner_recall = ReadOptional(json, "ner_recall");
    r.replacement_accuracy = ReadOptional(json, "replacement_accuracy");
    r.pmos_mean = ReadOptional(json, "pmos_mean");
    r.pmos_original = ReadOptional(json, "pmos_original");
    if (json.contains("calibration") && !json["calibration"].is_null()) {
      r.calibration = ThresholdCalibration::FromJson(json["calibration"]);
    }
    const nlohmann::json& c = json.at("counts");
    r.counts.utterances = c.value("utterances", std::size_t{0});
    r.counts.succeeded = c.value("succeeded", std::size_t{0});
    r.counts.failed = c.value("failed", std::size_t{0});
    r.counts.positive_trials = c.value("positive_trials", std::size_t{0});
    r.counts.negative_trials = c.value("negative_trials", std::size_t{0});
    r.counts.probe_trials = c.value("probe_trials", std::size_t{0});
    r.counts.entity_spans = c.value("entity_spans", std::size_t{0});
    r.counts.replaced_spans = c.value("replaced_spans", std::size_t{0});
    if (json.contains("breakdown")) {
      for (const auto& [attribute, values] : json["breakdown"].items()) {
        for (const auto& [value, metrics] : values.items()) {
          r.breakdown[attribute][value] = ConditionMetrics::FromJson(metrics);
        }
      }
    }
    r.provenance = json.value("provenance", nlohmann::json::object());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed report: {}", e.what()));
  }
  return r;
}

}  // namespace speechveil
