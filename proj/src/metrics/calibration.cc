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

#include "speechveil/metrics/calibration.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "speechveil/core/errors.h"

namespace speechveil {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::json ThresholdJson(double t) {
  if (std::isinf(t)) return t > 0 ? "inf" : "-inf";
  return t;
}

double ThresholdFromJson(const nlohmann::json& json) {
  if (json.is_string()) {
    const std::string s = json.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw ValidationError(fmt::format("bad threshold '{}'", s));
  }
  return json.get<double>();
}

std::string CsvField(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

struct ClassScores {
  std::vector<double> pos;
  std::vector<double> neg;
};

ClassScores Split(const std::vector<TrialRecord>& trials) {
  ClassScores s;
  for (const TrialRecord& t : trials) {
    if (t.role == TrialRole::kPositive) s.pos.push_back(t.score);
    if (t.role == TrialRole::kNegative) s.neg.push_back(t.score);
  }
  std::sort(s.pos.begin(), s.pos.end());
  std::sort(s.neg.begin(), s.neg.end());
  return s;
}

// Candidate thresholds with the counts of accepted negatives and rejected
// positives at each.
struct Candidate {
  double threshold;
  std::size_t false_accepts;
  std::size_t false_rejects;
};

std::vector<Candidate> Candidates(const ClassScores& s) {
  std::vector<double> all = s.pos;
  all.insert(all.end(), s.neg.begin(), s.neg.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<double> thresholds = {-kInf};
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    thresholds.push_back(all[i] + (all[i + 1] - all[i]) / 2);
  }
  thresholds.push_back(kInf);

  std::vector<Candidate> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto below = [t](const std::vector<double>& v) {
      return static_cast<std::size_t>(
          std::lower_bound(v.begin(), v.end(), t) - v.begin());
    };
    out.push_back({t, s.neg.size() - below(s.neg), below(s.pos)});
  }
  return out;
}

}  // namespace

std::string_view ToString(TrialRole role) {
  switch (role) {
    case TrialRole::kPositive: return "positive";
    case TrialRole::kNegative: return "negative";
    case TrialRole::kAnonymizedProbe: return "anonymized-probe";
    case TrialRole::kOriginalProbe: return "original-probe";
  }
  return "unknown";
}

TrialRole ParseTrialRole(std::string_view name) {
  for (TrialRole role : {TrialRole::kPositive, TrialRole::kNegative,
                         TrialRole::kAnonymizedProbe, TrialRole::kOriginalProbe}) {
    if (ToString(role) == name) return role;
  }
  throw ValidationError(fmt::format("unknown trial role '{}'", name));
}

TrialRecord::TrialRecord(std::string enroll, std::string probe, double s,
                         TrialRole r)
    : enroll_speaker(std::move(enroll)),
      probe_utterance(std::move(probe)),
      score(s),
      role(r) {
  if (!std::isfinite(score)) {
    throw ValidationError(fmt::format("trial {}/{} has non-finite score",
                                      enroll_speaker, probe_utterance));
  }
}

nlohmann::json ThresholdCalibration::ToJson() const {
  return {{"threshold", ThresholdJson(threshold)},
          {"far", far},
          {"frr", frr},
          {"eer", eer},
          {"n_pos", n_pos},
          {"n_neg", n_neg},
          {"degenerate", degenerate}};
}

ThresholdCalibration ThresholdCalibration::FromJson(const nlohmann::json& json) {
  ThresholdCalibration c;
  c.threshold = ThresholdFromJson(json.at("threshold"));
  c.far = json.at("far").get<double>();
  c.frr = json.at("frr").get<double>();
  c.eer = json.at("eer").get<double>();
  c.n_pos = json.at("n_pos").get<std::size_t>();
  c.n_neg = json.at("n_neg").get<std::size_t>();
  c.degenerate = json.value("degenerate", false);
  return c;
}

std::vector<SweepPoint> ThresholdSweep(const std::vector<TrialRecord>& trials) {
  const ClassScores s = Split(trials);
  if (s.pos.empty() || s.neg.empty()) {
    throw UndefinedInputError("calibration needs positive and negative trials");
  }
  std::vector<SweepPoint> out;
  for (const Candidate& c : Candidates(s)) {
    out.push_back({c.threshold,
                   static_cast<double>(c.false_accepts) / static_cast<double>(s.neg.size()),
                   static_cast<double>(c.false_rejects) / static_cast<double>(s.pos.size())});
  }
  return out;
}

ThresholdCalibration CalibrateThreshold(const std::vector<TrialRecord>& trials) {
  const ClassScores s = Split(trials);
  if (s.pos.empty() || s.neg.empty()) {
    throw UndefinedInputError(fmt::format(
        "calibration needs positive and negative trials (got {} and {})",
        s.pos.size(), s.neg.size()));
  }
  const auto np = static_cast<long double>(s.pos.size());
  const auto nn = static_cast<long double>(s.neg.size());

  ThresholdCalibration out;
  out.n_pos = s.pos.size();
  out.n_neg = s.neg.size();

  if (s.pos.front() == s.pos.back() && s.neg.front() == s.neg.back() &&
      s.pos.front() == s.neg.front()) {
    spdlog::warn("degenerate calibration: every trial scored {}", s.pos.front());
    out.degenerate = true;
    out.threshold = s.pos.front();
    out.far = 1.0;
    out.frr = 0.0;
    out.eer = 0.5;
    return out;
  }

  // Compare FAR/FRR as exact integer cross products: |a/nn - b/np| scales to
  // |a*np - b*nn|.
  const auto key = [&](const Candidate& c) {
    const long double a = static_cast<long double>(c.false_accepts) * np;
    const long double b = static_cast<long double>(c.false_rejects) * nn;
    return std::make_tuple(std::fabs(a - b), a + b, c.threshold);
  };
  const std::vector<Candidate> candidates = Candidates(s);
  const Candidate* best = &candidates.front();
  for (const Candidate& c : candidates) {
    if (key(c) < key(*best)) best = &c;
  }
  out.threshold = best->threshold;
  out.far = static_cast<double>(best->false_accepts) / static_cast<double>(s.neg.size());
  out.frr = static_cast<double>(best->false_rejects) / static_cast<double>(s.pos.size());
  out.eer = (out.far + out.frr) / 2;
  return out;
}

double ComputeFar(const std::vector<TrialRecord>& probes,
                  const ThresholdCalibration& calibration) {
  if (probes.empty()) throw UndefinedInputError("FAR of zero probes is undefined");
  const TrialRole role = probes.front().role;
  if (role != TrialRole::kAnonymizedProbe && role != TrialRole::kOriginalProbe) {
    throw ValidationError(fmt::format("FAR needs probe trials, got {}", ToString(role)));
  }
  std::size_t accepted = 0;
  for (const TrialRecord& t : probes) {
    if (t.role != role) {
      throw ValidationError("FAR trials mix probe roles");
    }
    accepted += t.score >= calibration.threshold;
  }
  return static_cast<double>(accepted) / static_cast<double>(probes.size());
}

void WriteTrialsCsv(const std::vector<TrialRecord>& trials, std::ostream& out) {
  out << "enroll_speaker,probe_utterance,score,role\n";
  for (const TrialRecord& t : trials) {
    out << fmt::format("{},{},{},{}\n", CsvField(t.enroll_speaker),
                       CsvField(t.probe_utterance), t.score, ToString(t.role));
  }
}

std::vector<TrialRecord> ReadTrialsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "enroll_speaker,probe_utterance,score,role") {
    throw ValidationError("trials CSV has a missing or unexpected header");
  }
  std::vector<TrialRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = SplitCsvLine(line);
    if (fields.size() != 4) {
      throw ValidationError(fmt::format("trials CSV line {} has {} fields",
                                        line_no, fields.size()));
    }
    double score = 0;
    try {
      std::size_t used = 0;
      score = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument(fields[2]);
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("trials CSV line {}: bad score '{}'",
                                        line_no, fields[2]));
    }
    out.emplace_back(fields[0], fields[1], score, ParseTrialRole(fields[3]));
  }
  return out;
}

}  // namespace speechveil
