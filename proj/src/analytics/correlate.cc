// Copyright (c) 2026 goldenbench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "goldenbench/analytics/correlate.h"

#include "goldenbench/error.h"

namespace goldenbench::analytics {

CorrelationResult correlate_corpus(const corpus::CorpusManifest& manifest,
                                   const std::map<std::string, double>& costs,
                                   const std::string& score_name,
                                   const CorrelationConfig& config) {
  auto score_of = [&](const std::string& speaker_id) {
    const corpus::SpeakerRecord* spk = manifest.find_speaker(speaker_id);
    if (spk == nullptr) {
      throw Error("speaker " + speaker_id + " has no speaker record");
    }
    const auto it = spk->scores.find(score_name);
    if (it == spk->scores.end()) {
      throw Error("speaker " + speaker_id + " has no \"" + score_name +
                  "\" score");
    }
    return it->second;
  };

  CorrelationResult result;
  result.series.x_name = "dtw cost";
  result.series.y_name = "score \"" + score_name + "\"";

  std::vector<std::pair<std::string, double>> speaker_rows;
  for (const auto& utt : manifest.utterances) {
    if (utt.role != config.synthesized_role) continue;
    const auto it = costs.find(utt.utterance_id);
    if (it == costs.end()) {
      throw Error("utterance " + utt.utterance_id + " has no DTW result");
    }
    if (config.level == CorrelationLevel::kUtterance) {
      result.series.labels.push_back(utt.utterance_id);
      result.series.xs.push_back(it->second);
      result.series.ys.push_back(score_of(utt.speaker_id));
    } else {
      speaker_rows.emplace_back(utt.speaker_id, it->second);
    }
  }
  if (config.level == CorrelationLevel::kSpeaker) {
    for (const auto& [speaker, mean_cost] : per_speaker_mean(speaker_rows)) {
      result.series.labels.push_back(speaker);
      result.series.xs.push_back(mean_cost);
      result.series.ys.push_back(score_of(speaker));
    }
  }
  if (result.series.xs.empty()) {
    throw Error("no " + std::string(corpus::to_string(config.synthesized_role)) +
                " utterances to correlate");
  }

  result.pcc = pearson(result.series);
  std::vector<std::pair<double, double>> rows;
  rows.reserve(result.series.xs.size());
  for (std::size_t i = 0; i < result.series.xs.size(); ++i) {
    rows.emplace_back(result.series.ys[i], result.series.xs[i]);
  }
  result.boxes = group_quartiles(rows, config.bucket_width);
  return result;
}

}  // namespace goldenbench::analytics
