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

#ifndef GOLDENBENCH_ANALYTICS_CORRELATE_H_
#define GOLDENBENCH_ANALYTICS_CORRELATE_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "goldenbench/analytics/stats.h"
#include "goldenbench/corpus/types.h"

namespace goldenbench::analytics {

enum class CorrelationLevel {
  // One point per speaker: mean cost over the speaker's pairs vs score.
  kSpeaker,
  // One point per synthesized utterance, paired with its speaker's score.
  kUtterance,
};

struct CorrelationConfig {
  CorrelationLevel level = CorrelationLevel::kSpeaker;
  corpus::Role synthesized_role = corpus::Role::kGolden;
  // Box-summary grouping; exact scores when unset.
  std::optional<double> bucket_width;
};

struct CorrelationResult {
  // xs: DTW cost, ys: proficiency score. Labels are speaker or utterance ids.
  PairedSeries series;
  double pcc = 0.0;
  std::vector<BoxSummary> boxes;
};

// `costs` maps a synthesized utterance id to its DTW cost against the
// original counterpart. Every utterance of the synthesized role must have an
// entry, and every speaker contributing a pair must carry `score_name`.
// Throws Error naming the offending utterance or speaker, when no pair
// exists, or when pearson() fails.
CorrelationResult correlate_corpus(const corpus::CorpusManifest& manifest,
                                   const std::map<std::string, double>& costs,
                                   const std::string& score_name,
                                   const CorrelationConfig& config = {});

}  // namespace goldenbench::analytics

#endif  // GOLDENBENCH_ANALYTICS_CORRELATE_H_
