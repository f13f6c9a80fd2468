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

#include "goldenbench/corpus/types.h"

#include <cmath>

#include "goldenbench/error.h"

namespace goldenbench::corpus {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kOriginal:
      return "original";
    case Role::kGolden:
      return "golden";
    case Role::kL1:
      return "l1";
  }
  return "original";
}

Role parse_role(std::string_view text) {
  if (text == "original") return Role::kOriginal;
  if (text == "golden") return Role::kGolden;
  if (text == "l1") return Role::kL1;
  throw ParseError("unknown role \"" + std::string(text) +
                   "\" (expected one of: original, golden, l1)");
}

const SpeakerRecord* CorpusManifest::find_speaker(
    std::string_view speaker_id) const {
  for (const auto& spk : speakers) {
    if (spk.speaker_id == speaker_id) return &spk;
  }
  return nullptr;
}

const UtteranceRecord* CorpusManifest::find_utterance(
    std::string_view utterance_id) const {
  for (const auto& utt : utterances) {
    if (utt.utterance_id == utterance_id) return &utt;
  }
  return nullptr;
}

const UtteranceRecord* CorpusManifest::counterpart(const UtteranceRecord& utt,
                                                   Role role) const {
  for (const auto& other : utterances) {
    if (other.role == role && other.speaker_id == utt.speaker_id &&
        other.pair_id == utt.pair_id && &other != &utt) {
      return &other;
    }
  }
  return nullptr;
}

EmbeddingSequence::EmbeddingSequence(std::size_t frame_count, std::size_t dim,
                                     std::vector<float> values)
    : frame_count_(frame_count), dim_(dim), values_(std::move(values)) {
  if (frame_count_ == 0 || dim_ == 0) {
    throw Error("embedding shape must be at least 1x1, got " +
                std::to_string(frame_count_) + "x" + std::to_string(dim_));
  }
  if (values_.size() != frame_count_ * dim_) {
    throw Error("embedding holds " + std::to_string(values_.size()) +
                " values, shape " + std::to_string(frame_count_) + "x" +
                std::to_string(dim_) + " needs " +
                std::to_string(frame_count_ * dim_));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error("embedding value " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace goldenbench::corpus
