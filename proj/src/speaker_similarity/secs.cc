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

#include "goldenbench/speaker_similarity/secs.h"

#include <algorithm>
#include <cmath>

#include "goldenbench/error.h"
#include "goldenbench/simd/kernels.h"

namespace goldenbench::speaker_similarity {

double cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error("cosine: dim mismatch (" + std::to_string(a.size()) + " vs " +
                std::to_string(b.size()) + ")");
  }
  const simd::DotNorms sums = simd::dot_norms(a, b);
  if (sums.norm_sq_a == 0.0 || sums.norm_sq_b == 0.0) {
    throw Error("cosine: zero-norm vector");
  }
  // sqrt(x * x) == x exactly, so cosine(v, v) is exactly 1.
  const double value = sums.dot / std::sqrt(sums.norm_sq_a * sums.norm_sq_b);
  return std::clamp(value, -1.0, 1.0);
}

namespace {

void require_nonempty(const std::vector<SpeakerEmbeddingSet>& sets) {
  if (sets.empty()) throw Error("SECS needs at least one speaker");
}

double mean_over_speakers(const std::map<std::string, double>& per_speaker) {
  double sum = 0.0;
  for (const auto& [id, value] : per_speaker) sum += value;
  return sum / static_cast<double>(per_speaker.size());
}

}  // namespace

SecsScore secs_utt(const std::vector<SpeakerEmbeddingSet>& sets) {
  require_nonempty(sets);
  SecsScore score;
  for (const auto& set : sets) {
    if (set.original.size() != set.synthesized.size()) {
      throw Error("speaker " + set.speaker_id + ": " +
                  std::to_string(set.original.size()) + " original vs " +
                  std::to_string(set.synthesized.size()) +
                  " synthesized embeddings; SECS_utt needs aligned pairs");
    }
    if (set.original.empty()) {
      throw Error("speaker " + set.speaker_id + " has no embeddings");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < set.original.size(); ++i) {
      sum += cosine(set.original[i], set.synthesized[i]);
    }
    if (!score.per_speaker
             .emplace(set.speaker_id,
                      sum / static_cast<double>(set.original.size()))
             .second) {
      throw Error("speaker " + set.speaker_id + " listed twice");
    }
  }
  score.corpus = mean_over_speakers(score.per_speaker);
  return score;
}

SecsScore secs_spk(const std::vector<SpeakerEmbeddingSet>& sets,
                   bool exclude_diagonal) {
  require_nonempty(sets);
  SecsScore score;
  for (const auto& set : sets) {
    if (set.original.empty() || set.synthesized.empty()) {
      throw Error("speaker " + set.speaker_id + " has no embeddings");
    }
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < set.original.size(); ++i) {
      for (std::size_t j = 0; j < set.synthesized.size(); ++j) {
        if (exclude_diagonal && i == j) continue;
        sum += cosine(set.original[i], set.synthesized[j]);
        ++pairs;
      }
    }
    if (pairs == 0) {
      throw Error("speaker " + set.speaker_id +
                  " has a single utterance; no cross-utterance pair exists");
    }
    if (!score.per_speaker
             .emplace(set.speaker_id, sum / static_cast<double>(pairs))
             .second) {
      throw Error("speaker " + set.speaker_id + " listed twice");
    }
  }
  score.corpus = mean_over_speakers(score.per_speaker);
  return score;
}

SecsReport secs_report(const std::vector<SpeakerEmbeddingSet>& sets,
                       bool exclude_diagonal) {
  return {secs_utt(sets), secs_spk(sets, exclude_diagonal)};
}

namespace {

std::vector<float> load_speaker_vector(const corpus::UtteranceRecord& utt,
                                       const EmbeddingLoader& load) {
  if (!utt.speaker_embedding_path) {
    throw Error("utterance " + utt.utterance_id + " has no spk_emb");
  }
  const corpus::EmbeddingSequence seq = load(*utt.speaker_embedding_path);
  if (seq.frame_count() != 1) {
    throw Error("speaker embedding of " + utt.utterance_id + " has " +
                std::to_string(seq.frame_count()) + " frames (expected 1)");
  }
  return {seq.values().begin(), seq.values().end()};
}

}  // namespace

std::vector<SpeakerEmbeddingSet> collect_embedding_sets(
    const corpus::CorpusManifest& manifest, corpus::Role synthesized_role,
    const EmbeddingLoader& load) {
  std::vector<SpeakerEmbeddingSet> sets;
  std::map<std::string, std::size_t> index;
  for (const auto& utt : manifest.utterances) {
    if (utt.role != corpus::Role::kOriginal) continue;
    const corpus::UtteranceRecord* synth =
        synthesized_role == corpus::Role::kOriginal
            ? &utt
            : manifest.counterpart(utt, synthesized_role);
    if (synth == nullptr) continue;
    auto [it, inserted] = index.emplace(utt.speaker_id, sets.size());
    if (inserted) sets.push_back({utt.speaker_id, {}, {}});
    SpeakerEmbeddingSet& set = sets[it->second];
    set.original.push_back(load_speaker_vector(utt, load));
    set.synthesized.push_back(load_speaker_vector(*synth, load));
  }
  if (sets.empty()) {
    throw Error("no original utterance has a " +
                std::string(corpus::to_string(synthesized_role)) +
                " counterpart");
  }
  return sets;
}

}  // namespace goldenbench::speaker_similarity
