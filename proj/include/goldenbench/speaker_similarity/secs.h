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

#ifndef GOLDENBENCH_SPEAKER_SIMILARITY_SECS_H_
#define GOLDENBENCH_SPEAKER_SIMILARITY_SECS_H_

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "goldenbench/corpus/types.h"

namespace goldenbench::speaker_similarity {

// Speaker embeddings of one speaker. original[i] and synthesized[i] share a
// prompt when the set is built for utterance-level comparison.
struct SpeakerEmbeddingSet {
  std::string speaker_id;
  std::vector<std::vector<float>> original;
  std::vector<std::vector<float>> synthesized;
};

// a.b / (|a||b|) in 64-bit, clamped to [-1, 1]. Throws Error on a dim
// mismatch or a zero-norm vector.
double cosine(std::span<const float> a, std::span<const float> b);

struct SecsScore {
  double corpus = 0.0;
  // Per-speaker means; the corpus value is their unweighted mean.
  std::map<std::string, double> per_speaker;
};

// Mean over speakers of the mean paired cosine cos(original[i],
// synthesized[i]). Throws Error on an empty list or when a speaker's lists
// differ in length or are empty.
SecsScore secs_utt(const std::vector<SpeakerEmbeddingSet>& sets);

// Mean over speakers of the mean cosine over every (original[i],
// synthesized[j]) pair, i == j included. With exclude_diagonal the i == j
// terms are dropped and the normalizer shrinks accordingly; a speaker with
// no off-diagonal pair is then an error.
SecsScore secs_spk(const std::vector<SpeakerEmbeddingSet>& sets,
                   bool exclude_diagonal = false);

struct SecsReport {
  SecsScore utt;
  SecsScore spk;
};

SecsReport secs_report(const std::vector<SpeakerEmbeddingSet>& sets,
                       bool exclude_diagonal = false);

using EmbeddingLoader =
    std::function<corpus::EmbeddingSequence(const std::string& relative_path)>;

// One set per speaker, in first-appearance order. Each original utterance
// with a `synthesized_role` counterpart contributes one aligned pair. With
// synthesized_role == kOriginal every original is paired with itself.
// Throws Error when a paired utterance lacks spk_emb, an embedding is not
// 1 x dim, or no pair exists at all.
std::vector<SpeakerEmbeddingSet> collect_embedding_sets(
    const corpus::CorpusManifest& manifest, corpus::Role synthesized_role,
    const EmbeddingLoader& load);

}  // namespace goldenbench::speaker_similarity

#endif  // GOLDENBENCH_SPEAKER_SIMILARITY_SECS_H_
