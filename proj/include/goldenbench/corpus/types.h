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

#ifndef GOLDENBENCH_CORPUS_TYPES_H_
#define GOLDENBENCH_CORPUS_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace goldenbench::corpus {

// original: the learner's own recording. golden: resynthesis of the same
// prompt in the learner's voice. l1: resynthesis in a native reference voice.
enum class Role { kOriginal, kGolden, kL1 };

std::string_view to_string(Role role);
// Throws ParseError listing the legal values.
Role parse_role(std::string_view text);

struct UtteranceRecord {
  std::string utterance_id;
  std::string speaker_id;
  Role role = Role::kOriginal;
  // Join key between an original utterance and its resyntheses.
  std::string pair_id;
  std::string text_prompt;
  std::optional<std::string> asr_hypothesis;
  std::optional<std::string> speaker_embedding_path;
  std::optional<std::string> frame_embedding_path;
  std::optional<double> mos;

  bool operator==(const UtteranceRecord&) const = default;
};

struct SpeakerRecord {
  std::string speaker_id;
  std::map<std::string, double> scores;
  std::optional<std::string> group;

  bool operator==(const SpeakerRecord&) const = default;
};

struct CorpusManifest {
  std::string corpus_id;
  std::vector<UtteranceRecord> utterances;
  std::vector<SpeakerRecord> speakers;
  // kind:"meta" lines, kept verbatim (serialized JSON) for provenance.
  std::vector<std::string> metadata;

  const SpeakerRecord* find_speaker(std::string_view speaker_id) const;
  const UtteranceRecord* find_utterance(std::string_view utterance_id) const;
  // The first utterance of `role` sharing speaker and pair_id with `utt`.
  const UtteranceRecord* counterpart(const UtteranceRecord& utt,
                                     Role role) const;

  bool operator==(const CorpusManifest&) const = default;
};

// A frame_count x dim row-major float matrix. Speaker embeddings are the
// frame_count == 1 case.
class EmbeddingSequence {
 public:
  // Throws Error unless frame_count, dim >= 1, values.size() matches and
  // every value is finite.
  EmbeddingSequence(std::size_t frame_count, std::size_t dim,
                    std::vector<float> values);

  std::size_t frame_count() const { return frame_count_; }
  std::size_t dim() const { return dim_; }
  std::span<const float> values() const { return values_; }
  std::span<const float> frame(std::size_t index) const {
    return std::span<const float>(values_).subspan(index * dim_, dim_);
  }

  bool operator==(const EmbeddingSequence&) const = default;

 private:
  std::size_t frame_count_;
  std::size_t dim_;
  std::vector<float> values_;
};

struct ValidationIssue {
  // "line N", "utt <id>", "spk <id>" or an asset path.
  std::string locator;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;

  bool accepted() const { return errors.empty(); }
};

}  // namespace goldenbench::corpus

#endif  // GOLDENBENCH_CORPUS_TYPES_H_
