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

#ifndef GOLDENBENCH_INTELLIGIBILITY_WER_H_
#define GOLDENBENCH_INTELLIGIBILITY_WER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "goldenbench/corpus/types.h"

namespace goldenbench::intelligibility {

struct NormalizationPolicy {
  bool lowercase = true;
  // Drops ASCII characters other than letters, digits, apostrophe and
  // whitespace. Bytes >= 0x80 (UTF-8 sequences) are kept.
  bool strip_punctuation = true;
  // true: any run of ASCII whitespace separates tokens. false: only the space
  // character separates tokens; tabs and newlines stay inside tokens.
  bool collapse_whitespace = true;
};

// Never returns empty tokens. Idempotent: normalizing the space-joined
// output yields the same tokens.
std::vector<std::string> normalize_tokens(std::string_view text,
                                          const NormalizationPolicy& policy);

struct AlignmentCounts {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t reference_length = 0;

  std::size_t errors() const { return substitutions + deletions + insertions; }
  AlignmentCounts& operator+=(const AlignmentCounts& other);
  bool operator==(const AlignmentCounts&) const = default;
};

// Unit-cost Levenshtein alignment. Among optimal alignments the backtrace
// (from the end) prefers substitution/match, then insertion, then deletion.
AlignmentCounts align_tokens(const std::vector<std::string>& reference,
                             const std::vector<std::string>& hypothesis);

// (S + D + I) / N as a fraction (not percent). Throws Error when N == 0.
double wer(const AlignmentCounts& counts);

// 100 * (baseline - system) / baseline. Units of the two rates must agree.
// Throws Error when baseline <= 0.
double werr(double baseline_wer, double system_wer);

enum class Pooling { kMicro, kMacro };

struct CorpusWer {
  double rate = 0.0;
  AlignmentCounts totals;
  std::size_t utterance_count = 0;
};

// Micro: sum of errors over sum of reference lengths. Macro: unweighted
// mean of per-utterance WER. Throws Error when no utterance has `role`, when
// a selected utterance lacks a hypothesis (naming it), or when the pooled
// reference length is zero.
CorpusWer corpus_wer(const corpus::CorpusManifest& manifest, corpus::Role role,
                     const NormalizationPolicy& policy,
                     Pooling pooling = Pooling::kMicro);

}  // namespace goldenbench::intelligibility

#endif  // GOLDENBENCH_INTELLIGIBILITY_WER_H_
