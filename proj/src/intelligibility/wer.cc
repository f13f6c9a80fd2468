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

#include "goldenbench/intelligibility/wer.h"

#include <algorithm>

#include "goldenbench/error.h"

namespace goldenbench::intelligibility {

namespace {

bool is_ascii_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_kept_char(unsigned char c) {
  if (c >= 0x80) return true;
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '\'' || is_ascii_space(c);
}

}  // namespace

std::vector<std::string> normalize_tokens(std::string_view text,
                                          const NormalizationPolicy& policy) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (const char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    const bool separator =
        policy.collapse_whitespace ? is_ascii_space(c) : c == ' ';
    if (separator) {
      flush();
      continue;
    }
    if (policy.strip_punctuation && !is_kept_char(c)) continue;
    if (policy.lowercase && c >= 'A' && c <= 'Z') c = c - 'A' + 'a';
    current.push_back(static_cast<char>(c));
  }
  flush();
  return tokens;
}

AlignmentCounts& AlignmentCounts::operator+=(const AlignmentCounts& other) {
  substitutions += other.substitutions;
  deletions += other.deletions;
  insertions += other.insertions;
  reference_length += other.reference_length;
  return *this;
}

AlignmentCounts align_tokens(const std::vector<std::string>& reference,
                             const std::vector<std::string>& hypothesis) {
  const std::size_t n = reference.size();
  const std::size_t m = hypothesis.size();
  // cost[i][j]: edit distance between reference[0, i) and hypothesis[0, j).
  std::vector<std::size_t> cost((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& {
    return cost[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag =
          at(i - 1, j - 1) + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i, j - 1) + 1, at(i - 1, j) + 1});
    }
  }

  AlignmentCounts counts;
  counts.reference_length = n;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool match = reference[i - 1] == hypothesis[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (match ? 0 : 1)) {
        if (!match) ++counts.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (j > 0 && at(i, j) == at(i, j - 1) + 1) {
      ++counts.insertions;
      --j;
    } else {
      ++counts.deletions;
      --i;
    }
  }
  return counts;
}

double wer(const AlignmentCounts& counts) {
  if (counts.reference_length == 0) {
    throw Error("WER undefined for an empty reference");
  }
  return static_cast<double>(counts.errors()) /
         static_cast<double>(counts.reference_length);
}

double werr(double baseline_wer, double system_wer) {
  if (!(baseline_wer > 0.0)) {
    throw Error("WERR undefined for a nonpositive baseline WER");
  }
  return 100.0 * (baseline_wer - system_wer) / baseline_wer;
}

CorpusWer corpus_wer(const corpus::CorpusManifest& manifest, corpus::Role role,
                     const NormalizationPolicy& policy, Pooling pooling) {
  CorpusWer result;
  double macro_sum = 0.0;
  for (const auto& utt : manifest.utterances) {
    if (utt.role != role) continue;
    if (!utt.asr_hypothesis) {
      throw Error("utterance " + utt.utterance_id + " has no ASR hypothesis");
    }
    const AlignmentCounts counts =
        align_tokens(normalize_tokens(utt.text_prompt, policy),
                     normalize_tokens(*utt.asr_hypothesis, policy));
    if (pooling == Pooling::kMacro) {
      if (counts.reference_length == 0) {
        throw Error("utterance " + utt.utterance_id +
                    " has an empty reference; macro WER undefined");
      }
      macro_sum += wer(counts);
    }
    result.totals += counts;
    ++result.utterance_count;
  }
  if (result.utterance_count == 0) {
    throw Error("no utterances with role " +
                std::string(corpus::to_string(role)));
  }
  result.rate = pooling == Pooling::kMicro
                    ? wer(result.totals)
                    : macro_sum / static_cast<double>(result.utterance_count);
  return result;
}

}  // namespace goldenbench::intelligibility
