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

#include <cmath>

#include "gtest/gtest.h"

#include "goldenbench/corpus/manifest.h"
#include "goldenbench/error.h"
#include "goldenbench/intelligibility/wer.h"
#include "support/oracles.h"

namespace goldenbench::intelligibility {
namespace {

using corpus::Role;
using Tokens = std::vector<std::string>;

TEST(NormalizeTest, Examples) {
  const NormalizationPolicy all;
  EXPECT_EQ(normalize_tokens("The cat, sat.", all), (Tokens{"the", "cat", "sat"}));
  EXPECT_EQ(normalize_tokens("", all), Tokens{});
  EXPECT_EQ(normalize_tokens("  a   b ", all), (Tokens{"a", "b"}));
  EXPECT_EQ(normalize_tokens("tab\tand\nnewline", all),
            (Tokens{"tab", "and", "newline"}));
  EXPECT_EQ(normalize_tokens("Don't stop-me", all), (Tokens{"don't", "stopme"}));
  EXPECT_EQ(normalize_tokens("... !!", all), Tokens{});
}

TEST(NormalizeTest, FlagsAreIndependent) {
  NormalizationPolicy keep_case;
  keep_case.lowercase = false;
  EXPECT_EQ(normalize_tokens("The Cat.", keep_case), (Tokens{"The", "Cat"}));

  NormalizationPolicy keep_punct;
  keep_punct.strip_punctuation = false;
  EXPECT_EQ(normalize_tokens("The cat, sat.", keep_punct),
            (Tokens{"the", "cat,", "sat."}));

  NormalizationPolicy strict_space;
  strict_space.collapse_whitespace = false;
  EXPECT_EQ(normalize_tokens("a\tb  c", strict_space), (Tokens{"a\tb", "c"}));
}

TEST(NormalizeTest, KeepsNonAsciiBytes) {
  EXPECT_EQ(normalize_tokens("Café NAÏVE", NormalizationPolicy{}),
            (Tokens{"café", "naÏve"}));
}

TEST(AlignTest, Examples) {
  EXPECT_EQ(align_tokens({"the", "cat", "sat"}, {"the", "cat", "sat"}),
            (AlignmentCounts{0, 0, 0, 3}));
  EXPECT_EQ(align_tokens({"the", "cat", "sat"}, {"the", "bat", "sat", "down"}),
            (AlignmentCounts{1, 0, 1, 3}));
  EXPECT_EQ(align_tokens({"a", "b"}, {}), (AlignmentCounts{0, 2, 0, 2}));
  EXPECT_EQ(align_tokens({}, {"a"}), (AlignmentCounts{0, 0, 1, 0}));
}

TEST(AlignTest, TieBreakPrefersSubstitution) {
  // "a b" vs "c": one substitution plus one deletion either way.
  const AlignmentCounts c = align_tokens({"a", "b"}, {"c"});
  EXPECT_EQ(c, (AlignmentCounts{1, 1, 0, 2}));
}

TEST(AlignTest, MatchesBruteForceOracle) {
  goldenbench::testing::Rng rng(3);
  const Tokens alphabet = {"x", "y", "z"};
  for (int trial = 0; trial < 2000; ++trial) {
    Tokens ref(rng.index(7));
    Tokens hyp(rng.index(7));
    for (auto& t : ref) t = alphabet[rng.index(3)];
    for (auto& t : hyp) t = alphabet[rng.index(3)];
    const AlignmentCounts c = align_tokens(ref, hyp);
    ASSERT_EQ(c.errors(), goldenbench::testing::brute_edit_distance(ref, hyp));
    ASSERT_EQ(c.reference_length, ref.size());
    // N = S + D + matches and M = S + I + matches.
    ASSERT_EQ(ref.size() + c.insertions, hyp.size() + c.deletions);
  }
}

TEST(AlignTest, SymmetryOfDistance) {
  goldenbench::testing::Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    Tokens a(rng.index(8));
    Tokens b(rng.index(8));
    for (auto& t : a) t = std::string(1, static_cast<char>('a' + rng.index(4)));
    for (auto& t : b) t = std::string(1, static_cast<char>('a' + rng.index(4)));
    const auto ab = align_tokens(a, b);
    const auto ba = align_tokens(b, a);
    ASSERT_EQ(ab.errors(), ba.errors());
  }
}

TEST(WerTest, Formula) {
  EXPECT_EQ(wer({0, 0, 0, 3}), 0.0);
  EXPECT_NEAR(wer({1, 0, 1, 3}), 0.6667, 5e-5);
  EXPECT_EQ(wer({0, 2, 0, 2}), 1.0);
  EXPECT_EQ(wer({0, 0, 5, 2}), 2.5);
  EXPECT_THROW(wer({0, 0, 1, 0}), Error);
}

TEST(WerrTest, ReductionTable) {
  const struct {
    double baseline, system, expected;
  } rows[] = {
      {7.42, 4.84, 34.77},   {7.42, 5.03, 32.21},   {21.07, 4.32, 79.50},
      {21.07, 4.63, 78.03},  {25.02, 15.95, 36.25}, {25.02, 16.47, 34.17},
  };
  for (const auto& r : rows) {
    EXPECT_NEAR(werr(r.baseline, r.system), r.expected, 0.01)
        << r.baseline << " -> " << r.system;
  }
  for (double x : {0.1, 1.0, 37.5}) EXPECT_EQ(werr(x, x), 0.0);
  EXPECT_LT(werr(5.0, 6.0), 0.0);
  EXPECT_THROW(werr(0.0, 1.0), Error);
  EXPECT_THROW(werr(-1.0, 1.0), Error);
}

corpus::CorpusManifest tiny(const std::vector<std::pair<std::string, std::string>>& rows) {
  corpus::CorpusManifest m;
  m.corpus_id = "tiny";
  int i = 0;
  for (const auto& [prompt, hyp] : rows) {
    corpus::UtteranceRecord u;
    u.utterance_id = "u" + std::to_string(i);
    u.speaker_id = "s";
    u.role = Role::kGolden;
    u.pair_id = "p" + std::to_string(i++);
    u.text_prompt = prompt;
    u.asr_hypothesis = hyp;
    m.utterances.push_back(u);
  }
  return m;
}

TEST(CorpusWerTest, PoolsErrorsOverReferenceWords) {
  // 1 error / 4 words and 1 error / 6 words.
  const auto m = tiny({{"a b c d", "a b c e"}, {"a b c d e f", "a b c d e"}});
  const CorpusWer micro = corpus_wer(m, Role::kGolden, {});
  EXPECT_DOUBLE_EQ(micro.rate, 0.2);
  EXPECT_EQ(micro.utterance_count, 2u);
  EXPECT_EQ(micro.totals, (AlignmentCounts{1, 1, 0, 10}));
  const CorpusWer macro = corpus_wer(m, Role::kGolden, {}, Pooling::kMacro);
  EXPECT_DOUBLE_EQ(macro.rate, (0.25 + 1.0 / 6.0) / 2.0);
}

TEST(CorpusWerTest, PerfectAndMissing) {
  const auto m = tiny({{"Hello, World", "hello world"}, {"x", "x"}});
  EXPECT_EQ(corpus_wer(m, Role::kGolden, {}).rate, 0.0);
  EXPECT_THROW(corpus_wer(m, Role::kL1, {}), Error);
  auto no_hyp = m;
  no_hyp.utterances[1].asr_hypothesis.reset();
  EXPECT_THROW(corpus_wer(no_hyp, Role::kGolden, {}), Error);
  EXPECT_THROW(corpus_wer(tiny({{"", "extra"}}), Role::kGolden, {}), Error);
}

TEST(CorpusWerTest, OkFixtureCounts) {
  const auto m = corpus::read_manifest_file(goldenbench::testing::fixture_dir() /
                                            "ok" / "ok.manifest.jsonl");
  const CorpusWer org = corpus_wer(m, Role::kOriginal, {});
  const CorpusWer gld = corpus_wer(m, Role::kGolden, {});
  const CorpusWer l1 = corpus_wer(m, Role::kL1, {});
  EXPECT_EQ(org.totals, (AlignmentCounts{2, 1, 0, 16}));
  EXPECT_EQ(gld.totals, (AlignmentCounts{1, 0, 0, 16}));
  EXPECT_EQ(l1.totals, (AlignmentCounts{2, 3, 2, 16}));
  EXPECT_DOUBLE_EQ(org.rate, 3.0 / 16.0);
  EXPECT_DOUBLE_EQ(gld.rate, 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(l1.rate, 7.0 / 16.0);
  EXPECT_NEAR(werr(100 * org.rate, 100 * gld.rate), 66.6667, 1e-4);
}

}  // namespace
}  // namespace goldenbench::intelligibility
