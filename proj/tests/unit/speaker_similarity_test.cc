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

#include "goldenbench/corpus/embedding_io.h"
#include "goldenbench/corpus/manifest.h"
#include "goldenbench/error.h"
#include "goldenbench/speaker_similarity/secs.h"
#include "support/oracles.h"

namespace goldenbench::speaker_similarity {
namespace {

using Vec = std::vector<float>;

TEST(CosineTest, Examples) {
  const Vec v = {0.3f, -1.7f, 2.2f};
  EXPECT_EQ(cosine(v, v), 1.0);
  EXPECT_EQ(cosine(Vec{1, 0}, Vec{0, 1}), 0.0);
  EXPECT_NEAR(cosine(Vec{1, 2, 3}, Vec{4, 5, 6}), 0.974632, 1e-6);
  EXPECT_NEAR(cosine(Vec{1, 2, 3}, Vec{4, 5, 6}),
              32.0 / (std::sqrt(14.0) * std::sqrt(77.0)), 1e-12);
  EXPECT_EQ(cosine(Vec{1, 2}, Vec{-2, -4}), -1.0);
  EXPECT_THROW(cosine(Vec{1, 2}, Vec{1, 2, 3}), Error);
  EXPECT_THROW(cosine(Vec{0, 0}, Vec{1, 2}), Error);
}

TEST(CosineTest, SelfSimilarityIsExactlyOne) {
  goldenbench::testing::Rng rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    Vec v(1 + rng.index(300));
    for (auto& x : v) x = static_cast<float>(rng.uniform(-5, 5));
    ASSERT_EQ(cosine(v, v), 1.0);
  }
}

TEST(CosineTest, ScaleInvariance) {
  goldenbench::testing::Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    Vec a(16);
    Vec b(16);
    for (auto& x : a) x = static_cast<float>(rng.uniform(-1, 1));
    for (auto& x : b) x = static_cast<float>(rng.uniform(-1, 1));
    Vec scaled = a;
    for (auto& x : scaled) x *= 4.0f;  // power of two keeps floats exact
    EXPECT_NEAR(cosine(scaled, b), cosine(a, b), 1e-12);
    EXPECT_NEAR(cosine(a, b), cosine(b, a), 1e-15);
    const double c = cosine(a, b);
    EXPECT_LE(c, 1.0);
    EXPECT_GE(c, -1.0);
  }
}

SpeakerEmbeddingSet set(const std::string& id, std::vector<Vec> org,
                        std::vector<Vec> syn) {
  return {id, std::move(org), std::move(syn)};
}

TEST(SecsUttTest, Examples) {
  const Vec e1 = {1, 0};
  const Vec e2 = {0.6f, 0.8f};
  EXPECT_EQ(secs_utt({set("a", {e1, e2}, {e1, e2})}).corpus, 1.0);
  // Cosines {1, 0.5} for speaker a and {0} for speaker b.
  const Vec half = {0.5f, std::sqrt(3.0f) / 2.0f};
  const SecsScore s = secs_utt({set("a", {e1, e1}, {e1, half}),
                                set("b", {Vec{1, 0}}, {Vec{0, 1}})});
  EXPECT_NEAR(s.corpus, 0.375, 1e-7);
  EXPECT_NEAR(s.per_speaker.at("a"), 0.75, 1e-7);
  EXPECT_EQ(s.per_speaker.at("b"), 0.0);
  EXPECT_EQ(secs_utt({set("a", {Vec{1, 0}, Vec{0, 2}}, {Vec{0, 1}, Vec{3, 0}})}).corpus,
            0.0);
}

TEST(SecsUttTest, RequiresPairing) {
  EXPECT_THROW(secs_utt({set("a", {Vec{1, 0}}, {Vec{1, 0}, Vec{0, 1}})}), Error);
  EXPECT_THROW(secs_utt({}), Error);
}

TEST(SecsSpkTest, Examples) {
  EXPECT_EQ(secs_spk({set("a", {Vec{1, 2}}, {Vec{1, 2}}),
                      set("b", {Vec{3, 1}}, {Vec{3, 1}})})
                .corpus,
            1.0);
  EXPECT_DOUBLE_EQ(
      secs_spk({set("a", {Vec{1, 0}, Vec{0, 1}}, {Vec{1, 0}, Vec{0, 1}})}).corpus,
      0.5);
  const Vec e1 = {1, 0};
  const Vec e2 = {0.6f, 0.8f};
  const SecsScore s = secs_spk({set("a", {e1, e2}, {e1, e2})});
  EXPECT_NEAR(s.corpus, 0.8, 1e-7);
  EXPECT_LT(s.corpus, 1.0);
}

TEST(SecsSpkTest, ExcludeDiagonal) {
  const Vec e1 = {1, 0};
  const Vec e2 = {0.6f, 0.8f};
  const SecsScore s = secs_spk({set("a", {e1, e2}, {e1, e2})}, true);
  EXPECT_NEAR(s.corpus, 0.6, 1e-7);
  EXPECT_THROW(secs_spk({set("a", {e1}, {e1})}, true), Error);
}

TEST(SecsSpkTest, MatchesDoubleSumOracle) {
  goldenbench::testing::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SpeakerEmbeddingSet> sets;
    const std::size_t speakers = 1 + rng.index(4);
    for (std::size_t s = 0; s < speakers; ++s) {
      const std::size_t u = 1 + rng.index(5);
      std::vector<Vec> org(u, Vec(6));
      std::vector<Vec> syn(u, Vec(6));
      for (auto& v : org)
        for (auto& x : v) x = static_cast<float>(rng.uniform(-1, 1));
      for (auto& v : syn)
        for (auto& x : v) x = static_cast<float>(rng.uniform(-1, 1));
      sets.push_back(set("s" + std::to_string(s), org, syn));
    }
    double total_spk = 0.0;
    double total_utt = 0.0;
    for (const auto& st : sets) {
      double spk = 0.0;
      double utt = 0.0;
      for (std::size_t i = 0; i < st.original.size(); ++i) {
        for (std::size_t j = 0; j < st.synthesized.size(); ++j) {
          double dot = 0, na = 0, nb = 0;
          for (std::size_t k = 0; k < 6; ++k) {
            dot += double(st.original[i][k]) * st.synthesized[j][k];
            na += double(st.original[i][k]) * st.original[i][k];
            nb += double(st.synthesized[j][k]) * st.synthesized[j][k];
          }
          const double c = dot / std::sqrt(na * nb);
          spk += c;
          if (i == j) utt += c;
        }
      }
      const double u = static_cast<double>(st.original.size());
      total_spk += spk / (u * u);
      total_utt += utt / u;
    }
    const SecsReport r = secs_report(sets);
    EXPECT_NEAR(r.spk.corpus, total_spk / sets.size(), 1e-12);
    EXPECT_NEAR(r.utt.corpus, total_utt / sets.size(), 1e-12);
  }
}

TEST(SecsSpkTest, PermutationInvariance) {
  goldenbench::testing::Rng rng(13);
  std::vector<Vec> org(5, Vec(4));
  std::vector<Vec> syn(5, Vec(4));
  for (auto& v : org)
    for (auto& x : v) x = static_cast<float>(rng.uniform(-1, 1));
  for (auto& v : syn)
    for (auto& x : v) x = static_cast<float>(rng.uniform(-1, 1));
  const double base = secs_spk({set("a", org, syn)}).corpus;
  std::vector<Vec> syn_rot(syn.begin() + 2, syn.end());
  syn_rot.insert(syn_rot.end(), syn.begin(), syn.begin() + 2);
  EXPECT_NEAR(secs_spk({set("a", org, syn_rot)}).corpus, base, 1e-12);
}

TEST(CollectTest, OkFixture) {
  const auto dir = goldenbench::testing::fixture_dir() / "ok";
  const auto m = corpus::read_manifest_file(dir / "ok.manifest.jsonl");
  const EmbeddingLoader load = [&](const std::string& rel) {
    return corpus::load_embedding(dir / rel);
  };
  const auto original = collect_embedding_sets(m, corpus::Role::kOriginal, load);
  ASSERT_EQ(original.size(), 2u);
  EXPECT_EQ(original[0].original.size(), 2u);
  const SecsReport self = secs_report(original);
  EXPECT_EQ(self.utt.corpus, 1.0);
  EXPECT_LT(self.spk.corpus, 1.0);
  const SecsReport golden =
      secs_report(collect_embedding_sets(m, corpus::Role::kGolden, load));
  EXPECT_LT(golden.utt.corpus, 1.0);
  EXPECT_GT(golden.utt.corpus, 0.5);
}

TEST(CollectTest, MissingEmbeddingIsAnError) {
  const auto dir = goldenbench::testing::fixture_dir() / "synthetic40";
  const auto m = corpus::read_manifest_file(dir / "synthetic40.manifest.jsonl");
  const EmbeddingLoader load = [&](const std::string& rel) {
    return corpus::load_embedding(dir / rel);
  };
  EXPECT_THROW(collect_embedding_sets(m, corpus::Role::kGolden, load), Error);
}

}  // namespace
}  // namespace goldenbench::speaker_similarity
