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

#include "goldenbench/alignment/dtw.h"
#include "goldenbench/error.h"
#include "support/oracles.h"

namespace goldenbench::alignment {
namespace {

using corpus::EmbeddingSequence;
using goldenbench::testing::Frames;
using goldenbench::testing::Rng;

EmbeddingSequence seq(std::size_t dim, std::vector<float> values) {
  const std::size_t frames = values.size() / dim;
  return EmbeddingSequence(frames, dim, std::move(values));
}

EmbeddingSequence random_seq(Rng& rng, std::size_t frames, std::size_t dim) {
  std::vector<float> v(frames * dim);
  for (auto& x : v) x = static_cast<float>(rng.uniform(-2, 2));
  return EmbeddingSequence(frames, dim, v);
}

Frames to_frames(const EmbeddingSequence& s) {
  Frames out(s.frame_count());
  for (std::size_t i = 0; i < s.frame_count(); ++i) {
    const auto f = s.frame(i);
    out[i].assign(f.begin(), f.end());
  }
  return out;
}

TEST(LocalCostTest, Examples) {
  const std::vector<float> v = {1.5f, -2.0f};
  EXPECT_EQ(local_cost(v, v, LocalMetric::kEuclidean), 0.0);
  EXPECT_EQ(local_cost(std::vector<float>{0, 0}, std::vector<float>{3, 4},
                       LocalMetric::kEuclidean),
            5.0);
  EXPECT_EQ(local_cost(std::vector<float>{0, 0}, std::vector<float>{3, 4},
                       LocalMetric::kSquaredEuclidean),
            25.0);
  EXPECT_EQ(local_cost(std::vector<float>{1, 0}, std::vector<float>{0, 1},
                       LocalMetric::kCosineDistance),
            1.0);
  EXPECT_THROW(local_cost(std::vector<float>{1}, std::vector<float>{1, 2},
                          LocalMetric::kEuclidean),
               Error);
}

TEST(LocalMetricTest, Names) {
  for (LocalMetric m : {LocalMetric::kEuclidean, LocalMetric::kSquaredEuclidean,
                        LocalMetric::kCosineDistance}) {
    EXPECT_EQ(parse_local_metric(to_string(m)), m);
  }
  EXPECT_THROW(parse_local_metric("manhattan"), Error);
}

TEST(DtwTest, SelfAlignmentCostsNothing) {
  Rng rng(1);
  const auto a = random_seq(rng, 7, 3);
  const DtwResult r = dtw_cost(a, a, {});
  EXPECT_EQ(r.cost, 0.0);
  EXPECT_EQ(r.path_length, 7u);
  EXPECT_EQ(r.normalized_cost, 0.0);
}

TEST(DtwTest, HandExample) {
  const auto a = seq(1, {0, 1, 2});
  const auto b = seq(1, {0, 2});
  DtwConfig config;
  config.materialize_path = true;
  const DtwResult r = dtw_cost(a, b, config);
  EXPECT_EQ(r.cost, 1.0);
  EXPECT_EQ(r.path_length, 3u);
  EXPECT_DOUBLE_EQ(r.normalized_cost, 1.0 / 3.0);
  ASSERT_TRUE(r.path.has_value());
  EXPECT_EQ(r.path->front(), (PathStep{0, 0}));
  EXPECT_EQ(r.path->back(), (PathStep{2, 1}));
  EXPECT_EQ(r.value(config), r.normalized_cost);
  config.normalize_by_path_length = false;
  EXPECT_EQ(r.value(config), 1.0);
}

TEST(DtwTest, MatchesExhaustivePathOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t dim = 1 + rng.index(4);
    const auto a = random_seq(rng, 1 + rng.index(7), dim);
    const auto b = random_seq(rng, 1 + rng.index(7), dim);
    const auto oracle =
        goldenbench::testing::brute_dtw(to_frames(a), to_frames(b));
    const DtwResult r = dtw_cost(a, b, {});
    ASSERT_NEAR(r.cost, oracle.cost, 1e-9 * std::max(1.0, oracle.cost));
    ASSERT_EQ(r.path_length, oracle.length);
    ASSERT_NEAR(r.normalized_cost, oracle.cost / oracle.length, 1e-9);
  }
}

TEST(DtwTest, BandedMatchesBandedOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t dim = 1 + rng.index(3);
    const std::size_t n = 1 + rng.index(7);
    const std::size_t m = 1 + rng.index(7);
    const std::size_t radius = 1 + rng.index(3);
    const auto a = random_seq(rng, n, dim);
    const auto b = random_seq(rng, m, dim);
    DtwConfig config;
    config.band_radius = radius;
    const std::size_t gap = n > m ? n - m : m - n;
    if (gap > radius) {
      EXPECT_THROW(dtw_cost(a, b, config), Error);
      continue;
    }
    const auto oracle = goldenbench::testing::brute_dtw(
        to_frames(a), to_frames(b), static_cast<long>(radius));
    const DtwResult r = dtw_cost(a, b, config);
    ASSERT_NEAR(r.cost, oracle.cost, 1e-9 * std::max(1.0, oracle.cost));
    ASSERT_EQ(r.path_length, oracle.length);
  }
}

TEST(DtwTest, WideBandEqualsUnbanded) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_seq(rng, 1 + rng.index(20), 3);
    const auto b = random_seq(rng, 1 + rng.index(20), 3);
    DtwConfig banded;
    banded.band_radius = 20;
    const DtwResult x = dtw_cost(a, b, {});
    const DtwResult y = dtw_cost(a, b, banded);
    ASSERT_EQ(x.cost, y.cost);
    ASSERT_EQ(x.path_length, y.path_length);
    // Narrowing the band can only raise the optimum.
    DtwConfig narrow;
    narrow.band_radius = std::max(a.frame_count(), b.frame_count()) / 2 + 1;
    const std::size_t gap = a.frame_count() > b.frame_count()
                                ? a.frame_count() - b.frame_count()
                                : b.frame_count() - a.frame_count();
    if (gap <= *narrow.band_radius) {
      ASSERT_GE(dtw_cost(a, b, narrow).cost, x.cost);
    }
  }
}

TEST(DtwTest, SymmetricUnderSwap) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_seq(rng, 1 + rng.index(12), 4);
    const auto b = random_seq(rng, 1 + rng.index(12), 4);
    EXPECT_NEAR(dtw_cost(a, b, {}).cost, dtw_cost(b, a, {}).cost, 1e-12);
  }
}

TEST(DtwTest, MaterializedPathIsMonotoneAndConsistent) {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_seq(rng, 1 + rng.index(15), 2);
    const auto b = random_seq(rng, 1 + rng.index(15), 2);
    DtwConfig config;
    config.materialize_path = true;
    config.local_metric = trial % 2 ? LocalMetric::kSquaredEuclidean
                                    : LocalMetric::kEuclidean;
    const DtwResult r = dtw_cost(a, b, config);
    ASSERT_TRUE(r.path.has_value());
    const auto& path = *r.path;
    ASSERT_EQ(path.size(), r.path_length);
    ASSERT_EQ(path.front(), (PathStep{0, 0}));
    ASSERT_EQ(path.back(), (PathStep{a.frame_count() - 1, b.frame_count() - 1}));
    double total = local_cost(a.frame(0), b.frame(0), config.local_metric);
    for (std::size_t k = 1; k < path.size(); ++k) {
      const std::size_t di = path[k].first - path[k - 1].first;
      const std::size_t dj = path[k].second - path[k - 1].second;
      ASSERT_TRUE((di == 1 && dj == 1) || (di == 1 && dj == 0) ||
                  (di == 0 && dj == 1));
      total += local_cost(a.frame(path[k].first), b.frame(path[k].second),
                          config.local_metric);
    }
    ASSERT_NEAR(total, r.cost, 1e-9 * std::max(1.0, r.cost));
    config.materialize_path = false;
    const DtwResult lean = dtw_cost(a, b, config);
    ASSERT_EQ(lean.cost, r.cost);
    ASSERT_EQ(lean.path_length, r.path_length);
  }
}

TEST(DtwTest, RejectsDimMismatchAndZeroBand) {
  EXPECT_THROW(dtw_cost(seq(2, {1, 2}), seq(3, {1, 2, 3}), {}), Error);
  DtwConfig config;
  config.band_radius = 0;
  EXPECT_THROW(dtw_cost(seq(1, {1, 2}), seq(1, {1, 2}), config), Error);
}

TEST(BatchDtwTest, EmptyAndIdentical) {
  EXPECT_TRUE(batch_dtw({}, {}, 4).results.empty());
  Rng rng(7);
  const auto a = random_seq(rng, 5, 2);
  const std::vector<SequencePair> pairs(6, SequencePair{&a, &a});
  const auto out = batch_dtw(pairs, {}, 3);
  ASSERT_EQ(out.results.size(), 6u);
  for (const auto& r : out.results) {
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->cost, 0.0);
  }
  EXPECT_EQ(out.first_failure(), nullptr);
}

TEST(BatchDtwTest, WorkerCountDoesNotChangeResults) {
  Rng rng(8);
  std::vector<EmbeddingSequence> store;
  store.reserve(100);
  for (int k = 0; k < 100; ++k) store.push_back(random_seq(rng, 3 + rng.index(30), 5));
  std::vector<SequencePair> pairs;
  for (int k = 0; k < 50; ++k) pairs.push_back({&store[2 * k], &store[2 * k + 1]});
  const auto serial = batch_dtw(pairs, {}, 1);
  for (std::size_t workers : {2u, 4u, 8u, 64u}) {
    const auto parallel = batch_dtw(pairs, {}, workers);
    ASSERT_EQ(parallel.results.size(), serial.results.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      ASSERT_EQ(parallel.results[i]->cost, serial.results[i]->cost);
      ASSERT_EQ(parallel.results[i]->path_length, serial.results[i]->path_length);
    }
  }
}

TEST(BatchDtwTest, FailuresAreReportedPerPair) {
  const auto a = seq(2, {1, 2, 3, 4});
  const auto b = seq(3, {1, 2, 3});
  const std::vector<SequencePair> pairs = {{&a, &a}, {&a, &b}, {&b, &b}, {&b, &a}};
  const auto out = batch_dtw(pairs, {}, 2);
  ASSERT_EQ(out.failures.size(), 2u);
  EXPECT_EQ(out.first_failure()->index, 1u);
  EXPECT_EQ(out.failures[1].index, 3u);
  EXPECT_TRUE(out.results[0].has_value());
  EXPECT_FALSE(out.results[1].has_value());
  EXPECT_TRUE(out.results[2].has_value());
  EXPECT_THROW(batch_dtw(pairs, {}, 0), Error);
}

TEST(ZscoreTest, StandardizesEachDimension) {
  const auto a = seq(2, {1, 10, 3, 10});
  const auto b = seq(2, {5, 20});
  const std::vector<const EmbeddingSequence*> in = {&a, &b};
  const auto out = zscore(in);
  ASSERT_EQ(out.size(), 2u);
  double sum0 = 0, sq0 = 0;
  for (const auto& s : out) {
    for (std::size_t i = 0; i < s.frame_count(); ++i) {
      sum0 += s.frame(i)[0];
      sq0 += s.frame(i)[0] * s.frame(i)[0];
    }
  }
  EXPECT_NEAR(sum0, 0.0, 1e-6);
  EXPECT_NEAR(sq0 / 3.0, 1.0, 1e-6);
  // Dimension 1 has values {10,10,20}: mean 40/3.
  EXPECT_NEAR(out[1].frame(0)[1], (20 - 40.0 / 3) / std::sqrt(200.0 / 9), 1e-6);
}

}  // namespace
}  // namespace goldenbench::alignment
