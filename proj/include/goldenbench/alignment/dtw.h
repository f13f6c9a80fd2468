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

#ifndef GOLDENBENCH_ALIGNMENT_DTW_H_
#define GOLDENBENCH_ALIGNMENT_DTW_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "goldenbench/corpus/types.h"

namespace goldenbench::alignment {

enum class LocalMetric { kEuclidean, kSquaredEuclidean, kCosineDistance };

std::string_view to_string(LocalMetric metric);
// Accepts "euclidean", "squared_euclidean", "cosine_distance".
LocalMetric parse_local_metric(std::string_view text);

struct DtwConfig {
  LocalMetric local_metric = LocalMetric::kEuclidean;
  // Selects which of cost / normalized_cost downstream consumers use.
  bool normalize_by_path_length = true;
  // Sakoe-Chiba band: cell (i, j) is admissible iff |i - j| <= radius.
  std::optional<std::size_t> band_radius;
  // Keep the full accumulated-cost matrix and return the warping path.
  bool materialize_path = false;
};

using PathStep = std::pair<std::size_t, std::size_t>;

struct DtwResult {
  double cost = 0.0;
  std::size_t path_length = 0;
  double normalized_cost = 0.0;
  std::optional<std::vector<PathStep>> path;

  double value(const DtwConfig& config) const {
    return config.normalize_by_path_length ? normalized_cost : cost;
  }
};

// euclidean |a-b|, squared_euclidean |a-b|^2, cosine_distance 1 - cos(a, b).
// Throws Error on a dim mismatch, or a zero norm under cosine_distance.
double local_cost(std::span<const float> a, std::span<const float> b,
                  LocalMetric metric);

// Minimum summed local cost over monotone paths from (0, 0) to
// (T_a - 1, T_b - 1) with steps (1,1), (1,0), (0,1). Ties prefer the
// diagonal, then (1,0), then (0,1); path_length and the materialized path
// follow that choice. Throws Error on a dim mismatch or when the band cannot
// reach the end cell (|T_a - T_b| > radius).
DtwResult dtw_cost(const corpus::EmbeddingSequence& a,
                   const corpus::EmbeddingSequence& b, const DtwConfig& config);

struct SequencePair {
  const corpus::EmbeddingSequence* original;
  const corpus::EmbeddingSequence* synthesized;
};

struct BatchFailure {
  std::size_t index;
  std::string message;
};

struct BatchDtwOutcome {
  // Same order as the input; empty where the pair failed.
  std::vector<std::optional<DtwResult>> results;
  // Ascending by index.
  std::vector<BatchFailure> failures;

  const BatchFailure* first_failure() const {
    return failures.empty() ? nullptr : &failures.front();
  }
};

// Runs dtw_cost over every pair on `workers` (>= 1) threads. Results do not
// depend on the worker count.
BatchDtwOutcome batch_dtw(std::span<const SequencePair> pairs,
                          const DtwConfig& config, std::size_t workers = 1);

// Per-dimension standardization over every frame of every sequence
// (population statistics). Dimensions with zero spread are only centered.
// Throws Error on an empty list or mixed dims.
std::vector<corpus::EmbeddingSequence> zscore(
    std::span<const corpus::EmbeddingSequence* const> sequences);

}  // namespace goldenbench::alignment

#endif  // GOLDENBENCH_ALIGNMENT_DTW_H_
