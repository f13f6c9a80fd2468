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

#ifndef GOLDENBENCH_ANALYTICS_STATS_H_
#define GOLDENBENCH_ANALYTICS_STATS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "goldenbench/corpus/types.h"

namespace goldenbench::analytics {

struct PairedSeries {
  std::vector<std::string> labels;
  std::vector<double> xs;
  std::vector<double> ys;
  std::string x_name = "x";
  std::string y_name = "y";
};

// Sample Pearson correlation, two-pass in 64-bit, clamped to [-1, 1].
// Throws Error on a length mismatch, fewer than two points, a non-finite
// value or a zero-variance series (named).
double pearson(const PairedSeries& series);
double pearson(std::span<const double> xs, std::span<const double> ys);

// Arithmetic mean per key, keys sorted.
std::map<std::string, double> per_speaker_mean(
    const std::vector<std::pair<std::string, double>>& rows);

// Unweighted mean of the ingested MOS values of `role`. Throws Error when
// none of the role's utterances carries one.
double mos_mean(const corpus::CorpusManifest& manifest, corpus::Role role);

// Quantile by linear interpolation between order statistics:
// h = (n - 1) p, q = x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]).
// `sorted` must be ascending and nonempty.
double quantile_linear(std::span<const double> sorted, double p);

struct BoxSummary {
  // Exact score, or the lower edge of the bucket.
  double group_key = 0.0;
  std::string label;
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Groups (score, cost) rows by exact score, or by [k w, (k + 1) w) buckets
// when `bucket_width` is set, and summarizes each group's costs. Groups are
// ascending by key. Throws Error on no rows or a nonpositive width.
std::vector<BoxSummary> group_quartiles(
    const std::vector<std::pair<double, double>>& rows,
    std::optional<double> bucket_width = std::nullopt);

struct SeedStats {
  double mean = 0.0;
  // Sample (n - 1) standard deviation; 0 for a single run.
  double std = 0.0;
  std::size_t n_runs = 0;
};

// Throws Error on an empty list.
SeedStats seed_stats(std::span<const double> values);

// "m ±s" with three decimals, e.g. "0.636 ±0.001".
std::string format_seed_stats(const SeedStats& stats);

}  // namespace goldenbench::analytics

#endif  // GOLDENBENCH_ANALYTICS_STATS_H_
