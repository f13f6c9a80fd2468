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

#include "goldenbench/analytics/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "goldenbench/error.h"

namespace goldenbench::analytics {

double pearson(std::span<const double> xs, std::span<const double> ys) {
  PairedSeries series;
  series.xs.assign(xs.begin(), xs.end());
  series.ys.assign(ys.begin(), ys.end());
  return pearson(series);
}

double pearson(const PairedSeries& series) {
  const auto& xs = series.xs;
  const auto& ys = series.ys;
  if (xs.size() != ys.size()) {
    throw Error("pearson: length mismatch (" + std::to_string(xs.size()) +
                " vs " + std::to_string(ys.size()) + ")");
  }
  if (xs.size() < 2) throw Error("pearson: needs at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      throw Error("pearson: non-finite value at index " + std::to_string(i));
    }
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw Error("pearson: " + series.x_name + " has zero variance");
  if (syy == 0.0) throw Error("pearson: " + series.y_name + " has zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::map<std::string, double> per_speaker_mean(
    const std::vector<std::pair<std::string, double>>& rows) {
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (const auto& [speaker, value] : rows) {
    auto& [sum, count] = acc[speaker];
    sum += value;
    ++count;
  }
  std::map<std::string, double> out;
  for (const auto& [speaker, sc] : acc) {
    out.emplace(speaker, sc.first / static_cast<double>(sc.second));
  }
  return out;
}

double mos_mean(const corpus::CorpusManifest& manifest, corpus::Role role) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& utt : manifest.utterances) {
    if (utt.role == role && utt.mos) {
      sum += *utt.mos;
      ++count;
    }
  }
  if (count == 0) {
    throw Error("no MOS values for role " +
                std::string(corpus::to_string(role)));
  }
  return sum / static_cast<double>(count);
}

double quantile_linear(std::span<const double> sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

namespace {

std::string format_key(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::vector<BoxSummary> group_quartiles(
    const std::vector<std::pair<double, double>>& rows,
    std::optional<double> bucket_width) {
  if (rows.empty()) throw Error("group_quartiles: no rows");
  if (bucket_width && !(*bucket_width > 0.0)) {
    throw Error("group_quartiles: bucket width must be positive");
  }
  std::map<double, std::vector<double>> groups;
  for (const auto& [score, cost] : rows) {
    const double key = bucket_width
                           ? std::floor(score / *bucket_width) * *bucket_width
                           : score;
    groups[key].push_back(cost);
  }
  std::vector<BoxSummary> out;
  out.reserve(groups.size());
  for (auto& [key, costs] : groups) {
    std::sort(costs.begin(), costs.end());
    BoxSummary box;
    box.group_key = key;
    box.label = bucket_width ? "[" + format_key(key) + ", " +
                                   format_key(key + *bucket_width) + ")"
                             : format_key(key);
    box.count = costs.size();
    box.min = costs.front();
    box.q1 = quantile_linear(costs, 0.25);
    box.median = quantile_linear(costs, 0.5);
    box.q3 = quantile_linear(costs, 0.75);
    box.max = costs.back();
    out.push_back(std::move(box));
  }
  return out;
}

SeedStats seed_stats(std::span<const double> values) {
  if (values.empty()) throw Error("seed_stats: no values");
  SeedStats stats;
  stats.n_runs = values.size();
  for (const double v : values) stats.mean += v;
  stats.mean /= static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (const double v : values) ss += (v - stats.mean) * (v - stats.mean);
    stats.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return stats;
}

std::string format_seed_stats(const SeedStats& stats) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.3f \xC2\xB1%.3f", stats.mean, stats.std);
  return buf;
}

}  // namespace goldenbench::analytics
