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

#include "goldenbench/alignment/dtw.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "goldenbench/error.h"
#include "goldenbench/simd/kernels.h"

namespace goldenbench::alignment {

std::string_view to_string(LocalMetric metric) {
  switch (metric) {
    case LocalMetric::kEuclidean:
      return "euclidean";
    case LocalMetric::kSquaredEuclidean:
      return "squared_euclidean";
    case LocalMetric::kCosineDistance:
      return "cosine_distance";
  }
  return "euclidean";
}

LocalMetric parse_local_metric(std::string_view text) {
  if (text == "euclidean") return LocalMetric::kEuclidean;
  if (text == "squared_euclidean") return LocalMetric::kSquaredEuclidean;
  if (text == "cosine_distance") return LocalMetric::kCosineDistance;
  throw Error("unknown local metric \"" + std::string(text) +
              "\" (expected euclidean, squared_euclidean or cosine_distance)");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Unchecked; dtw_cost validates dims once up front.
double local_cost_unchecked(const simd::KernelTable& k, const float* a,
                            const float* b, std::size_t n,
                            LocalMetric metric) {
  switch (metric) {
    case LocalMetric::kEuclidean:
      return std::sqrt(k.squared_l2(a, b, n));
    case LocalMetric::kSquaredEuclidean:
      return k.squared_l2(a, b, n);
    case LocalMetric::kCosineDistance: {
      const simd::DotNorms s = k.dot_norms(a, b, n);
      if (s.norm_sq_a == 0.0 || s.norm_sq_b == 0.0) {
        throw Error("cosine_distance: zero-norm frame");
      }
      const double cos =
          std::clamp(s.dot / std::sqrt(s.norm_sq_a * s.norm_sq_b), -1.0, 1.0);
      return 1.0 - cos;
    }
  }
  return 0.0;
}

struct Cell {
  double cost = kInf;
  std::size_t length = 0;
};

// Best predecessor of (i, j) among diagonal, (i-1, j), (i, j-1), in that
// preference order; returns 0, 1, 2 or -1 when none is reachable.
int pick(const Cell& diag, const Cell& up, const Cell& left) {
  int best = -1;
  double best_cost = kInf;
  if (diag.cost < best_cost) best = 0, best_cost = diag.cost;
  if (up.cost < best_cost) best = 1, best_cost = up.cost;
  if (left.cost < best_cost) best = 2, best_cost = left.cost;
  return best;
}

}  // namespace

double local_cost(std::span<const float> a, std::span<const float> b,
                  LocalMetric metric) {
  if (a.size() != b.size()) {
    throw Error("local_cost: dim mismatch (" + std::to_string(a.size()) +
                " vs " + std::to_string(b.size()) + ")");
  }
  return local_cost_unchecked(simd::active_kernels(), a.data(), b.data(),
                              a.size(), metric);
}

DtwResult dtw_cost(const corpus::EmbeddingSequence& a,
                   const corpus::EmbeddingSequence& b,
                   const DtwConfig& config) {
  if (a.dim() != b.dim()) {
    throw Error("dtw: dim mismatch (" + std::to_string(a.dim()) + " vs " +
                std::to_string(b.dim()) + ")");
  }
  const std::size_t rows = a.frame_count();
  const std::size_t cols = b.frame_count();
  const std::size_t dim = a.dim();
  if (config.band_radius) {
    if (*config.band_radius == 0) throw Error("dtw: band radius must be >= 1");
    const std::size_t gap = rows > cols ? rows - cols : cols - rows;
    if (gap > *config.band_radius) {
      throw Error("dtw: band radius " + std::to_string(*config.band_radius) +
                  " cannot align lengths " + std::to_string(rows) + " and " +
                  std::to_string(cols));
    }
  }
  auto in_band = [&](std::size_t i, std::size_t j) {
    if (!config.band_radius) return true;
    const std::size_t gap = i > j ? i - j : j - i;
    return gap <= *config.band_radius;
  };

  const simd::KernelTable& kernels = simd::active_kernels();
  const float* av = a.values().data();
  const float* bv = b.values().data();
  auto cell_cost = [&](std::size_t i, std::size_t j) {
    return local_cost_unchecked(kernels, av + i * dim, bv + j * dim, dim,
                                config.local_metric);
  };

  // With a path requested every row is kept; otherwise two rows roll.
  const std::size_t kept_rows = config.materialize_path ? rows : 2;
  std::vector<Cell> grid(kept_rows * cols);
  auto row_of = [&](std::size_t i) {
    return grid.begin() + static_cast<std::ptrdiff_t>(
                              (config.materialize_path ? i : i % 2) * cols);
  };
  const Cell unreachable;

  for (std::size_t i = 0; i < rows; ++i) {
    auto cur = row_of(i);
    std::fill(cur, cur + static_cast<std::ptrdiff_t>(cols), unreachable);
    for (std::size_t j = 0; j < cols; ++j) {
      if (!in_band(i, j)) continue;
      const double local = cell_cost(i, j);
      if (i == 0 && j == 0) {
        cur[0] = {local, 1};
        continue;
      }
      const Cell& diag =
          (i > 0 && j > 0) ? row_of(i - 1)[static_cast<std::ptrdiff_t>(j - 1)]
                           : unreachable;
      const Cell& up =
          i > 0 ? row_of(i - 1)[static_cast<std::ptrdiff_t>(j)] : unreachable;
      const Cell& left =
          j > 0 ? cur[static_cast<std::ptrdiff_t>(j - 1)] : unreachable;
      const int choice = pick(diag, up, left);
      if (choice < 0) continue;
      const Cell& from = choice == 0 ? diag : (choice == 1 ? up : left);
      cur[static_cast<std::ptrdiff_t>(j)] = {from.cost + local,
                                             from.length + 1};
    }
  }

  const Cell end = row_of(rows - 1)[static_cast<std::ptrdiff_t>(cols - 1)];
  DtwResult result;
  result.cost = end.cost;
  result.path_length = end.length;
  result.normalized_cost = end.cost / static_cast<double>(end.length);

  if (config.materialize_path) {
    std::vector<PathStep> path;
    path.reserve(end.length);
    std::size_t i = rows - 1;
    std::size_t j = cols - 1;
    path.emplace_back(i, j);
    while (i > 0 || j > 0) {
      const Cell& diag = (i > 0 && j > 0)
                             ? row_of(i - 1)[static_cast<std::ptrdiff_t>(j - 1)]
                             : unreachable;
      const Cell& up =
          i > 0 ? row_of(i - 1)[static_cast<std::ptrdiff_t>(j)] : unreachable;
      const Cell& left =
          j > 0 ? row_of(i)[static_cast<std::ptrdiff_t>(j - 1)] : unreachable;
      switch (pick(diag, up, left)) {
        case 0:
          --i;
          --j;
          break;
        case 1:
          --i;
          break;
        default:
          --j;
          break;
      }
      path.emplace_back(i, j);
    }
    std::reverse(path.begin(), path.end());
    result.path = std::move(path);
  }
  return result;
}

BatchDtwOutcome batch_dtw(std::span<const SequencePair> pairs,
                          const DtwConfig& config, std::size_t workers) {
  if (workers == 0) throw Error("batch_dtw: workers must be >= 1");
  BatchDtwOutcome outcome;
  outcome.results.resize(pairs.size());
  std::vector<std::optional<std::string>> errors(pairs.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next.fetch_add(1); k < pairs.size();
         k = next.fetch_add(1)) {
      try {
        outcome.results[k] =
            dtw_cost(*pairs[k].original, *pairs[k].synthesized, config);
      } catch (const Error& e) {
        errors[k] = e.what();
      }
    }
  };

  const std::size_t threads =
      std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(pairs.size(), 1));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (errors[k]) outcome.failures.push_back({k, std::move(*errors[k])});
  }
  return outcome;
}

std::vector<corpus::EmbeddingSequence> zscore(
    std::span<const corpus::EmbeddingSequence* const> sequences) {
  if (sequences.empty()) throw Error("zscore: no sequences");
  const std::size_t dim = sequences.front()->dim();
  std::vector<double> mean(dim, 0.0);
  std::vector<double> sq(dim, 0.0);
  std::size_t frames = 0;
  for (const auto* seq : sequences) {
    if (seq->dim() != dim) throw Error("zscore: mixed embedding dims");
    for (std::size_t t = 0; t < seq->frame_count(); ++t) {
      const auto row = seq->frame(t);
      for (std::size_t d = 0; d < dim; ++d) mean[d] += row[d];
    }
    frames += seq->frame_count();
  }
  for (auto& m : mean) m /= static_cast<double>(frames);
  for (const auto* seq : sequences) {
    for (std::size_t t = 0; t < seq->frame_count(); ++t) {
      const auto row = seq->frame(t);
      for (std::size_t d = 0; d < dim; ++d) {
        const double c = row[d] - mean[d];
        sq[d] += c * c;
      }
    }
  }
  std::vector<double> scale(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const double sd = std::sqrt(sq[d] / static_cast<double>(frames));
    scale[d] = sd > 0.0 ? 1.0 / sd : 1.0;
  }

  std::vector<corpus::EmbeddingSequence> out;
  out.reserve(sequences.size());
  for (const auto* seq : sequences) {
    std::vector<float> values(seq->values().size());
    for (std::size_t t = 0; t < seq->frame_count(); ++t) {
      const auto row = seq->frame(t);
      for (std::size_t d = 0; d < dim; ++d) {
        values[t * dim + d] =
            static_cast<float>((row[d] - mean[d]) * scale[d]);
      }
    }
    out.emplace_back(seq->frame_count(), dim, std::move(values));
  }
  return out;
}

}  // namespace goldenbench::alignment
