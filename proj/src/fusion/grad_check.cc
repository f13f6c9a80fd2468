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

#include "goldenbench/fusion/grad_check.h"

#include <cmath>
#include <random>
#include <vector>

#include "goldenbench/error.h"

namespace goldenbench::fusion {

namespace {

struct Block {
  std::string name;
  Tensor* tensor;
};

std::vector<Block> blocks_of(Tensor& h_org, Tensor& h_syn,
                             FusionParams& params) {
  std::vector<Block> blocks{{"h_org", &h_org}, {"h_syn", &h_syn}};
  for_each_parameter(params, [&](std::string_view name, Tensor& t) {
    blocks.push_back({std::string(name), &t});
  });
  return blocks;
}

std::vector<const Tensor*> grad_blocks(const FusionGrads& g) {
  std::vector<const Tensor*> blocks{&g.d_org, &g.d_syn};
  for_each_parameter(g.d_params,
                     [&](std::string_view, const Tensor& t) { blocks.push_back(&t); });
  return blocks;
}

std::string element_name(const std::string& block, const Tensor& t,
                         std::size_t offset) {
  return block + "[" + std::to_string(offset / t.cols()) + "," +
         std::to_string(offset % t.cols()) + "]";
}

}  // namespace

long double fusion_loss(const Tensor& h_org, const Tensor& h_syn,
                        const FusionParams& params) {
  return sum_of_squares(fuse(h_org, h_syn, params));
}

FusionGrads loss_gradients(const Tensor& h_org, const Tensor& h_syn,
                           const FusionParams& params) {
  const Tensor out = fuse(h_org, h_syn, params);
  return fuse_backward(h_org, h_syn, params, scale(out, 2.0));
}

GradCheckReport compare_gradients(const Tensor& h_org, const Tensor& h_syn,
                                  const FusionParams& params,
                                  const FusionGrads& analytic,
                                  double tolerance, double step) {
  if (!(tolerance > 0.0)) throw Error("grad_check: tolerance must be positive");
  if (!(step > 0.0)) throw Error("grad_check: step must be positive");

  Tensor org = h_org;
  Tensor syn = h_syn;
  FusionParams work = params;
  const std::vector<Block> blocks = blocks_of(org, syn, work);
  const std::vector<const Tensor*> grads = grad_blocks(analytic);
  if (grads.size() != blocks.size()) {
    throw Error("grad_check: analytic gradients have the wrong block layout");
  }

  GradCheckReport report;
  bool first = true;
  std::size_t flat = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    Tensor& t = *blocks[b].tensor;
    if (!grads[b]->same_shape(t)) {
      throw Error("grad_check: gradient of " + blocks[b].name +
                  " has the wrong shape");
    }
    for (std::size_t i = 0; i < t.size(); ++i, ++flat) {
      double& x = t.values()[i];
      const double saved = x;
      const double plus = saved + step;
      const double minus = saved - step;
      x = plus;
      const long double loss_plus = fusion_loss(org, syn, work);
      x = minus;
      const long double loss_minus = fusion_loss(org, syn, work);
      x = saved;
      const double numeric =
          static_cast<double>((loss_plus - loss_minus) / (plus - minus));
      const double exact = grads[b]->values()[i];
      const double abs_error = std::abs(exact - numeric);
      const double rel_error =
          abs_error / std::max({std::abs(exact), std::abs(numeric),
                                kGradientScaleFloor});
      report.max_abs_error = std::max(report.max_abs_error, abs_error);
      if (first || rel_error > report.max_rel_error) {
        report.max_rel_error = rel_error;
        report.worst_coordinate = flat;
        report.worst_name = element_name(blocks[b].name, t, i);
        first = false;
      }
    }
  }
  report.coordinates = flat;
  report.pass = report.max_rel_error <= tolerance;
  return report;
}

GradCheckReport grad_check(const Tensor& h_org, const Tensor& h_syn,
                           const FusionParams& params, double tolerance,
                           double step) {
  return compare_gradients(h_org, h_syn, params,
                           loss_gradients(h_org, h_syn, params), tolerance,
                           step);
}

Tensor random_tensor(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  Tensor t(rows, cols);
  for (double& v : t.values()) {
    v = 2.0 * (static_cast<double>(engine() >> 11) * 0x1.0p-53) - 1.0;
  }
  return t;
}

std::string coordinate_name(const Tensor& h_org, const Tensor& h_syn,
                            const FusionParams& params, std::size_t index) {
  Tensor org = h_org;
  Tensor syn = h_syn;
  FusionParams work = params;
  for (const Block& block : blocks_of(org, syn, work)) {
    if (index < block.tensor->size()) {
      return element_name(block.name, *block.tensor, index);
    }
    index -= block.tensor->size();
  }
  throw Error("grad_check: coordinate index out of range");
}

}  // namespace goldenbench::fusion
