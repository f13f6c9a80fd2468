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

#ifndef GOLDENBENCH_FUSION_GRAD_CHECK_H_
#define GOLDENBENCH_FUSION_GRAD_CHECK_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "goldenbench/fusion/mechanisms.h"

namespace goldenbench::fusion {

// Per-coordinate error is |analytic - numeric| / max(|analytic|, |numeric|,
// kGradientScaleFloor). The floor only matters for gradients that vanish
// analytically (e.g. the key bias, which softmax ignores), where the
// finite-difference value is pure rounding noise.
inline constexpr double kGradientScaleFloor = 1e-4;

struct GradCheckReport {
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  // Index into the flattened coordinate list: h_org, h_syn, then parameter
  // tensors in for_each_parameter order, each row-major.
  std::size_t worst_coordinate = 0;
  // e.g. "mha.w_q[3,1]".
  std::string worst_name;
  std::size_t coordinates = 0;
  bool pass = false;
};

// Loss used by the checks: sum of squares of the fused output.
long double fusion_loss(const Tensor& h_org, const Tensor& h_syn,
                        const FusionParams& params);

// Analytic gradient of fusion_loss (upstream gradient 2 H').
FusionGrads loss_gradients(const Tensor& h_org, const Tensor& h_syn,
                           const FusionParams& params);

// Compares `analytic` against central differences of fusion_loss with the
// given step, over every input and parameter coordinate. Throws Error on a
// nonpositive tolerance or step, or when `analytic` has the wrong layout.
GradCheckReport compare_gradients(const Tensor& h_org, const Tensor& h_syn,
                                  const FusionParams& params,
                                  const FusionGrads& analytic,
                                  double tolerance, double step);

// compare_gradients against loss_gradients.
GradCheckReport grad_check(const Tensor& h_org, const Tensor& h_syn,
                           const FusionParams& params, double tolerance,
                           double step = 1e-5);

// Entries uniform in [-1, 1], reproducible from `seed`.
Tensor random_tensor(std::size_t rows, std::size_t cols, std::uint64_t seed);

// The flattened coordinate at `index`, named as in GradCheckReport.
std::string coordinate_name(const Tensor& h_org, const Tensor& h_syn,
                            const FusionParams& params, std::size_t index);

}  // namespace goldenbench::fusion

#endif  // GOLDENBENCH_FUSION_GRAD_CHECK_H_
