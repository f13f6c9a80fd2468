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

// Fusion of original-speech and synthesized-speech hidden sequences, with
// forward and analytic backward passes.
//
//   ADD   H' = H_org + H_syn
//   ATT   H' = H_org + MHA(Q = H_org, K = H_syn, V = H_syn)
//   GATE  g  = sigmoid(H_org W_org + H_syn W_syn + b)
//         H' = g * H_org + (1 - g) * H_syn
//   CAT   H' = [H_org | H_syn] W + b
//
// ADD, GATE and CAT first resample H_syn to H_org's frame count; ATT takes
// sequences of any lengths. Every mechanism returns (T_org, d).

#ifndef GOLDENBENCH_FUSION_MECHANISMS_H_
#define GOLDENBENCH_FUSION_MECHANISMS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "goldenbench/fusion/tensor.h"

namespace goldenbench::fusion {

enum class Mechanism { kAdd, kAtt, kGate, kCat };

std::string_view to_string(Mechanism mechanism);
// Case-insensitive "add", "att", "gate", "cat".
Mechanism parse_mechanism(std::string_view text);

struct MhaParams {
  std::size_t n_heads = 1;
  Tensor w_q, w_k, w_v, w_o;  // d x d
  std::optional<Tensor> b_q, b_k, b_v, b_o;  // 1 x d
};

struct GateParams {
  Tensor w_org, w_syn;  // d x d
  Tensor bias;          // 1 x d
};

struct CatParams {
  Tensor weight;  // 2d x d; rows [0, d) act on H_org, rows [d, 2d) on H_syn
  Tensor bias;    // 1 x d
};

struct FusionParams {
  Mechanism mechanism = Mechanism::kAdd;
  std::optional<MhaParams> mha;
  std::optional<GateParams> gate;
  std::optional<CatParams> cat;

  // Throws Error unless exactly the block matching `mechanism` is present
  // and every tensor has the shape implied by `d`.
  void validate(std::size_t d) const;
};

// Visits every parameter tensor with a stable name ("w_q", "gate.bias", ...)
// in a fixed order.
void for_each_parameter(FusionParams& params,
                        const std::function<void(std::string_view, Tensor&)>& fn);
void for_each_parameter(
    const FusionParams& params,
    const std::function<void(std::string_view, const Tensor&)>& fn);

// Uniform in [-1/sqrt(d), 1/sqrt(d)], reproducible from `seed`. ATT gets all
// four biases. Throws Error on d == 0, n_heads == 0, or (ATT) d not
// divisible by n_heads.
FusionParams init_params(Mechanism mechanism, std::size_t d,
                         std::size_t n_heads, std::uint64_t seed);

// Linear interpolation along frames. Output frame t samples source position
// t (T - 1) / (target - 1); a single output frame samples the midpoint.
// Identity when target == T.
Tensor resample_time(const Tensor& h, std::size_t target_frames);
// Adjoint of resample_time: maps a (target x d) gradient to (T x d).
Tensor resample_time_backward(const Tensor& grad, std::size_t source_frames);

Tensor mha_forward(const Tensor& q, const Tensor& k, const Tensor& v,
                   const MhaParams& params);

struct MhaGrads {
  Tensor d_q, d_k, d_v;
  MhaParams d_params;
};

MhaGrads mha_backward(const Tensor& q, const Tensor& k, const Tensor& v,
                      const MhaParams& params, const Tensor& grad_out);

Tensor fuse_add(const Tensor& h_org, const Tensor& h_syn);
Tensor fuse_att(const Tensor& h_org, const Tensor& h_syn,
                const FusionParams& params);
Tensor fuse_gate(const Tensor& h_org, const Tensor& h_syn,
                 const FusionParams& params);
Tensor fuse_cat(const Tensor& h_org, const Tensor& h_syn,
                const FusionParams& params);

// Dispatches on params.mechanism.
Tensor fuse(const Tensor& h_org, const Tensor& h_syn,
            const FusionParams& params);

struct FusionGrads {
  Tensor d_org;
  Tensor d_syn;
  // Same mechanism and block layout as the forward params.
  FusionParams d_params;
};

// Gradients of <grad_out, fuse(h_org, h_syn, params)>.
FusionGrads fuse_backward(const Tensor& h_org, const Tensor& h_syn,
                          const FusionParams& params, const Tensor& grad_out);

}  // namespace goldenbench::fusion

#endif  // GOLDENBENCH_FUSION_MECHANISMS_H_
