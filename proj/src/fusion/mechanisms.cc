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

#include "goldenbench/fusion/mechanisms.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <vector>

#include "goldenbench/error.h"

namespace goldenbench::fusion {

std::string_view to_string(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kAdd:
      return "ADD";
    case Mechanism::kAtt:
      return "ATT";
    case Mechanism::kGate:
      return "GATE";
    case Mechanism::kCat:
      return "CAT";
  }
  return "ADD";
}

Mechanism parse_mechanism(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "add") return Mechanism::kAdd;
  if (lower == "att") return Mechanism::kAtt;
  if (lower == "gate") return Mechanism::kGate;
  if (lower == "cat") return Mechanism::kCat;
  throw Error("unknown fusion mechanism \"" + std::string(text) +
              "\" (expected add, att, gate or cat)");
}

namespace {

void require_shape(const Tensor& t, std::size_t rows, std::size_t cols,
                   const char* name) {
  if (t.rows() != rows || t.cols() != cols) {
    throw Error(std::string("fusion params: ") + name + " must be " +
                std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                std::to_string(t.rows()) + "x" + std::to_string(t.cols()));
  }
}

}  // namespace

void FusionParams::validate(std::size_t d) const {
  const bool want_mha = mechanism == Mechanism::kAtt;
  const bool want_gate = mechanism == Mechanism::kGate;
  const bool want_cat = mechanism == Mechanism::kCat;
  if (mha.has_value() != want_mha || gate.has_value() != want_gate ||
      cat.has_value() != want_cat) {
    throw Error("fusion params: parameter blocks do not match mechanism " +
                std::string(to_string(mechanism)));
  }
  if (mha) {
    if (mha->n_heads == 0 || d % mha->n_heads != 0) {
      throw Error("fusion params: d=" + std::to_string(d) +
                  " not divisible by n_heads=" + std::to_string(mha->n_heads));
    }
    require_shape(mha->w_q, d, d, "w_q");
    require_shape(mha->w_k, d, d, "w_k");
    require_shape(mha->w_v, d, d, "w_v");
    require_shape(mha->w_o, d, d, "w_o");
    for (const auto* b : {&mha->b_q, &mha->b_k, &mha->b_v, &mha->b_o}) {
      if (*b) require_shape(**b, 1, d, "mha bias");
    }
  }
  if (gate) {
    require_shape(gate->w_org, d, d, "gate.w_org");
    require_shape(gate->w_syn, d, d, "gate.w_syn");
    require_shape(gate->bias, 1, d, "gate.bias");
  }
  if (cat) {
    require_shape(cat->weight, 2 * d, d, "cat.weight");
    require_shape(cat->bias, 1, d, "cat.bias");
  }
}

namespace {

template <typename P, typename T, typename Fn>
void visit_parameters(P& params, Fn&& fn) {
  if (params.mha) {
    auto& m = *params.mha;
    fn("mha.w_q", static_cast<T&>(m.w_q));
    fn("mha.w_k", static_cast<T&>(m.w_k));
    fn("mha.w_v", static_cast<T&>(m.w_v));
    fn("mha.w_o", static_cast<T&>(m.w_o));
    if (m.b_q) fn("mha.b_q", static_cast<T&>(*m.b_q));
    if (m.b_k) fn("mha.b_k", static_cast<T&>(*m.b_k));
    if (m.b_v) fn("mha.b_v", static_cast<T&>(*m.b_v));
    if (m.b_o) fn("mha.b_o", static_cast<T&>(*m.b_o));
  }
  if (params.gate) {
    fn("gate.w_org", static_cast<T&>(params.gate->w_org));
    fn("gate.w_syn", static_cast<T&>(params.gate->w_syn));
    fn("gate.bias", static_cast<T&>(params.gate->bias));
  }
  if (params.cat) {
    fn("cat.weight", static_cast<T&>(params.cat->weight));
    fn("cat.bias", static_cast<T&>(params.cat->bias));
  }
}

}  // namespace

void for_each_parameter(
    FusionParams& params,
    const std::function<void(std::string_view, Tensor&)>& fn) {
  visit_parameters<FusionParams, Tensor>(params, fn);
}

void for_each_parameter(
    const FusionParams& params,
    const std::function<void(std::string_view, const Tensor&)>& fn) {
  visit_parameters<const FusionParams, const Tensor>(params, fn);
}

FusionParams init_params(Mechanism mechanism, std::size_t d,
                         std::size_t n_heads, std::uint64_t seed) {
  if (d == 0) throw Error("init_params: d must be positive");
  if (n_heads == 0) throw Error("init_params: n_heads must be positive");
  if (mechanism == Mechanism::kAtt && d % n_heads != 0) {
    throw Error("init_params: d=" + std::to_string(d) +
                " not divisible by n_heads=" + std::to_string(n_heads));
  }
  // mt19937_64 output is fully specified by the standard; the conversion to
  // [0, 1) is done by hand so results do not depend on the library's
  // distribution implementation.
  std::mt19937_64 engine(seed);
  const double limit = 1.0 / std::sqrt(static_cast<double>(d));
  auto random = [&](std::size_t rows, std::size_t cols) {
    Tensor t(rows, cols);
    for (double& v : t.values()) {
      const double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      v = (2.0 * unit - 1.0) * limit;
    }
    return t;
  };

  FusionParams params;
  params.mechanism = mechanism;
  switch (mechanism) {
    case Mechanism::kAdd:
      break;
    case Mechanism::kAtt: {
      MhaParams m;
      m.n_heads = n_heads;
      m.w_q = random(d, d);
      m.w_k = random(d, d);
      m.w_v = random(d, d);
      m.w_o = random(d, d);
      m.b_q = random(1, d);
      m.b_k = random(1, d);
      m.b_v = random(1, d);
      m.b_o = random(1, d);
      params.mha = std::move(m);
      break;
    }
    case Mechanism::kGate:
      params.gate = GateParams{random(d, d), random(d, d), random(1, d)};
      break;
    case Mechanism::kCat:
      params.cat = CatParams{random(2 * d, d), random(1, d)};
      break;
  }
  return params;
}

namespace {

struct Interp {
  std::size_t lo;
  std::size_t hi;
  double frac;
};

Interp interp_at(std::size_t t, std::size_t source, std::size_t target) {
  const double pos =
      target == 1 ? static_cast<double>(source - 1) / 2.0
                  : static_cast<double>(t) * static_cast<double>(source - 1) /
                        static_cast<double>(target - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  lo = std::min(lo, source - 1);
  const std::size_t hi = std::min(lo + 1, source - 1);
  return {lo, hi, pos - static_cast<double>(lo)};
}

}  // namespace

Tensor resample_time(const Tensor& h, std::size_t target_frames) {
  if (target_frames == 0) throw Error("resample_time: target must be >= 1");
  if (target_frames == h.rows()) return h;
  Tensor out(target_frames, h.cols());
  for (std::size_t t = 0; t < target_frames; ++t) {
    const Interp w = interp_at(t, h.rows(), target_frames);
    for (std::size_t c = 0; c < h.cols(); ++c) {
      out(t, c) = (1.0 - w.frac) * h(w.lo, c) + w.frac * h(w.hi, c);
    }
  }
  return out;
}

Tensor resample_time_backward(const Tensor& grad, std::size_t source_frames) {
  if (source_frames == 0) throw Error("resample_time: source must be >= 1");
  if (grad.rows() == source_frames) return grad;
  Tensor out(source_frames, grad.cols());
  for (std::size_t t = 0; t < grad.rows(); ++t) {
    const Interp w = interp_at(t, source_frames, grad.rows());
    for (std::size_t c = 0; c < grad.cols(); ++c) {
      out(w.lo, c) += (1.0 - w.frac) * grad(t, c);
      out(w.hi, c) += w.frac * grad(t, c);
    }
  }
  return out;
}

namespace {

void require_same_channels(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.cols()) {
    throw Error("fusion: channel mismatch (" + std::to_string(a.cols()) +
                " vs " + std::to_string(b.cols()) + ")");
  }
}

Tensor project(const Tensor& x, const Tensor& w,
               const std::optional<Tensor>& b) {
  Tensor out = matmul(x, w);
  if (b) add_row_bias(out, *b);
  return out;
}

void softmax_rows(Tensor& s) {
  for (std::size_t i = 0; i < s.rows(); ++i) {
    double max = s(i, 0);
    for (std::size_t j = 1; j < s.cols(); ++j) max = std::max(max, s(i, j));
    double sum = 0.0;
    for (std::size_t j = 0; j < s.cols(); ++j) {
      s(i, j) = std::exp(s(i, j) - max);
      sum += s(i, j);
    }
    for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) /= sum;
  }
}

struct MhaCache {
  Tensor qp, kp, vp;
  std::vector<Tensor> attention;  // per head, Tq x Tk
  Tensor concat;                  // Tq x d, heads side by side
  Tensor out;
};

MhaCache mha_run(const Tensor& q, const Tensor& k, const Tensor& v,
                 const MhaParams& p) {
  require_same_channels(q, k);
  require_same_channels(k, v);
  if (k.rows() != v.rows()) {
    throw Error("mha: key and value frame counts differ");
  }
  const std::size_t d = q.cols();
  if (p.n_heads == 0 || d % p.n_heads != 0) {
    throw Error("mha: d=" + std::to_string(d) + " not divisible by n_heads=" +
                std::to_string(p.n_heads));
  }
  const std::size_t head_dim = d / p.n_heads;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(head_dim));

  MhaCache c;
  c.qp = project(q, p.w_q, p.b_q);
  c.kp = project(k, p.w_k, p.b_k);
  c.vp = project(v, p.w_v, p.b_v);
  c.concat = Tensor(q.rows(), d);
  for (std::size_t h = 0; h < p.n_heads; ++h) {
    const std::size_t off = h * head_dim;
    Tensor scores = scale(matmul_bt(slice_cols(c.qp, off, head_dim),
                                    slice_cols(c.kp, off, head_dim)),
                          inv_sqrt);
    softmax_rows(scores);
    write_cols(c.concat, off, matmul(scores, slice_cols(c.vp, off, head_dim)));
    c.attention.push_back(std::move(scores));
  }
  c.out = project(c.concat, p.w_o, p.b_o);
  return c;
}

}  // namespace

Tensor mha_forward(const Tensor& q, const Tensor& k, const Tensor& v,
                   const MhaParams& params) {
  return mha_run(q, k, v, params).out;
}

MhaGrads mha_backward(const Tensor& q, const Tensor& k, const Tensor& v,
                      const MhaParams& p, const Tensor& grad_out) {
  const MhaCache c = mha_run(q, k, v, p);
  const std::size_t d = q.cols();
  const std::size_t head_dim = d / p.n_heads;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(head_dim));

  MhaGrads g;
  g.d_params.n_heads = p.n_heads;
  g.d_params.w_o = matmul_at(c.concat, grad_out);
  if (p.b_o) g.d_params.b_o = column_sums(grad_out);
  const Tensor d_concat = matmul_bt(grad_out, p.w_o);

  Tensor d_qp(q.rows(), d);
  Tensor d_kp(k.rows(), d);
  Tensor d_vp(v.rows(), d);
  for (std::size_t h = 0; h < p.n_heads; ++h) {
    const std::size_t off = h * head_dim;
    const Tensor& attn = c.attention[h];
    const Tensor d_head = slice_cols(d_concat, off, head_dim);
    const Tensor vp_h = slice_cols(c.vp, off, head_dim);
    write_cols(d_vp, off, matmul_at(attn, d_head));
    const Tensor d_attn = matmul_bt(d_head, vp_h);
    // Softmax Jacobian, row by row: ds = a * (da - <da, a>).
    Tensor d_scores(attn.rows(), attn.cols());
    for (std::size_t i = 0; i < attn.rows(); ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < attn.cols(); ++j) {
        dot += d_attn(i, j) * attn(i, j);
      }
      for (std::size_t j = 0; j < attn.cols(); ++j) {
        d_scores(i, j) = attn(i, j) * (d_attn(i, j) - dot) * inv_sqrt;
      }
    }
    write_cols(d_qp, off, matmul(d_scores, slice_cols(c.kp, off, head_dim)));
    write_cols(d_kp, off, matmul_at(d_scores, slice_cols(c.qp, off, head_dim)));
  }

  g.d_params.w_q = matmul_at(q, d_qp);
  g.d_params.w_k = matmul_at(k, d_kp);
  g.d_params.w_v = matmul_at(v, d_vp);
  if (p.b_q) g.d_params.b_q = column_sums(d_qp);
  if (p.b_k) g.d_params.b_k = column_sums(d_kp);
  if (p.b_v) g.d_params.b_v = column_sums(d_vp);
  g.d_q = matmul_bt(d_qp, p.w_q);
  g.d_k = matmul_bt(d_kp, p.w_k);
  g.d_v = matmul_bt(d_vp, p.w_v);
  return g;
}

namespace {

const FusionParams& require_mechanism(const FusionParams& params,
                                      Mechanism mechanism, std::size_t d) {
  if (params.mechanism != mechanism) {
    throw Error("fusion: params are for " +
                std::string(to_string(params.mechanism)) + ", not " +
                std::string(to_string(mechanism)));
  }
  params.validate(d);
  return params;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Tensor gate_values(const Tensor& h_org, const Tensor& syn,
                   const GateParams& p) {
  Tensor z = add(matmul(h_org, p.w_org), matmul(syn, p.w_syn));
  add_row_bias(z, p.bias);
  for (double& v : z.values()) v = sigmoid(v);
  return z;
}

}  // namespace

Tensor fuse_add(const Tensor& h_org, const Tensor& h_syn) {
  require_same_channels(h_org, h_syn);
  return add(h_org, resample_time(h_syn, h_org.rows()));
}

Tensor fuse_att(const Tensor& h_org, const Tensor& h_syn,
                const FusionParams& params) {
  require_same_channels(h_org, h_syn);
  require_mechanism(params, Mechanism::kAtt, h_org.cols());
  return add(h_org, mha_forward(h_org, h_syn, h_syn, *params.mha));
}

Tensor fuse_gate(const Tensor& h_org, const Tensor& h_syn,
                 const FusionParams& params) {
  require_same_channels(h_org, h_syn);
  require_mechanism(params, Mechanism::kGate, h_org.cols());
  const Tensor syn = resample_time(h_syn, h_org.rows());
  const Tensor g = gate_values(h_org, syn, *params.gate);
  Tensor out(h_org.rows(), h_org.cols());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double gi = g.values()[i];
    out.values()[i] = gi * h_org.values()[i] + (1.0 - gi) * syn.values()[i];
  }
  return out;
}

Tensor fuse_cat(const Tensor& h_org, const Tensor& h_syn,
                const FusionParams& params) {
  require_same_channels(h_org, h_syn);
  require_mechanism(params, Mechanism::kCat, h_org.cols());
  Tensor out = matmul(concat_cols(h_org, resample_time(h_syn, h_org.rows())),
                      params.cat->weight);
  add_row_bias(out, params.cat->bias);
  return out;
}

Tensor fuse(const Tensor& h_org, const Tensor& h_syn,
            const FusionParams& params) {
  switch (params.mechanism) {
    case Mechanism::kAdd:
      params.validate(h_org.cols());
      return fuse_add(h_org, h_syn);
    case Mechanism::kAtt:
      return fuse_att(h_org, h_syn, params);
    case Mechanism::kGate:
      return fuse_gate(h_org, h_syn, params);
    case Mechanism::kCat:
      return fuse_cat(h_org, h_syn, params);
  }
  throw Error("fusion: unknown mechanism");
}

FusionGrads fuse_backward(const Tensor& h_org, const Tensor& h_syn,
                          const FusionParams& params, const Tensor& grad_out) {
  require_same_channels(h_org, h_syn);
  params.validate(h_org.cols());
  if (grad_out.rows() != h_org.rows() || grad_out.cols() != h_org.cols()) {
    throw Error("fuse_backward: upstream gradient shape mismatch");
  }
  FusionGrads g;
  g.d_params.mechanism = params.mechanism;
  const std::size_t syn_frames = h_syn.rows();

  switch (params.mechanism) {
    case Mechanism::kAdd:
      g.d_org = grad_out;
      g.d_syn = resample_time_backward(grad_out, syn_frames);
      break;
    case Mechanism::kAtt: {
      MhaGrads m = mha_backward(h_org, h_syn, h_syn, *params.mha, grad_out);
      g.d_org = add(grad_out, m.d_q);
      g.d_syn = add(m.d_k, m.d_v);
      g.d_params.mha = std::move(m.d_params);
      break;
    }
    case Mechanism::kGate: {
      const GateParams& p = *params.gate;
      const Tensor syn = resample_time(h_syn, h_org.rows());
      const Tensor gate = gate_values(h_org, syn, p);
      Tensor d_org(h_org.rows(), h_org.cols());
      Tensor d_syn(h_org.rows(), h_org.cols());
      Tensor d_z(h_org.rows(), h_org.cols());
      for (std::size_t i = 0; i < gate.size(); ++i) {
        const double gi = gate.values()[i];
        const double up = grad_out.values()[i];
        d_org.values()[i] = up * gi;
        d_syn.values()[i] = up * (1.0 - gi);
        d_z.values()[i] = up * (h_org.values()[i] - syn.values()[i]) * gi *
                          (1.0 - gi);
      }
      add_in_place(d_org, matmul_bt(d_z, p.w_org));
      add_in_place(d_syn, matmul_bt(d_z, p.w_syn));
      g.d_org = std::move(d_org);
      g.d_syn = resample_time_backward(d_syn, syn_frames);
      g.d_params.gate = GateParams{matmul_at(h_org, d_z), matmul_at(syn, d_z),
                                   column_sums(d_z)};
      break;
    }
    case Mechanism::kCat: {
      const CatParams& p = *params.cat;
      const std::size_t d = h_org.cols();
      const Tensor x = concat_cols(h_org, resample_time(h_syn, h_org.rows()));
      const Tensor d_x = matmul_bt(grad_out, p.weight);
      g.d_org = slice_cols(d_x, 0, d);
      g.d_syn = resample_time_backward(slice_cols(d_x, d, d), syn_frames);
      g.d_params.cat = CatParams{matmul_at(x, grad_out), column_sums(grad_out)};
      break;
    }
  }
  return g;
}

}  // namespace goldenbench::fusion
