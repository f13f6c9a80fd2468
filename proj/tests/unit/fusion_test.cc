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

#include "goldenbench/error.h"
#include "goldenbench/fusion/grad_check.h"
#include "goldenbench/fusion/mechanisms.h"
#include "goldenbench/fusion/tensor.h"

namespace goldenbench::fusion {
namespace {

Tensor identity(std::size_t d) {
  Tensor t(d, d);
  for (std::size_t i = 0; i < d; ++i) t(i, i) = 1.0;
  return t;
}

void expect_near(const Tensor& a, const Tensor& b, double tol) {
  ASSERT_TRUE(a.same_shape(b));
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_NEAR(a.values()[i], b.values()[i], tol) << "index " << i;
  }
}

// Sum of squares of the fused output, computed here rather than by the
// library.
double test_loss(const Tensor& org, const Tensor& syn, const FusionParams& p) {
  const Tensor out = fuse(org, syn, p);
  long double s = 0.0L;
  for (double v : out.values()) s += static_cast<long double>(v) * v;
  return static_cast<double>(s);
}

// Central differences over every parameter coordinate, compared with the
// analytic gradients from loss_gradients.
double max_param_rel_error(const Tensor& org, const Tensor& syn,
                           const FusionParams& params) {
  const FusionGrads g = loss_gradients(org, syn, params);
  std::vector<const Tensor*> analytic;
  for_each_parameter(g.d_params, [&](std::string_view, const Tensor& t) {
    analytic.push_back(&t);
  });
  FusionParams work = params;
  std::vector<Tensor*> tensors;
  for_each_parameter(work, [&](std::string_view, Tensor& t) { tensors.push_back(&t); });
  EXPECT_EQ(tensors.size(), analytic.size());
  double worst = 0.0;
  const double h = 1e-5;
  for (std::size_t b = 0; b < tensors.size(); ++b) {
    for (std::size_t i = 0; i < tensors[b]->size(); ++i) {
      double& x = tensors[b]->values()[i];
      const double saved = x;
      x = saved + h;
      const double up = test_loss(org, syn, work);
      x = saved - h;
      const double down = test_loss(org, syn, work);
      x = saved;
      const double numeric = (up - down) / (2 * h);
      const double exact = analytic[b]->values()[i];
      const double rel = std::abs(exact - numeric) /
                         std::max({std::abs(exact), std::abs(numeric), 1e-4});
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

// --- tensor ---------------------------------------------------------------

TEST(TensorTest, MatmulByHand) {
  const Tensor a(2, 3, {1, 2, 3, 4, 5, 6});
  const Tensor b(3, 2, {7, 8, 9, 10, 11, 12});
  EXPECT_EQ(matmul(a, b), Tensor(2, 2, {58, 64, 139, 154}));
  const Tensor at(3, 2, {1, 4, 2, 5, 3, 6});
  EXPECT_EQ(matmul_at(at, b), matmul(a, b));
  const Tensor bt(2, 3, {7, 9, 11, 8, 10, 12});
  EXPECT_EQ(matmul_bt(a, bt), matmul(a, b));
  EXPECT_THROW(matmul(a, a), Error);
}

TEST(TensorTest, ColumnOps) {
  const Tensor a(2, 2, {1, 2, 3, 4});
  const Tensor b(2, 1, {5, 6});
  const Tensor c = concat_cols(a, b);
  EXPECT_EQ(c, Tensor(2, 3, {1, 2, 5, 3, 4, 6}));
  EXPECT_EQ(slice_cols(c, 2, 1), b);
  Tensor z(2, 3);
  write_cols(z, 1, a);
  EXPECT_EQ(z, Tensor(2, 3, {0, 1, 2, 0, 3, 4}));
  EXPECT_EQ(column_sums(a), Tensor(1, 2, {4, 6}));
  Tensor biased = a;
  add_row_bias(biased, Tensor(1, 2, {10, 20}));
  EXPECT_EQ(biased, Tensor(2, 2, {11, 22, 13, 24}));
  EXPECT_EQ(sum_of_squares(a), 30.0L);
  EXPECT_EQ(scale(a, 2.0), add(a, a));
  EXPECT_THROW(Tensor(2, 2, {1, 2, 3}), Error);
  EXPECT_THROW(Tensor(1, 1, {NAN}), Error);
}

// --- resampling -----------------------------------------------------------

TEST(ResampleTest, Examples) {
  const Tensor h = random_tensor(4, 3, 1);
  EXPECT_EQ(resample_time(h, 4), h);
  const Tensor flat(3, 2, {7, -1, 7, -1, 7, -1});
  expect_near(resample_time(flat, 5), Tensor(5, 2, {7, -1, 7, -1, 7, -1, 7, -1, 7, -1}),
              1e-15);
  EXPECT_EQ(resample_time(Tensor(2, 1, {0, 2}), 3), Tensor(3, 1, {0, 1, 2}));
  EXPECT_EQ(resample_time(Tensor(2, 1, {0, 2}), 1), Tensor(1, 1, {1}));
  EXPECT_EQ(resample_time(Tensor(1, 2, {3, 4}), 3), Tensor(3, 2, {3, 4, 3, 4, 3, 4}));
  EXPECT_THROW(resample_time(h, 0), Error);
}

TEST(ResampleTest, BackwardIsAdjoint) {
  for (std::size_t src = 1; src <= 7; ++src) {
    for (std::size_t dst = 1; dst <= 7; ++dst) {
      const Tensor x = random_tensor(src, 3, 10 * src + dst);
      const Tensor g = random_tensor(dst, 3, 100 * src + dst);
      const Tensor y = resample_time(x, dst);
      const Tensor xt = resample_time_backward(g, src);
      double lhs = 0, rhs = 0;
      for (std::size_t i = 0; i < y.size(); ++i) lhs += y.values()[i] * g.values()[i];
      for (std::size_t i = 0; i < x.size(); ++i) rhs += x.values()[i] * xt.values()[i];
      ASSERT_NEAR(lhs, rhs, 1e-12) << src << "->" << dst;
    }
  }
}

// --- ADD ------------------------------------------------------------------

TEST(AddTest, Examples) {
  const Tensor org = random_tensor(3, 4, 2);
  EXPECT_EQ(fuse_add(org, Tensor(3, 4)), org);
  EXPECT_EQ(fuse_add(org, org), scale(org, 2.0));
  EXPECT_EQ(fuse_add(Tensor(1, 2, {1, 2}), Tensor(1, 2, {3, 5})), Tensor(1, 2, {4, 7}));
  const Tensor syn = random_tensor(3, 4, 3);
  EXPECT_EQ(fuse_add(org, syn), fuse_add(syn, org));
  EXPECT_EQ(fuse_add(org, random_tensor(5, 4, 4)).rows(), 3u);
  EXPECT_THROW(fuse_add(org, random_tensor(3, 5, 4)), Error);
}

TEST(AddTest, ClosedFormGradient) {
  const Tensor org = random_tensor(4, 6, 5);
  const Tensor syn = random_tensor(4, 6, 6);
  const FusionParams params = init_params(Mechanism::kAdd, 6, 1, 0);
  const FusionGrads g = loss_gradients(org, syn, params);
  const Tensor twice = scale(fuse_add(org, syn), 2.0);
  EXPECT_EQ(g.d_org, twice);
  EXPECT_EQ(g.d_syn, twice);
  EXPECT_TRUE(grad_check(org, syn, params, 1e-10).pass);
}

// --- attention ------------------------------------------------------------

MhaParams identity_mha(std::size_t d, std::size_t heads) {
  MhaParams p;
  p.n_heads = heads;
  p.w_q = identity(d);
  p.w_k = identity(d);
  p.w_v = identity(d);
  p.w_o = identity(d);
  return p;
}

TEST(MhaTest, SingleKeyReturnsValue) {
  const Tensor q = random_tensor(5, 4, 7);
  const Tensor kv = random_tensor(1, 4, 8);
  const Tensor out = mha_forward(q, kv, kv, identity_mha(4, 1));
  for (std::size_t t = 0; t < 5; ++t) {
    for (std::size_t c = 0; c < 4; ++c) ASSERT_NEAR(out(t, c), kv(0, c), 1e-15);
  }
}

TEST(MhaTest, IdenticalKeysGiveMeanValue) {
  const Tensor q = random_tensor(3, 4, 9);
  const Tensor k(3, 4, {1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4});
  const Tensor v = random_tensor(3, 4, 10);
  const Tensor out = mha_forward(q, k, v, identity_mha(4, 2));
  const Tensor mean = scale(column_sums(v), 1.0 / 3.0);
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t c = 0; c < 4; ++c) ASSERT_NEAR(out(t, c), mean(0, c), 1e-14);
  }
}

TEST(MhaTest, BackwardMatchesDirectionalDifferences) {
  const FusionParams fp = init_params(Mechanism::kAtt, 6, 2, 11);
  const MhaParams& p = *fp.mha;
  const Tensor q = random_tensor(4, 6, 12);
  const Tensor k = random_tensor(5, 6, 13);
  const Tensor v = random_tensor(5, 6, 14);
  const Tensor w = random_tensor(4, 6, 15);  // projection of the output
  const MhaGrads g = mha_backward(q, k, v, p, w);
  auto objective = [&](const Tensor& qq, const Tensor& kk, const Tensor& vv) {
    const Tensor out = mha_forward(qq, kk, vv, p);
    double s = 0;
    for (std::size_t i = 0; i < out.size(); ++i) s += out.values()[i] * w.values()[i];
    return s;
  };
  const double h = 1e-5;
  for (int which = 0; which < 3; ++which) {
    const Tensor& x = which == 0 ? q : which == 1 ? k : v;
    const Tensor& gx = which == 0 ? g.d_q : which == 1 ? g.d_k : g.d_v;
    const Tensor dir = random_tensor(x.rows(), x.cols(), 20 + which);
    const Tensor plus = add(x, scale(dir, h));
    const Tensor minus = add(x, scale(dir, -h));
    double up, down;
    if (which == 0) {
      up = objective(plus, k, v);
      down = objective(minus, k, v);
    } else if (which == 1) {
      up = objective(q, plus, v);
      down = objective(q, minus, v);
    } else {
      up = objective(q, k, plus);
      down = objective(q, k, minus);
    }
    const double numeric = (up - down) / (2 * h);
    double exact = 0;
    for (std::size_t i = 0; i < dir.size(); ++i) exact += gx.values()[i] * dir.values()[i];
    EXPECT_NEAR(exact, numeric, 1e-6 * std::max(1.0, std::abs(exact))) << which;
  }
}

TEST(AttTest, VanishingAttentionLeavesOriginal) {
  const Tensor org = random_tensor(4, 8, 16);
  const Tensor syn = random_tensor(3, 8, 17);
  FusionParams p = init_params(Mechanism::kAtt, 8, 2, 18);
  p.mha->w_o = Tensor(8, 8);
  p.mha->b_o.reset();
  expect_near(fuse_att(org, syn, p), org, 0.0);
  FusionParams q = init_params(Mechanism::kAtt, 8, 2, 18);
  q.mha->w_v = Tensor(8, 8);
  q.mha->b_v.reset();
  q.mha->b_o.reset();
  expect_near(fuse_att(org, syn, q), org, 0.0);
}

TEST(AttTest, ShapeAndGradient) {
  const FusionParams p = init_params(Mechanism::kAtt, 8, 2, 19);
  const Tensor out = fuse(random_tensor(5, 8, 1), random_tensor(3, 8, 2), p);
  EXPECT_EQ(out.rows(), 5u);
  EXPECT_EQ(out.cols(), 8u);
  const GradCheckReport r =
      grad_check(random_tensor(4, 8, 3), random_tensor(4, 8, 4), p, 1e-4);
  EXPECT_TRUE(r.pass) << r.max_rel_error << " at " << r.worst_name;
  EXPECT_LT(max_param_rel_error(random_tensor(4, 8, 3), random_tensor(4, 8, 4), p),
            1e-4);
}

// --- GATE -----------------------------------------------------------------

GateParams zero_gate(std::size_t d) { return {Tensor(d, d), Tensor(d, d), Tensor(1, d)}; }

TEST(GateTest, NeutralAndSaturated) {
  const Tensor org = random_tensor(3, 6, 30);
  const Tensor syn = random_tensor(3, 6, 31);
  FusionParams p;
  p.mechanism = Mechanism::kGate;
  p.gate = zero_gate(6);
  expect_near(fuse_gate(org, syn, p), scale(add(org, syn), 0.5), 1e-15);
  for (double& b : p.gate->bias.values()) b = 20.0;
  expect_near(fuse_gate(org, syn, p), org, 1e-8);
}

TEST(GateTest, OutputIsConvexCombination) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Tensor org = random_tensor(4, 5, seed);
    const Tensor syn = random_tensor(6, 5, seed + 100);
    const FusionParams p = init_params(Mechanism::kGate, 5, 1, seed);
    const Tensor out = fuse(org, syn, p);
    const Tensor aligned = resample_time(syn, 4);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double lo = std::min(org.values()[i], aligned.values()[i]);
      const double hi = std::max(org.values()[i], aligned.values()[i]);
      ASSERT_GE(out.values()[i], lo - 1e-15);
      ASSERT_LE(out.values()[i], hi + 1e-15);
    }
  }
}

TEST(GateTest, Gradient) {
  const FusionParams p = init_params(Mechanism::kGate, 6, 1, 32);
  const Tensor org = random_tensor(3, 6, 33);
  const Tensor syn = random_tensor(3, 6, 34);
  EXPECT_TRUE(grad_check(org, syn, p, 1e-4).pass);
  EXPECT_LT(max_param_rel_error(org, syn, p), 1e-4);
}

// --- CAT ------------------------------------------------------------------

TEST(CatTest, Projections) {
  const Tensor org = random_tensor(3, 4, 40);
  const Tensor syn = random_tensor(3, 4, 41);
  FusionParams p;
  p.mechanism = Mechanism::kCat;
  p.cat = CatParams{Tensor(8, 4), Tensor(1, 4)};
  for (std::size_t i = 0; i < 4; ++i) p.cat->weight(i, i) = 1.0;
  expect_near(fuse_cat(org, syn, p), org, 0.0);
  p.cat->weight = Tensor(8, 4);
  for (std::size_t i = 0; i < 4; ++i) p.cat->weight(4 + i, i) = 1.0;
  expect_near(fuse_cat(org, syn, p), syn, 0.0);
}

TEST(CatTest, Gradient) {
  const FusionParams p = init_params(Mechanism::kCat, 4, 1, 42);
  const Tensor org = random_tensor(3, 4, 43);
  const Tensor syn = random_tensor(3, 4, 44);
  EXPECT_TRUE(grad_check(org, syn, p, 1e-4).pass);
  EXPECT_LT(max_param_rel_error(org, syn, p), 1e-4);
}

// --- harness ---------------------------------------------------------------

TEST(GradCheckTest, DetectsCorruptedCoordinate) {
  for (Mechanism m : {Mechanism::kAtt, Mechanism::kGate, Mechanism::kCat}) {
    const FusionParams p = init_params(m, 4, 2, 50);
    const Tensor org = random_tensor(3, 4, 51);
    const Tensor syn = random_tensor(3, 4, 52);
    FusionGrads g = loss_gradients(org, syn, p);
    EXPECT_TRUE(compare_gradients(org, syn, p, g, 1e-4, 1e-5).pass);
    // Corrupt the largest-magnitude coordinate of the first parameter block.
    Tensor* target = nullptr;
    for_each_parameter(g.d_params, [&](std::string_view, Tensor& t) {
      if (target == nullptr) target = &t;
    });
    ASSERT_NE(target, nullptr);
    std::size_t best = 0;
    for (std::size_t i = 0; i < target->size(); ++i) {
      if (std::abs(target->values()[i]) > std::abs(target->values()[best])) best = i;
    }
    target->values()[best] *= 1.01;
    const GradCheckReport r = compare_gradients(org, syn, p, g, 1e-4, 1e-5);
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.worst_coordinate, org.size() + syn.size() + best);
    EXPECT_EQ(r.worst_name,
              coordinate_name(org, syn, p, org.size() + syn.size() + best));
  }
}

TEST(GradCheckTest, ConfigurationsPass) {
  for (Mechanism m : {Mechanism::kAtt, Mechanism::kGate, Mechanism::kCat}) {
    for (std::size_t heads : {1u, 2u, 4u}) {
      const FusionParams p = init_params(m, 8, heads, heads);
      const GradCheckReport r = grad_check(random_tensor(5, 8, 1),
                                           random_tensor(7, 8, 2), p, 1e-4);
      EXPECT_TRUE(r.pass) << to_string(m) << " heads=" << heads << " "
                          << r.max_rel_error << " at " << r.worst_name;
    }
  }
}

TEST(InitTest, DeterministicAndShaped) {
  const FusionParams a = init_params(Mechanism::kAtt, 8, 2, 7);
  const FusionParams b = init_params(Mechanism::kAtt, 8, 2, 7);
  const FusionParams c = init_params(Mechanism::kAtt, 8, 2, 8);
  EXPECT_EQ(a.mha->w_q, b.mha->w_q);
  EXPECT_NE(a.mha->w_q, c.mha->w_q);
  EXPECT_EQ(a.mha->n_heads, 2u);
  for (const Tensor* t : {&a.mha->w_q, &a.mha->w_k, &a.mha->w_v, &a.mha->w_o}) {
    EXPECT_EQ(t->rows(), 8u);
    EXPECT_EQ(t->cols(), 8u);
  }
  EXPECT_EQ(a.mha->b_o->cols(), 8u);
  EXPECT_NO_THROW(a.validate(8));
  EXPECT_THROW(a.validate(6), Error);
  EXPECT_THROW(init_params(Mechanism::kAtt, 8, 3, 7), Error);
  const FusionParams cat = init_params(Mechanism::kCat, 8, 1, 7);
  EXPECT_EQ(cat.cat->weight.rows(), 16u);
  const FusionParams gate = init_params(Mechanism::kGate, 8, 1, 7);
  EXPECT_EQ(gate.gate->bias.rows(), 1u);
}

TEST(MechanismTest, Names) {
  for (Mechanism m : {Mechanism::kAdd, Mechanism::kAtt, Mechanism::kGate, Mechanism::kCat}) {
    EXPECT_EQ(parse_mechanism(to_string(m)), m);
  }
  EXPECT_EQ(parse_mechanism("gate"), Mechanism::kGate);
  EXPECT_THROW(parse_mechanism("mlp"), Error);
}

TEST(GradientDescentTest, OneStepLowersLoss) {
  for (Mechanism m : {Mechanism::kAtt, Mechanism::kGate, Mechanism::kCat}) {
    FusionParams p = init_params(m, 6, 2, 60);
    const Tensor org = random_tensor(4, 6, 61);
    const Tensor syn = random_tensor(4, 6, 62);
    const long double before = fusion_loss(org, syn, p);
    const FusionGrads g = loss_gradients(org, syn, p);
    std::vector<const Tensor*> grads;
    for_each_parameter(g.d_params, [&](std::string_view, const Tensor& t) {
      grads.push_back(&t);
    });
    std::size_t k = 0;
    for_each_parameter(p, [&](std::string_view, Tensor& t) {
      add_in_place(t, scale(*grads[k++], -1e-3));
    });
    EXPECT_LT(fusion_loss(org, syn, p), before) << to_string(m);
  }
}

}  // namespace
}  // namespace goldenbench::fusion
