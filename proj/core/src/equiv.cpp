/* Copyright 2025-2026 The tpo Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tpo/verify/equiv.hpp"

namespace tpo::verify {

namespace {

bool graph_has_silu(const ir::KernelGraph &g) {
  for (const ir::Op &op : g.ops) {
    if (op.type == ir::OpType::SiLU) return true;
    if (op.block)
      for (const ir::Op &bop : op.block->ops)
        if (bop.type == ir::OpType::SiLU) return true;
  }
  return false;
}

}  // namespace

EquivVerdict random_test_equivalence(const ir::KernelGraph &g1,
                                     const ir::KernelGraph &g2,
                                     const VerifyConfig &cfg,
                                     const FieldParams &fp) {
  if (g1.inputs.size() != g2.inputs.size() || g1.outputs.size() != g2.outputs.size())
    throw Error(ErrCode::ShapeMismatch, "graph arity");
  std::vector<ir::TensorShape> in_shapes;
  for (size_t i = 0; i < g1.inputs.size(); ++i) {
    const ir::TensorShape &s1 = g1.tensor(g1.inputs[i]).shape;
    if (s1 != g2.tensor(g2.inputs[i]).shape)
      throw Error(ErrCode::ShapeMismatch, "input shapes");
    in_shapes.push_back(s1);
  }
  for (size_t i = 0; i < g1.outputs.size(); ++i)
    if (g1.tensor(g1.outputs[i]).shape != g2.tensor(g2.outputs[i]).shape)
      throw Error(ErrCode::ShapeMismatch, "output shapes");

  bool needs_silu = graph_has_silu(g1) || graph_has_silu(g2);

  EquivVerdict verdict;
  for (int round = 0; round < cfg.num_tests; ++round) {
    bool round_done = false;
    for (int attempt = 0; attempt <= cfg.max_resamples && !round_done; ++attempt) {
      Rng rng = Rng::derive(cfg.seed, uint64_t(round) * 131071 + uint64_t(attempt));
      std::vector<FFTensor> inputs = sample_inputs(fp, in_shapes, rng);
      uint32_t omega = fp.sample_omega(rng);
      SiluTables tables;
      const SiluTables *tp = nullptr;
      if (needs_silu) {
        tables = SiluTables::sample(fp, rng);
        tp = &tables;
      }
      try {
        std::vector<FFTensor> o1 = ff_eval(g1, inputs, fp, omega, tp);
        std::vector<FFTensor> o2 = ff_eval(g2, inputs, fp, omega, tp);
        for (size_t t = 0; t < o1.size(); ++t) {
          for (size_t i = 0; i < o1[t].data.size(); ++i) {
            if (!(o1[t].data[i] == o2[t].data[i])) {
              verdict.kind = EquivVerdict::NotEquivalent;
              verdict.witness = Witness{cfg.seed, round, omega,
                                        static_cast<int>(t), static_cast<int64_t>(i)};
              verdict.rounds_run = round + 1;
              return verdict;
            }
          }
        }
        round_done = true;
      } catch (const ResampleNeeded &) {
        ++verdict.resamples;
      }
    }
    if (!round_done) {
      verdict.kind = EquivVerdict::Inconclusive;
      verdict.rounds_run = round;
      return verdict;
    }
  }
  verdict.kind = EquivVerdict::Equivalent;
  verdict.rounds_run = cfg.num_tests;
  return verdict;
}

}  // namespace tpo::verify
