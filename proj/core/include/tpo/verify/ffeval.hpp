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

#pragma once

#include <vector>

#include "tpo/internal/eval_core.hpp"
#include "tpo/verify/field.hpp"

namespace tpo::verify {

using FFTensor = internal::Tensor<FFValue>;

/// SiLU has no modular-arithmetic row; it is treated as an opaque
/// sampled function: a fresh random per-field lookup table per test,
/// shared by both graphs under comparison.
struct SiluTables {
  std::vector<uint16_t> tp, tq;
  static SiluTables sample(const FieldParams &fp, Rng &rng);
};

struct FFSemantics {
  using Value = FFValue;
  const FieldParams &fp;
  uint32_t omega;
  const SiluTables *silu_tables = nullptr;

  FFValue zero() const { return FFValue{0, 0, true}; }
  FFValue add(FFValue a, FFValue b) const { return fp.add(a, b); }
  FFValue sub(FFValue a, FFValue b) const { return fp.sub(a, b); }
  FFValue mul(FFValue a, FFValue b) const { return fp.mul(a, b); }
  FFValue div(FFValue a, FFValue b) const { return fp.div(a, b); }
  FFValue exp(FFValue a) const { return fp.exp(a, omega); }
  FFValue sqrt(FFValue a) const { return fp.sqrt(a); }
  FFValue silu(FFValue a) const {
    if (!silu_tables) throw Error(ErrCode::Unsupported, "silu tables not sampled");
    FFValue r;
    r.xp = silu_tables->tp[a.xp];
    r.q_defined = a.q_defined;
    if (a.q_defined) r.xq = silu_tables->tq[a.xq];
    return r;
  }
};

std::vector<FFTensor> sample_inputs(const FieldParams &fp,
                                    const std::vector<ir::TensorShape> &shapes,
                                    Rng &rng);

/// Evaluates a graph over Z_p x Z_q; imap/fmap partitioning, loop
/// accumulation, and omap assembly are simulated for graph-defined ops.
std::vector<FFTensor> ff_eval(const ir::KernelGraph &g,
                              const std::vector<FFTensor> &inputs,
                              const FieldParams &fp, uint32_t omega,
                              const SiluTables *silu = nullptr);

}  // namespace tpo::verify
