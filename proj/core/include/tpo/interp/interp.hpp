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

#include <cmath>
#include <vector>

#include "tpo/internal/eval_core.hpp"

namespace tpo::interp {

using FTensor = internal::Tensor<double>;

template <typename T>
struct FloatSemantics {
  using Value = T;
  T zero() const { return T(0); }
  T add(T a, T b) const { return a + b; }
  T sub(T a, T b) const { return a - b; }
  T mul(T a, T b) const { return a * b; }
  T div(T a, T b) const { return a / b; }
  T exp(T a) const { return std::exp(a); }
  T sqrt(T a) const { return std::sqrt(a); }
  T silu(T a) const { return a / (T(1) + std::exp(-a)); }
};

/// Direct forward evaluation of a flat computation graph.
std::vector<FTensor> eval_program(const ir::KernelGraph &g,
                                  const std::vector<FTensor> &inputs);

/// Full hierarchical evaluation: grid partitioning, loop iteration,
/// accumulation, and output assembly are simulated sequentially
/// (grid-major, then loop-major; fixed order, bit-reproducible).
std::vector<FTensor> eval_mugraph(const ir::KernelGraph &g,
                                  const std::vector<FTensor> &inputs);

/// 32-bit variant used to stress the numerical-stability filter.
using F32Tensor = internal::Tensor<float>;
std::vector<F32Tensor> eval_mugraph_f32(const ir::KernelGraph &g,
                                        const std::vector<F32Tensor> &inputs);

}  // namespace tpo::interp
