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

#include "tpo/interp/interp.hpp"

namespace tpo::interp {

std::vector<FTensor> eval_program(const ir::KernelGraph &g,
                                  const std::vector<FTensor> &inputs) {
  if (!g.is_computation_graph())
    throw Error(ErrCode::Unsupported, "eval_program expects a flat graph");
  FloatSemantics<double> sem;
  internal::Evaluator<FloatSemantics<double>> ev(sem);
  return ev.run(g, inputs);
}

std::vector<FTensor> eval_mugraph(const ir::KernelGraph &g,
                                  const std::vector<FTensor> &inputs) {
  FloatSemantics<double> sem;
  internal::Evaluator<FloatSemantics<double>> ev(sem);
  return ev.run(g, inputs);
}

std::vector<F32Tensor> eval_mugraph_f32(const ir::KernelGraph &g,
                                        const std::vector<F32Tensor> &inputs) {
  FloatSemantics<float> sem;
  internal::Evaluator<FloatSemantics<float>> ev(sem);
  return ev.run(g, inputs);
}

}  // namespace tpo::interp
