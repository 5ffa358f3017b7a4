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

#include "tpo/verify/ffeval.hpp"

namespace tpo::verify {

SiluTables SiluTables::sample(const FieldParams &fp, Rng &rng) {
  SiluTables t;
  t.tp.resize(fp.p());
  t.tq.resize(fp.q());
  for (uint32_t i = 0; i < fp.p(); ++i) t.tp[i] = uint16_t(rng.uniform(fp.p()));
  for (uint32_t i = 0; i < fp.q(); ++i) t.tq[i] = uint16_t(rng.uniform(fp.q()));
  return t;
}

std::vector<FFTensor> sample_inputs(const FieldParams &fp,
                                    const std::vector<ir::TensorShape> &shapes,
                                    Rng &rng) {
  std::vector<FFTensor> out;
  out.reserve(shapes.size());
  for (const ir::TensorShape &s : shapes) {
    FFTensor t(s);
    for (FFValue &v : t.data) v = fp.sample(rng);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<FFTensor> ff_eval(const ir::KernelGraph &g,
                              const std::vector<FFTensor> &inputs,
                              const FieldParams &fp, uint32_t omega,
                              const SiluTables *silu) {
  FFSemantics sem{fp, omega, silu};
  internal::Evaluator<FFSemantics> ev(sem);
  return ev.run(g, inputs);
}

}  // namespace tpo::verify
