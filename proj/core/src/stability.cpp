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

#include "tpo/verify/stability.hpp"

#include <cmath>

#include "tpo/interp/interp.hpp"
#include "tpo/util/rng.hpp"

namespace tpo::verify {

bool float_stability_filter(const ir::KernelGraph &g, const ir::KernelGraph &program,
                            int trials, double tol, uint64_t seed,
                            double input_scale) {
  using interp::FTensor;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::derive(seed, uint64_t(trial));
    std::vector<FTensor> inputs;
    for (ir::TensorId t : program.inputs) {
      FTensor in(program.tensor(t).shape);
      for (double &v : in.data) v = rng.normal() * input_scale;
      inputs.push_back(std::move(in));
    }
    std::vector<FTensor> ref = interp::eval_mugraph(program, inputs);
    std::vector<FTensor> out = interp::eval_mugraph(g, inputs);
    for (size_t t = 0; t < ref.size(); ++t) {
      for (size_t i = 0; i < ref[t].data.size(); ++i) {
        double o = out[t].data[i];
        if (!std::isfinite(o)) return false;
        double r = ref[t].data[i];
        double err = std::abs(o - r) / std::max(std::abs(r), 1e-6);
        if (err > tol) return false;
      }
    }
  }
  return true;
}

}  // namespace tpo::verify
