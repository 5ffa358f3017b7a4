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

#include <cstdint>

#include "tpo/ir/graph.hpp"

namespace tpo::verify {

/// Floating-point filter applied after finite-field verification: the
/// candidate passes when, over `trials` random standard-normal inputs,
/// its interpreter output is free of NaN/Inf and elementwise
/// |out - ref| / max(|ref|, 1e-6) <= tol against the reference program.
/// `input_scale` stretches the inputs to provoke overflow in tests.
bool float_stability_filter(const ir::KernelGraph &g, const ir::KernelGraph &program,
                            int trials, double tol, uint64_t seed = 17,
                            double input_scale = 1.0);

}  // namespace tpo::verify
