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
#include <optional>

#include "tpo/verify/ffeval.hpp"

namespace tpo::verify {

struct VerifyConfig {
  int num_tests = 1;
  uint64_t seed = 0;
  int max_resamples = 16;      // undefined-op retries per round
  double float_tolerance = 1e-3;
};

struct Witness {
  uint64_t seed = 0;
  int round = 0;
  uint32_t omega = 0;
  int tensor = 0;
  int64_t index = 0;
};

struct EquivVerdict {
  enum Kind { Equivalent, NotEquivalent, Inconclusive } kind = Equivalent;
  std::optional<Witness> witness;
  int rounds_run = 0;
  int resamples = 0;
};

/// Random testing over Z_p x Z_q: both graphs are evaluated on shared
/// uniform inputs and a shared root of unity; any element mismatch is a
/// counterexample. Equivalent graphs pass every round.
EquivVerdict random_test_equivalence(const ir::KernelGraph &g1,
                                     const ir::KernelGraph &g2,
                                     const VerifyConfig &cfg,
                                     const FieldParams &fp = FieldParams());

}  // namespace tpo::verify
