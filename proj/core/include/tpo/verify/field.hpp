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
#include <vector>

#include "tpo/ir/shape.hpp"
#include "tpo/util/rng.hpp"

namespace tpo::verify {

/// Signals that the sampled inputs hit an undefined field operation
/// (zero inverse or non-residue square root); the round is retried with
/// fresh inputs.
struct ResampleNeeded {
  ErrCode code;
};

/// Element of Z_p x Z_q. The q component becomes undefined (poisoned)
/// after an exponentiation; using a poisoned value inside another
/// exponent is a hard error.
struct FFValue {
  uint16_t xp = 0;
  uint16_t xq = 0;
  bool q_defined = true;

  bool operator==(const FFValue &o) const {
    if (xp != o.xp) return false;
    if (q_defined && o.q_defined) return xq == o.xq;
    return true;
  }
};

/// Paired prime fields with q | p - 1 and an element of multiplicative
/// order q used as the exponentiation base.
class FieldParams {
 public:
  FieldParams(uint32_t p = 227, uint32_t q = 113, uint32_t omega_base = 4);

  uint32_t p() const { return p_; }
  uint32_t q() const { return q_; }
  uint32_t omega_base() const { return omega_base_; }

  FFValue add(FFValue a, FFValue b) const;
  FFValue sub(FFValue a, FFValue b) const;
  FFValue mul(FFValue a, FFValue b) const;
  FFValue div(FFValue a, FFValue b) const;  // throws ResampleNeeded on zero
  FFValue exp(FFValue a, uint32_t omega) const;
  FFValue sqrt(FFValue a) const;  // throws ResampleNeeded on non-residue

  uint32_t pow_p(uint32_t base, uint32_t e) const;
  uint32_t inv_p(uint32_t x) const { return inv_p_[x]; }
  uint32_t inv_q(uint32_t x) const { return inv_q_[x]; }
  /// Smaller square root, or -1 when x is not a residue.
  int32_t sqrt_p(uint32_t x) const { return sqrt_p_[x]; }
  int32_t sqrt_q(uint32_t x) const { return sqrt_q_[x]; }

  FFValue sample(Rng &rng) const;
  uint32_t sample_omega(Rng &rng) const;  // omega_base^k, k uniform in [0,q)

 private:
  uint32_t p_, q_, omega_base_;
  std::vector<uint32_t> inv_p_, inv_q_;
  std::vector<int32_t> sqrt_p_, sqrt_q_;
};

}  // namespace tpo::verify
