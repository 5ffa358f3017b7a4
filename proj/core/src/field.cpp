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

#include "tpo/verify/field.hpp"

#include <string>

namespace tpo::verify {

namespace {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint32_t pow_mod(uint32_t base, uint32_t e, uint32_t m) {
  uint64_t r = 1, b = base % m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return uint32_t(r);
}

}  // namespace

FieldParams::FieldParams(uint32_t p, uint32_t q, uint32_t omega_base)
    : p_(p), q_(q), omega_base_(omega_base) {
  if (!is_prime(p) || !is_prime(q))
    throw Error(ErrCode::ConfigError, "p and q must be prime");
  if ((p - 1) % q != 0)
    throw Error(ErrCode::ConfigError, "q must divide p-1");
  if (omega_base % p == 0 || omega_base % p == 1 ||
      pow_mod(omega_base, q, p) != 1)
    throw Error(ErrCode::ConfigError,
                "omega base must have multiplicative order q in Z_p");

  // Inverses by Fermat; index 0 left as 0 (undefined).
  inv_p_.assign(p, 0);
  for (uint32_t x = 1; x < p; ++x) inv_p_[x] = pow_mod(x, p - 2, p);
  inv_q_.assign(q, 0);
  for (uint32_t x = 1; x < q; ++x) inv_q_[x] = pow_mod(x, q - 2, q);

  // Smaller square root per residue; -1 marks non-residues.
  sqrt_p_.assign(p, -1);
  for (int32_t r = int32_t(p) - 1; r >= 0; --r)
    sqrt_p_[uint64_t(r) * uint64_t(r) % p] = r;
  sqrt_q_.assign(q, -1);
  for (int32_t r = int32_t(q) - 1; r >= 0; --r)
    sqrt_q_[uint64_t(r) * uint64_t(r) % q] = r;
}

FFValue FieldParams::add(FFValue a, FFValue b) const {
  FFValue r;
  r.xp = uint16_t((uint32_t(a.xp) + b.xp) % p_);
  r.q_defined = a.q_defined && b.q_defined;
  if (r.q_defined) r.xq = uint16_t((uint32_t(a.xq) + b.xq) % q_);
  return r;
}

FFValue FieldParams::sub(FFValue a, FFValue b) const {
  FFValue r;
  r.xp = uint16_t((uint32_t(a.xp) + p_ - b.xp) % p_);
  r.q_defined = a.q_defined && b.q_defined;
  if (r.q_defined) r.xq = uint16_t((uint32_t(a.xq) + q_ - b.xq) % q_);
  return r;
}

FFValue FieldParams::mul(FFValue a, FFValue b) const {
  FFValue r;
  r.xp = uint16_t(uint32_t(a.xp) * b.xp % p_);
  r.q_defined = a.q_defined && b.q_defined;
  if (r.q_defined) r.xq = uint16_t(uint32_t(a.xq) * b.xq % q_);
  return r;
}

FFValue FieldParams::div(FFValue a, FFValue b) const {
  if (b.xp == 0) throw ResampleNeeded{ErrCode::DivByZero};
  FFValue r;
  r.xp = uint16_t(uint32_t(a.xp) * inv_p_[b.xp] % p_);
  r.q_defined = a.q_defined && b.q_defined;
  if (r.q_defined) {
    if (b.xq == 0) throw ResampleNeeded{ErrCode::DivByZero};
    r.xq = uint16_t(uint32_t(a.xq) * inv_q_[b.xq] % q_);
  }
  return r;
}

FFValue FieldParams::exp(FFValue a, uint32_t omega) const {
  if (!a.q_defined)
    throw Error(ErrCode::PoisonedExponent,
                "exponent depends on a prior exponentiation");
  FFValue r;
  r.xp = uint16_t(pow_mod(omega, a.xq, p_));
  r.q_defined = false;
  return r;
}

FFValue FieldParams::sqrt(FFValue a) const {
  int32_t rp = sqrt_p_[a.xp];
  if (rp < 0) throw ResampleNeeded{ErrCode::NonResidue};
  FFValue r;
  r.xp = uint16_t(rp);
  r.q_defined = a.q_defined;
  if (a.q_defined) {
    int32_t rq = sqrt_q_[a.xq];
    if (rq < 0) throw ResampleNeeded{ErrCode::NonResidue};
    r.xq = uint16_t(rq);
  }
  return r;
}

uint32_t FieldParams::pow_p(uint32_t base, uint32_t e) const {
  return pow_mod(base, e, p_);
}

FFValue FieldParams::sample(Rng &rng) const {
  FFValue v;
  v.xp = uint16_t(rng.uniform(p_));
  v.xq = uint16_t(rng.uniform(q_));
  return v;
}

uint32_t FieldParams::sample_omega(Rng &rng) const {
  return pow_mod(omega_base_, uint32_t(rng.uniform(q_)), p_);
}

}  // namespace tpo::verify
