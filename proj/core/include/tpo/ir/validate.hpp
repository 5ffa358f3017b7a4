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
#include <map>
#include <string>
#include <vector>

#include "tpo/ir/graph.hpp"

namespace tpo::ir {

struct MemLimits {
  int64_t smem_bytes = 48 * 1024;
  int64_t reg_elems = 512;   // per thread-graph instance
  int64_t elem_size = 2;     // bytes per element (half-precision model)
};

enum class ViolationKind {
  OperatorSpec,   // shape inference or level placement failed
  MemoryCapacity,
  PathRule,       // InIter/Accum/OutSaver path condition
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidityReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

/// Checks operator specs, per-scope memory capacities, and the
/// one-InIter / one-Accum / one-OutSaver path rule of every block graph.
ValidityReport validate(const KernelGraph &g, const MemLimits &limits = {});

/// Conservative per-scope footprint: sum of element counts times element
/// size over all tensors at that scope, ignoring lifetime reuse.
std::map<Scope, int64_t> memory_usage(const KernelGraph &g,
                                      const MemLimits &limits = {});
int64_t block_shared_bytes(const BlockGraph &bg, int64_t elem_size);

struct LaxReport {
  bool lax = true;
  std::string offending;  // op path description when not Lax
};

/// A computation graph is Lax when it uses only the supported operator
/// set and every input-to-output path contains at most one EwExp.
LaxReport lax_check(const KernelGraph &g);

}  // namespace tpo::ir
