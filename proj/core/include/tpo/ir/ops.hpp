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
#include <string>
#include <variant>

#include "tpo/ir/shape.hpp"

namespace tpo::ir {

enum class OpType : uint8_t {
  InIter,
  OutSaver,
  Matmul,
  Sum,
  EwAdd,
  EwMul,
  EwDiv,
  EwExp,
  Repeat,
  Reshape,
  Sqr,
  Sqrt,
  SiLU,
  Accum,
  ConcatMatmul,
  GraphDef,
};

inline constexpr int kNumOpTypes = 16;

const char *op_name(OpType t);
OpType op_from_name(const std::string &name);

enum class Level : uint8_t { Kernel, Block, Thread };

/// Graph levels at which an operator may appear.
bool op_allowed_at(OpType t, Level level);

/// Number of tensor operands the operator consumes.
int op_arity(OpType t);

bool op_elementwise(OpType t);  // eligible for thread-graph fusion
bool op_commutative(OpType t);

// ---- per-op attributes -------------------------------------------------

struct NoAttrs {
  bool operator==(const NoAttrs &) const = default;
};

/// Sum along dimension `dim` for every `group` elements.
struct SumAttrs {
  int dim = 0;
  int64_t group = 1;
  bool operator==(const SumAttrs &) const = default;
};

/// Loop accumulator. Replica fmap entry means elementwise accumulation
/// across iterations; a data-dim entry concatenates iteration results
/// along that dimension.
struct AccumAttrs {
  DimMap fmap;  // single loop axis
  bool operator==(const AccumAttrs &) const = default;
};

struct ReshapeAttrs {
  TensorShape target;
  bool operator==(const ReshapeAttrs &) const = default;
};

/// Broadcast the input to `target` (dims equal or 1 / missing on the left).
struct RepeatAttrs {
  TensorShape target;
  bool operator==(const RepeatAttrs &) const = default;
};

/// Loads one per-block, per-iteration tile of a kernel-level operand.
struct InIterAttrs {
  int operand = 0;  // index into the enclosing GraphDef's input list
  DimMap imap;      // grid axes -> data dim or replica
  DimMap fmap;      // loop axis -> data dim or replica
  bool operator==(const InIterAttrs &) const = default;
};

/// Stores a block output back to device memory; omap places each grid
/// axis on a distinct data dimension of the assembled output.
struct OutSaverAttrs {
  DimMap omap;
  bool operator==(const OutSaverAttrs &) const = default;
};

using OpAttrs = std::variant<NoAttrs, SumAttrs, AccumAttrs, ReshapeAttrs,
                             RepeatAttrs, InIterAttrs, OutSaverAttrs>;

std::string attr_key(const OpAttrs &a);  // canonical string for ranking

}  // namespace tpo::ir
