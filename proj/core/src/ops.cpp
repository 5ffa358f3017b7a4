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

#include "tpo/ir/ops.hpp"

#include <sstream>

namespace tpo::ir {

namespace {
const char *kOpNames[kNumOpTypes] = {
    "initer", "outsaver", "matmul",  "sum",   "ewadd",   "ewmul",
    "ewdiv",  "ewexp",    "repeat",  "reshape", "sqr",   "sqrt",
    "silu",   "accum",    "concatmatmul", "graphdef",
};
}  // namespace

const char *op_name(OpType t) { return kOpNames[static_cast<int>(t)]; }

OpType op_from_name(const std::string &name) {
  for (int i = 0; i < kNumOpTypes; ++i)
    if (name == kOpNames[i]) return static_cast<OpType>(i);
  throw Error(ErrCode::ParseError, "unknown op type '" + name + "'");
}

bool op_allowed_at(OpType t, Level level) {
  switch (t) {
    case OpType::InIter:
    case OpType::OutSaver:
    case OpType::Accum:
      return level == Level::Block;
    case OpType::Matmul:
    case OpType::Sum:
    case OpType::EwAdd:
    case OpType::EwMul:
    case OpType::EwDiv:
    case OpType::EwExp:
      return true;  // kernel, block, and thread
    case OpType::Repeat:
    case OpType::Reshape:
    case OpType::Sqr:
    case OpType::Sqrt:
    case OpType::SiLU:
      return level != Level::Thread;
    case OpType::ConcatMatmul:
      return level != Level::Thread;
    case OpType::GraphDef:
      return level == Level::Kernel;
  }
  return false;
}

int op_arity(OpType t) {
  switch (t) {
    case OpType::InIter:
      return 0;  // operand referenced via attrs
    case OpType::OutSaver:
    case OpType::Sum:
    case OpType::EwExp:
    case OpType::Repeat:
    case OpType::Reshape:
    case OpType::Sqr:
    case OpType::Sqrt:
    case OpType::SiLU:
    case OpType::Accum:
      return 1;
    case OpType::Matmul:
    case OpType::EwAdd:
    case OpType::EwMul:
    case OpType::EwDiv:
      return 2;
    case OpType::ConcatMatmul:
      return 4;
    case OpType::GraphDef:
      return -1;  // variable
  }
  return -1;
}

bool op_elementwise(OpType t) {
  switch (t) {
    case OpType::EwAdd:
    case OpType::EwMul:
    case OpType::EwDiv:
    case OpType::EwExp:
    case OpType::Sqr:
    case OpType::Sqrt:
    case OpType::SiLU:
      return true;
    default:
      return false;
  }
}

bool op_commutative(OpType t) {
  return t == OpType::EwAdd || t == OpType::EwMul;
}

namespace {
void append_map(std::ostringstream &os, const DimMap &m) {
  os << '[';
  for (int t : m.targets) os << t << ',';
  os << ']';
}
}  // namespace

std::string attr_key(const OpAttrs &a) {
  std::ostringstream os;
  std::visit(
      [&os](const auto &v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NoAttrs>) {
          os << "-";
        } else if constexpr (std::is_same_v<T, SumAttrs>) {
          os << "sum:" << v.dim << ':' << v.group;
        } else if constexpr (std::is_same_v<T, AccumAttrs>) {
          os << "accum:";
          append_map(os, v.fmap);
        } else if constexpr (std::is_same_v<T, ReshapeAttrs>) {
          os << "reshape:" << to_string(v.target);
        } else if constexpr (std::is_same_v<T, RepeatAttrs>) {
          os << "repeat:" << to_string(v.target);
        } else if constexpr (std::is_same_v<T, InIterAttrs>) {
          os << "initer:" << v.operand << ':';
          append_map(os, v.imap);
          append_map(os, v.fmap);
        } else if constexpr (std::is_same_v<T, OutSaverAttrs>) {
          os << "outsaver:";
          append_map(os, v.omap);
        }
      },
      a);
  return os.str();
}

}  // namespace tpo::ir
