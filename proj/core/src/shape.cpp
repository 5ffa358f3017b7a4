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

#include "tpo/ir/shape.hpp"

#include <sstream>

namespace tpo {

const char *err_name(ErrCode c) {
  switch (c) {
    case ErrCode::ShapeMismatch: return "ShapeMismatch";
    case ErrCode::NotDivisible: return "NotDivisible";
    case ErrCode::ReplicaInOmap: return "ReplicaInOmap";
    case ErrCode::Unsupported: return "Unsupported";
    case ErrCode::DivByZero: return "DivByZero";
    case ErrCode::NonResidue: return "NonResidue";
    case ErrCode::PoisonedExponent: return "PoisonedExponent";
    case ErrCode::BudgetExhausted: return "BudgetExhausted";
    case ErrCode::Infeasible: return "Infeasible";
    case ErrCode::DoesNotFit: return "DoesNotFit";
    case ErrCode::ParseError: return "ParseError";
    case ErrCode::NotLax: return "NotLax";
    case ErrCode::UnknownSuite: return "UnknownSuite";
    case ErrCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace ir {

std::string to_string(const TensorShape &s) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < s.dims.size(); ++i) {
    if (i) os << ',';
    os << s.dims[i];
  }
  os << ']';
  return os.str();
}

const char *scope_name(Scope s) {
  switch (s) {
    case Scope::Device: return "device";
    case Scope::Shared: return "shared";
    case Scope::Register: return "register";
  }
  return "?";
}

std::string to_string(const DimMap &m, bool grid_axes) {
  static const char *grid[] = {"x", "y", "z"};
  std::ostringstream os;
  os << '{';
  for (int a = 0; a < m.axes(); ++a) {
    if (a) os << ',';
    os << (grid_axes ? grid[a] : "i") << "<->";
    if (m.targets[size_t(a)] == kReplica)
      os << "phi";
    else
      os << m.targets[size_t(a)];
  }
  os << '}';
  return os.str();
}

}  // namespace ir
}  // namespace tpo
