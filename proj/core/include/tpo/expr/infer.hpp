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

#include <vector>

#include "tpo/expr/expr.hpp"
#include "tpo/ir/graph.hpp"

namespace tpo::expr {

/// Abstract expression of a pre-defined operator's output. `forloop` is
/// the enclosing block graph's iteration count (used by Accum).
ExprId infer_expr(ExprPool &pool, ir::OpType op, const ir::OpAttrs &attrs,
                  const std::vector<ExprId> &input_exprs,
                  const std::vector<ir::TensorShape> &input_shapes,
                  int64_t forloop = 1);

/// Abstract expressions of all graph outputs. Graph-defined operators
/// are inlined: input expressions flow into the block graph and its
/// output expressions are lifted back out. Inputs map to var(ordinal).
std::vector<ExprId> graph_expr(ExprPool &pool, const ir::KernelGraph &g);

/// Expressions of every tensor in the graph (indexed by tensor id).
std::vector<ExprId> tensor_exprs(ExprPool &pool, const ir::KernelGraph &g);

}  // namespace tpo::expr
