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

#include <optional>
#include <vector>

#include "tpo/ir/ops.hpp"
#include "tpo/ir/shape.hpp"

namespace tpo::ir {

/// Status-carrying result used on search hot paths where exceptions
/// would be too costly.
struct ShapeResult {
  std::optional<TensorShape> shape;
  ErrCode err = ErrCode::ShapeMismatch;
  explicit operator bool() const { return shape.has_value(); }
};

/// Shape of the tensor produced by a pre-defined operator. GraphDef
/// outputs are assembled separately (see assemble_output_shape).
/// Matmul contracts the last dim of input 0 with the second-to-last of
/// input 1; leading dims are batched. Elementwise ops broadcast
/// (right-aligned, size-1 or missing dims stretch).
ShapeResult infer_output_shape(OpType op, const OpAttrs &attrs,
                               const std::vector<TensorShape> &input_shapes,
                               Level level);

/// Throwing wrapper for non-search callers.
TensorShape infer_output_shape_or_throw(OpType op, const OpAttrs &attrs,
                                        const std::vector<TensorShape> &input_shapes,
                                        Level level);

/// Per-block (or per-iteration) shape: mapped dims divided by the axis
/// extent; replica axes leave the shape unchanged.
ShapeResult partition_shape(const TensorShape &shape, const DimMap &map,
                            const std::vector<int64_t> &extents);

/// Inverse of partitioning: mapped dims multiplied by the grid extent.
/// Replica entries are not allowed in an omap.
ShapeResult assemble_output_shape(const TensorShape &per_block, const DimMap &omap,
                                  const std::vector<int64_t> &grid);

TensorShape partition_or_throw(const TensorShape &shape, const DimMap &map,
                               const std::vector<int64_t> &extents);
TensorShape assemble_or_throw(const TensorShape &per_block, const DimMap &omap,
                              const std::vector<int64_t> &grid);

/// Broadcast two shapes elementwise (nullopt when incompatible).
std::optional<TensorShape> broadcast_shapes(const TensorShape &a, const TensorShape &b);

/// Multiply-add (or elementwise-op) count used by the cost model.
int64_t op_madds(OpType op, const OpAttrs &attrs,
                 const std::vector<TensorShape> &input_shapes,
                 const TensorShape &out_shape);

}  // namespace tpo::ir
