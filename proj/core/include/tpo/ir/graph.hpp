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

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tpo/ir/ops.hpp"
#include "tpo/ir/shape.hpp"

namespace tpo::ir {

using TensorId = int;

struct TensorInfo {
  TensorId id = -1;
  TensorShape shape;
  Scope scope = Scope::Device;
  int producer_op = -1;  // -1 for graph inputs
  int producer_out = 0;
  std::optional<int> layout;  // permutation index, assigned by the optimizer
};

struct BlockGraph;

struct Op {
  int id = -1;
  OpType type = OpType::EwAdd;
  OpAttrs attrs = NoAttrs{};
  std::vector<TensorId> inputs;
  std::vector<TensorId> outputs;
  std::shared_ptr<BlockGraph> block;  // set iff type == GraphDef
};

/// A maximal chain of elementwise block operators executed per-thread,
/// with interior tensors held in registers.
struct ThreadGroup {
  std::vector<int> op_ids;          // member block ops, schedule order
  std::array<int, 3> block_dims{128, 1, 1};
  int forloop = 1;
};

/// Computation associated with one thread block. Shared-scope tensors
/// live in `tensors`; kernel-level operands are referenced by InIter
/// attrs through the enclosing GraphDef op's input list.
struct BlockGraph {
  std::array<int64_t, 3> grid{1, 1, 1};
  int64_t forloop = 1;
  std::vector<TensorInfo> tensors;
  std::vector<Op> ops;                 // InIter / compute / Accum / OutSaver
  std::vector<ThreadGroup> thread_groups;

  int64_t grid_product() const { return grid[0] * grid[1] * grid[2]; }
  int grid_axes() const {
    int n = 0;
    for (int a = 0; a < 3; ++a)
      if (grid[a] > 0) n = a + 1;
    return n;
  }
  const TensorInfo &tensor(TensorId t) const { return tensors[size_t(t)]; }
  TensorInfo &tensor(TensorId t) { return tensors[size_t(t)]; }
};

/// A tensor program at the kernel level. A graph whose ops are all
/// pre-defined is a plain computation graph; GraphDef nodes carry block
/// graphs and make it a full hierarchical graph.
struct KernelGraph {
  std::vector<TensorInfo> tensors;
  std::vector<Op> ops;
  std::vector<TensorId> inputs;
  std::vector<TensorId> outputs;

  const TensorInfo &tensor(TensorId t) const { return tensors[size_t(t)]; }
  TensorInfo &tensor(TensorId t) { return tensors[size_t(t)]; }

  bool is_computation_graph() const {
    for (const Op &op : ops)
      if (op.type == OpType::GraphDef) return false;
    return true;
  }

  /// Tensors produced by ops but consumed by none; excludes graph inputs.
  std::vector<TensorId> dangling() const;
};

using ComputationGraph = KernelGraph;

/// Incremental builder used by fixtures, tests, and the generator.
class GraphBuilder {
 public:
  TensorId input(TensorShape shape);
  TensorId op(OpType type, std::vector<TensorId> inputs, OpAttrs attrs = NoAttrs{});
  TensorId graphdef(std::vector<TensorId> inputs, std::shared_ptr<BlockGraph> block,
                    const std::vector<TensorShape> &out_shapes);
  KernelGraph finish(std::vector<TensorId> outputs);
  const KernelGraph &graph() const { return g_; }

 private:
  KernelGraph g_;
};

/// Builder for block graphs; primarily used by fixtures and tests.
class BlockBuilder {
 public:
  BlockBuilder(std::array<int64_t, 3> grid, int64_t forloop,
               std::vector<TensorShape> operand_shapes);
  TensorId initer(int operand, DimMap imap, DimMap fmap);
  TensorId op(OpType type, std::vector<TensorId> inputs, OpAttrs attrs = NoAttrs{});
  /// Returns the assembled kernel-level output shape.
  TensorShape outsaver(TensorId value, DimMap omap);
  std::shared_ptr<BlockGraph> finish();

 private:
  std::shared_ptr<BlockGraph> bg_;
  std::vector<TensorShape> operand_shapes_;
  std::vector<TensorShape> out_shapes_;

 public:
  const std::vector<TensorShape> &out_shapes() const { return out_shapes_; }
};

std::string canonical_key(const KernelGraph &g);

/// Structural equality modulo tensor ids (serialization-based).
bool isomorphic(const KernelGraph &a, const KernelGraph &b);

}  // namespace tpo::ir
