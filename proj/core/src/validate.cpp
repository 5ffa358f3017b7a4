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

#include "tpo/ir/validate.hpp"

#include <functional>
#include <sstream>

#include "tpo/ir/shape_infer.hpp"

namespace tpo::ir {

namespace {

void check_block(const BlockGraph &bg, const std::vector<TensorShape> &operand_shapes,
                 const std::vector<TensorShape> &output_shapes,
                 const MemLimits &limits, ValidityReport &report) {
  std::vector<int64_t> grid_ext(bg.grid.begin(), bg.grid.end());

  // (1) operator specs: recompute every op's output shape.
  int saver_idx = 0;
  for (const Op &op : bg.ops) {
    if (op.type == OpType::InIter) {
      const auto &a = std::get<InIterAttrs>(op.attrs);
      if (a.operand < 0 || a.operand >= static_cast<int>(operand_shapes.size())) {
        report.violations.push_back({ViolationKind::OperatorSpec, "initer operand range"});
        continue;
      }
      std::vector<int64_t> ext(grid_ext.begin(), grid_ext.begin() + a.imap.axes());
      ShapeResult tile = partition_shape(operand_shapes[size_t(a.operand)], a.imap, ext);
      if (tile) tile = partition_shape(*tile.shape, a.fmap, {bg.forloop});
      if (!tile || *tile.shape != bg.tensor(op.outputs[0]).shape) {
        report.violations.push_back({ViolationKind::OperatorSpec,
                                     "initer tile shape at op " + std::to_string(op.id)});
      }
      continue;
    }
    if (op.type == OpType::OutSaver) {
      const auto &a = std::get<OutSaverAttrs>(op.attrs);
      std::vector<int64_t> ext(grid_ext.begin(), grid_ext.begin() + a.omap.axes());
      ShapeResult out = assemble_output_shape(bg.tensor(op.inputs[0]).shape, a.omap, ext);
      if (!out || saver_idx >= static_cast<int>(output_shapes.size()) ||
          *out.shape != output_shapes[size_t(saver_idx)]) {
        report.violations.push_back({ViolationKind::OperatorSpec,
                                     "outsaver assembly at op " + std::to_string(op.id)});
      }
      ++saver_idx;
      continue;
    }
    std::vector<TensorShape> in_shapes;
    for (TensorId t : op.inputs) in_shapes.push_back(bg.tensor(t).shape);
    ShapeResult r = infer_output_shape(op.type, op.attrs, in_shapes, Level::Block);
    if (r && op.type == OpType::Accum) {
      const auto &a = std::get<AccumAttrs>(op.attrs);
      if (a.fmap.targets[0] != kReplica)
        r.shape->dims[size_t(a.fmap.targets[0])] *= bg.forloop;
    }
    if (!r || *r.shape != bg.tensor(op.outputs[0]).shape) {
      report.violations.push_back({ViolationKind::OperatorSpec,
                                   std::string("block op spec: ") + op_name(op.type)});
    }
  }

  // (2) shared-memory capacity.
  int64_t smem = block_shared_bytes(bg, limits.elem_size);
  if (smem > limits.smem_bytes) {
    std::ostringstream os;
    os << "shared footprint " << smem << " > " << limits.smem_bytes;
    report.violations.push_back({ViolationKind::MemoryCapacity, os.str()});
  }
  for (const ThreadGroup &tg : bg.thread_groups) {
    // One register value per member op per thread instance (upper bound on
    // interior edges).
    if (static_cast<int64_t>(tg.op_ids.size()) > limits.reg_elems)
      report.violations.push_back({ViolationKind::MemoryCapacity, "register footprint"});
  }

  // (3) every InIter-to-OutSaver path passes exactly one Accum.
  std::vector<std::vector<int>> consumers(bg.tensors.size());
  for (const Op &op : bg.ops)
    for (TensorId t : op.inputs) consumers[size_t(t)].push_back(op.id);

  std::function<void(int, int)> walk = [&](int op_id, int accums) {
    const Op &op = bg.ops[size_t(op_id)];
    int acc = accums + (op.type == OpType::Accum ? 1 : 0);
    if (op.type == OpType::OutSaver) {
      if (acc != 1)
        report.violations.push_back(
            {ViolationKind::PathRule,
             "path to outsaver " + std::to_string(op.id) + " crosses " +
                 std::to_string(acc) + " accums"});
      return;
    }
    for (TensorId out : op.outputs)
      for (int c : consumers[size_t(out)]) walk(c, acc);
  };
  for (const Op &op : bg.ops)
    if (op.type == OpType::InIter) walk(op.id, 0);
}

}  // namespace

int64_t block_shared_bytes(const BlockGraph &bg, int64_t elem_size) {
  int64_t elems = 0;
  std::vector<bool> in_register(bg.tensors.size(), false);
  for (const ThreadGroup &tg : bg.thread_groups) {
    // Interior edges of a fused group live in registers, not shared memory.
    std::vector<bool> member(bg.ops.size(), false);
    for (int id : tg.op_ids) member[size_t(id)] = true;
    for (int id : tg.op_ids) {
      const Op &op = bg.ops[size_t(id)];
      for (TensorId out : op.outputs) {
        bool all_inside = true;
        bool any_consumer = false;
        for (const Op &other : bg.ops)
          for (TensorId t : other.inputs)
            if (t == out) {
              any_consumer = true;
              if (!member[size_t(other.id)]) all_inside = false;
            }
        if (any_consumer && all_inside) in_register[size_t(out)] = true;
      }
    }
  }
  for (const TensorInfo &t : bg.tensors)
    if (!in_register[size_t(t.id)]) elems += t.shape.elem_count();
  return elems * elem_size;
}

std::map<Scope, int64_t> memory_usage(const KernelGraph &g, const MemLimits &limits) {
  std::map<Scope, int64_t> usage{{Scope::Device, 0}, {Scope::Shared, 0},
                                 {Scope::Register, 0}};
  for (const TensorInfo &t : g.tensors)
    usage[Scope::Device] += t.shape.elem_count() * limits.elem_size;
  for (const Op &op : g.ops) {
    if (!op.block) continue;
    const BlockGraph &bg = *op.block;
    int64_t shared = block_shared_bytes(bg, limits.elem_size);
    int64_t all_tensors = 0;
    for (const TensorInfo &t : bg.tensors)
      all_tensors += t.shape.elem_count() * limits.elem_size;
    usage[Scope::Shared] += shared;
    // Whatever fusion moved out of shared memory now lives in registers.
    usage[Scope::Register] += all_tensors - shared;
  }
  return usage;
}

ValidityReport validate(const KernelGraph &g, const MemLimits &limits) {
  ValidityReport report;

  // Kernel-level operator specs and scope placement.
  for (const TensorInfo &t : g.tensors) {
    if (t.scope != Scope::Device)
      report.violations.push_back({ViolationKind::OperatorSpec,
                                   "kernel tensor " + std::to_string(t.id) + " not device"});
  }
  for (const Op &op : g.ops) {
    if (op.type == OpType::GraphDef) {
      if (!op.block) {
        report.violations.push_back({ViolationKind::OperatorSpec, "graphdef without block"});
        continue;
      }
      std::vector<TensorShape> operand_shapes;
      for (TensorId t : op.inputs) operand_shapes.push_back(g.tensor(t).shape);
      std::vector<TensorShape> output_shapes;
      for (TensorId t : op.outputs) output_shapes.push_back(g.tensor(t).shape);
      for (const TensorInfo &bt : op.block->tensors)
        if (bt.scope != Scope::Shared)
          report.violations.push_back({ViolationKind::OperatorSpec,
                                       "block tensor " + std::to_string(bt.id) + " not shared"});
      check_block(*op.block, operand_shapes, output_shapes, limits, report);
      continue;
    }
    std::vector<TensorShape> in_shapes;
    for (TensorId t : op.inputs) in_shapes.push_back(g.tensor(t).shape);
    ShapeResult r = infer_output_shape(op.type, op.attrs, in_shapes, Level::Kernel);
    if (!r || *r.shape != g.tensor(op.outputs[0]).shape)
      report.violations.push_back({ViolationKind::OperatorSpec,
                                   std::string("kernel op spec: ") + op_name(op.type)});
  }
  return report;
}

LaxReport lax_check(const KernelGraph &g) {
  LaxReport rep;
  for (const Op &op : g.ops) {
    if (op.type == OpType::GraphDef) {
      rep.lax = false;
      rep.offending = "graphdef op " + std::to_string(op.id);
      return rep;
    }
  }
  // At most one exponentiation on any input-to-output path.
  std::vector<std::vector<int>> consumers(g.tensors.size());
  for (const Op &op : g.ops)
    for (TensorId t : op.inputs) consumers[size_t(t)].push_back(op.id);

  // Longest-exp-count propagation over the DAG (equivalent to a DFS path
  // scan since counts are monotone along edges).
  std::vector<int> max_exp(g.tensors.size(), 0);
  for (const Op &op : g.ops) {
    int in_max = 0;
    for (TensorId t : op.inputs) in_max = std::max(in_max, max_exp[size_t(t)]);
    int here = in_max + (op.type == OpType::EwExp ? 1 : 0);
    if (here > 1) {
      rep.lax = false;
      rep.offending = std::string(op_name(op.type)) + " op " + std::to_string(op.id);
      return rep;
    }
    for (TensorId t : op.outputs) max_exp[size_t(t)] = here;
  }
  return rep;
}

}  // namespace tpo::ir
