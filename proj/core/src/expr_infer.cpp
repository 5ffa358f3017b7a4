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

#include "tpo/expr/infer.hpp"

namespace tpo::expr {

using ir::OpType;

ExprId infer_expr(ExprPool &pool, OpType op, const ir::OpAttrs &attrs,
                  const std::vector<ExprId> &in,
                  const std::vector<ir::TensorShape> &shapes, int64_t forloop) {
  switch (op) {
    case OpType::InIter:
    case OpType::OutSaver:
    case OpType::Repeat:
    case OpType::Reshape:
      return in.at(0);
    case OpType::Matmul:
      return pool.sum(shapes.at(0).dims.back(), pool.mul(in.at(0), in.at(1)));
    case OpType::ConcatMatmul: {
      ExprId wy = pool.sum(shapes.at(0).dims.back(), pool.mul(in.at(0), in.at(2)));
      ExprId xz = pool.sum(shapes.at(1).dims.back(), pool.mul(in.at(1), in.at(3)));
      return pool.add(wy, xz);
    }
    case OpType::Sum:
      return pool.sum(std::get<ir::SumAttrs>(attrs).group, in.at(0));
    case OpType::EwAdd:
      return pool.add(in.at(0), in.at(1));
    case OpType::EwMul:
      return pool.mul(in.at(0), in.at(1));
    case OpType::EwDiv:
      return pool.div(in.at(0), in.at(1));
    case OpType::EwExp:
      return pool.exp(in.at(0));
    case OpType::Sqr:
      return pool.mul(in.at(0), in.at(0));
    case OpType::Sqrt:
      return pool.sqrt(in.at(0));
    case OpType::SiLU:
      return pool.silu(in.at(0));
    case OpType::Accum: {
      const auto &a = std::get<ir::AccumAttrs>(attrs);
      if (a.fmap.targets.at(0) == ir::kReplica) return pool.sum(forloop, in.at(0));
      return in.at(0);
    }
    case OpType::GraphDef:
      throw Error(ErrCode::Unsupported, "graphdef handled by graph_expr");
  }
  throw Error(ErrCode::Unsupported, "infer_expr");
}

std::vector<ExprId> tensor_exprs(ExprPool &pool, const ir::KernelGraph &g) {
  std::vector<ExprId> exprs(g.tensors.size(), -1);
  for (size_t i = 0; i < g.inputs.size(); ++i)
    exprs[size_t(g.inputs[i])] = pool.var(static_cast<int64_t>(i));

  for (const ir::Op &op : g.ops) {
    if (op.type == OpType::GraphDef) {
      const ir::BlockGraph &bg = *op.block;
      std::vector<ExprId> block_exprs(bg.tensors.size(), -1);
      std::vector<ExprId> outs;
      for (const ir::Op &bop : bg.ops) {
        if (bop.type == OpType::InIter) {
          const auto &a = std::get<ir::InIterAttrs>(bop.attrs);
          block_exprs[size_t(bop.outputs[0])] = exprs[size_t(op.inputs[size_t(a.operand)])];
          continue;
        }
        std::vector<ExprId> in_e;
        std::vector<ir::TensorShape> in_s;
        for (ir::TensorId t : bop.inputs) {
          in_e.push_back(block_exprs[size_t(t)]);
          in_s.push_back(bg.tensor(t).shape);
        }
        ExprId e = infer_expr(pool, bop.type, bop.attrs, in_e, in_s, bg.forloop);
        if (bop.type == OpType::OutSaver)
          outs.push_back(e);
        else
          block_exprs[size_t(bop.outputs[0])] = e;
      }
      for (size_t i = 0; i < op.outputs.size(); ++i)
        exprs[size_t(op.outputs[i])] = outs.at(i);
      continue;
    }
    std::vector<ExprId> in_e;
    std::vector<ir::TensorShape> in_s;
    for (ir::TensorId t : op.inputs) {
      in_e.push_back(exprs[size_t(t)]);
      in_s.push_back(g.tensor(t).shape);
    }
    exprs[size_t(op.outputs[0])] = infer_expr(pool, op.type, op.attrs, in_e, in_s);
  }
  return exprs;
}

std::vector<ExprId> graph_expr(ExprPool &pool, const ir::KernelGraph &g) {
  std::vector<ExprId> exprs = tensor_exprs(pool, g);
  std::vector<ExprId> outs;
  outs.reserve(g.outputs.size());
  for (ir::TensorId t : g.outputs) outs.push_back(exprs[size_t(t)]);
  return outs;
}

}  // namespace tpo::expr
