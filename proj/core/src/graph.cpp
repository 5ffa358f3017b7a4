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

#include "tpo/ir/graph.hpp"

#include <set>
#include <sstream>

#include "tpo/ir/shape_infer.hpp"

namespace tpo::ir {

std::vector<TensorId> KernelGraph::dangling() const {
  std::vector<bool> consumed(tensors.size(), false);
  for (const Op &op : ops)
    for (TensorId t : op.inputs) consumed[size_t(t)] = true;
  std::set<TensorId> ins(inputs.begin(), inputs.end());
  std::vector<TensorId> out;
  for (const TensorInfo &t : tensors)
    if (!consumed[size_t(t.id)] && !ins.count(t.id)) out.push_back(t.id);
  return out;
}

TensorId GraphBuilder::input(TensorShape shape) {
  TensorId id = static_cast<TensorId>(g_.tensors.size());
  g_.tensors.push_back(TensorInfo{id, std::move(shape), Scope::Device, -1, 0, {}});
  g_.inputs.push_back(id);
  return id;
}

TensorId GraphBuilder::op(OpType type, std::vector<TensorId> inputs, OpAttrs attrs) {
  std::vector<TensorShape> in_shapes;
  in_shapes.reserve(inputs.size());
  for (TensorId t : inputs) in_shapes.push_back(g_.tensor(t).shape);
  TensorShape out = infer_output_shape_or_throw(type, attrs, in_shapes, Level::Kernel);
  int op_id = static_cast<int>(g_.ops.size());
  TensorId out_id = static_cast<TensorId>(g_.tensors.size());
  g_.tensors.push_back(TensorInfo{out_id, out, Scope::Device, op_id, 0, {}});
  g_.ops.push_back(Op{op_id, type, std::move(attrs), std::move(inputs), {out_id}, nullptr});
  return out_id;
}

TensorId GraphBuilder::graphdef(std::vector<TensorId> inputs,
                                std::shared_ptr<BlockGraph> block,
                                const std::vector<TensorShape> &out_shapes) {
  int op_id = static_cast<int>(g_.ops.size());
  Op op{op_id, OpType::GraphDef, NoAttrs{}, std::move(inputs), {}, std::move(block)};
  TensorId first = -1;
  for (size_t i = 0; i < out_shapes.size(); ++i) {
    TensorId out_id = static_cast<TensorId>(g_.tensors.size());
    g_.tensors.push_back(
        TensorInfo{out_id, out_shapes[i], Scope::Device, op_id, static_cast<int>(i), {}});
    op.outputs.push_back(out_id);
    if (first < 0) first = out_id;
  }
  g_.ops.push_back(std::move(op));
  return first;
}

KernelGraph GraphBuilder::finish(std::vector<TensorId> outputs) {
  g_.outputs = std::move(outputs);
  return g_;
}

BlockBuilder::BlockBuilder(std::array<int64_t, 3> grid, int64_t forloop,
                           std::vector<TensorShape> operand_shapes)
    : bg_(std::make_shared<BlockGraph>()), operand_shapes_(std::move(operand_shapes)) {
  bg_->grid = grid;
  bg_->forloop = forloop;
}

TensorId BlockBuilder::initer(int operand, DimMap imap, DimMap fmap) {
  const TensorShape &dev = operand_shapes_.at(size_t(operand));
  std::vector<int64_t> grid_ext(bg_->grid.begin(), bg_->grid.end());
  grid_ext.resize(size_t(imap.axes()), 1);
  TensorShape tile = partition_or_throw(dev, imap, grid_ext);
  tile = partition_or_throw(tile, fmap, {bg_->forloop});
  int op_id = static_cast<int>(bg_->ops.size());
  TensorId out_id = static_cast<TensorId>(bg_->tensors.size());
  bg_->tensors.push_back(TensorInfo{out_id, tile, Scope::Shared, op_id, 0, {}});
  bg_->ops.push_back(Op{op_id, OpType::InIter,
                        InIterAttrs{operand, std::move(imap), std::move(fmap)},
                        {}, {out_id}, nullptr});
  return out_id;
}

TensorId BlockBuilder::op(OpType type, std::vector<TensorId> inputs, OpAttrs attrs) {
  std::vector<TensorShape> in_shapes;
  for (TensorId t : inputs) in_shapes.push_back(bg_->tensor(t).shape);
  TensorShape out = infer_output_shape_or_throw(type, attrs, in_shapes, Level::Block);
  if (type == OpType::Accum) {
    const auto &a = std::get<AccumAttrs>(attrs);
    if (a.fmap.targets[0] != kReplica)
      out.dims[size_t(a.fmap.targets[0])] *= bg_->forloop;
  }
  int op_id = static_cast<int>(bg_->ops.size());
  TensorId out_id = static_cast<TensorId>(bg_->tensors.size());
  bg_->tensors.push_back(TensorInfo{out_id, out, Scope::Shared, op_id, 0, {}});
  bg_->ops.push_back(Op{op_id, type, std::move(attrs), std::move(inputs), {out_id}, nullptr});
  return out_id;
}

TensorShape BlockBuilder::outsaver(TensorId value, DimMap omap) {
  std::vector<int64_t> grid_ext(bg_->grid.begin(), bg_->grid.end());
  grid_ext.resize(size_t(omap.axes()), 1);
  TensorShape out = assemble_or_throw(bg_->tensor(value).shape, omap, grid_ext);
  int op_id = static_cast<int>(bg_->ops.size());
  bg_->ops.push_back(Op{op_id, OpType::OutSaver, OutSaverAttrs{std::move(omap)},
                        {value}, {}, nullptr});
  out_shapes_.push_back(out);
  return out;
}

std::shared_ptr<BlockGraph> BlockBuilder::finish() { return bg_; }

namespace {

void key_block(std::ostringstream &os, const BlockGraph &bg) {
  os << "B(" << bg.grid[0] << ',' << bg.grid[1] << ',' << bg.grid[2] << ';'
     << bg.forloop << ';';
  for (const Op &op : bg.ops) {
    os << op_name(op.type) << attr_key(op.attrs) << '<';
    for (TensorId t : op.inputs) os << t << ',';
    os << '>';
  }
  os << ')';
}

}  // namespace

std::string canonical_key(const KernelGraph &g) {
  std::ostringstream os;
  os << "K(";
  for (TensorId t : g.inputs) os << to_string(g.tensor(t).shape) << ';';
  for (const Op &op : g.ops) {
    os << op_name(op.type) << attr_key(op.attrs) << '<';
    for (TensorId t : op.inputs) os << t << ',';
    os << '>';
    if (op.block) key_block(os, *op.block);
  }
  os << "|out:";
  for (TensorId t : g.outputs) os << t << ',';
  os << ')';
  return os.str();
}

bool isomorphic(const KernelGraph &a, const KernelGraph &b) {
  return canonical_key(a) == canonical_key(b);
}

}  // namespace tpo::ir
