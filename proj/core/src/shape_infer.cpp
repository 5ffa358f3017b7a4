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

#include "tpo/ir/shape_infer.hpp"

#include <algorithm>

namespace tpo::ir {

namespace {

ShapeResult ok(TensorShape s) { return ShapeResult{std::move(s)}; }
ShapeResult fail(ErrCode c) { return ShapeResult{std::nullopt, c}; }

ShapeResult matmul_shape(const TensorShape &a, const TensorShape &b) {
  if (a.rank() < 2 || b.rank() < 2 || a.rank() != b.rank())
    return fail(ErrCode::ShapeMismatch);
  int r = a.rank();
  // Batched leading dims must match exactly.
  for (int i = 0; i < r - 2; ++i)
    if (a.dims[size_t(i)] != b.dims[size_t(i)]) return fail(ErrCode::ShapeMismatch);
  if (a.dims[size_t(r - 1)] != b.dims[size_t(r - 2)])
    return fail(ErrCode::ShapeMismatch);
  TensorShape out = a;
  out.dims[size_t(r - 1)] = b.dims[size_t(r - 1)];
  return ok(out);
}

}  // namespace

std::optional<TensorShape> broadcast_shapes(const TensorShape &a, const TensorShape &b) {
  int r = std::max(a.rank(), b.rank());
  TensorShape out;
  out.dims.assign(size_t(r), 1);
  for (int i = 0; i < r; ++i) {
    int64_t da = i < r - a.rank() ? 1 : a.dims[size_t(i - (r - a.rank()))];
    int64_t db = i < r - b.rank() ? 1 : b.dims[size_t(i - (r - b.rank()))];
    if (da != db && da != 1 && db != 1) return std::nullopt;
    out.dims[size_t(i)] = std::max(da, db);
  }
  return out;
}

ShapeResult infer_output_shape(OpType op, const OpAttrs &attrs,
                               const std::vector<TensorShape> &in, Level level) {
  if (!op_allowed_at(op, level)) return fail(ErrCode::Unsupported);
  for (const TensorShape &s : in)
    if (!s.valid()) return fail(ErrCode::ShapeMismatch);

  switch (op) {
    case OpType::Matmul:
      if (in.size() != 2) return fail(ErrCode::ShapeMismatch);
      return matmul_shape(in[0], in[1]);

    case OpType::ConcatMatmul: {
      // f(W, X, Y, Z) = (W ++ X) x (Y ++ Z), elementwise W x Y + X x Z.
      if (in.size() != 4) return fail(ErrCode::ShapeMismatch);
      ShapeResult wy = matmul_shape(in[0], in[2]);
      ShapeResult xz = matmul_shape(in[1], in[3]);
      if (!wy || !xz) return fail(ErrCode::ShapeMismatch);
      if (*wy.shape != *xz.shape) return fail(ErrCode::ShapeMismatch);
      return wy;
    }

    case OpType::Sum: {
      if (in.size() != 1) return fail(ErrCode::ShapeMismatch);
      const auto &a = std::get<SumAttrs>(attrs);
      if (a.dim < 0 || a.dim >= in[0].rank()) return fail(ErrCode::ShapeMismatch);
      int64_t d = in[0].dims[size_t(a.dim)];
      if (a.group < 1 || d % a.group != 0) return fail(ErrCode::ShapeMismatch);
      TensorShape out = in[0];
      out.dims[size_t(a.dim)] = d / a.group;
      return ok(out);
    }

    case OpType::EwAdd:
    case OpType::EwMul:
    case OpType::EwDiv: {
      if (in.size() != 2) return fail(ErrCode::ShapeMismatch);
      auto s = broadcast_shapes(in[0], in[1]);
      if (!s) return fail(ErrCode::ShapeMismatch);
      return ok(*s);
    }

    case OpType::EwExp:
    case OpType::Sqr:
    case OpType::Sqrt:
    case OpType::SiLU:
      if (in.size() != 1) return fail(ErrCode::ShapeMismatch);
      return ok(in[0]);

    case OpType::Repeat: {
      if (in.size() != 1) return fail(ErrCode::ShapeMismatch);
      const auto &a = std::get<RepeatAttrs>(attrs);
      if (!a.target.valid()) return fail(ErrCode::ShapeMismatch);
      auto s = broadcast_shapes(in[0], a.target);
      if (!s || *s != a.target) return fail(ErrCode::ShapeMismatch);
      return ok(a.target);
    }

    case OpType::Reshape: {
      if (in.size() != 1) return fail(ErrCode::ShapeMismatch);
      const auto &a = std::get<ReshapeAttrs>(attrs);
      if (!a.target.valid() || a.target.elem_count() != in[0].elem_count())
        return fail(ErrCode::ShapeMismatch);
      return ok(a.target);
    }

    case OpType::InIter:
    case OpType::OutSaver:
      // Shape handled by the block-graph machinery (partition/assemble).
      if (in.size() != 1 && op == OpType::OutSaver) return fail(ErrCode::ShapeMismatch);
      return in.empty() ? fail(ErrCode::ShapeMismatch) : ok(in[0]);

    case OpType::Accum: {
      if (in.size() != 1) return fail(ErrCode::ShapeMismatch);
      const auto &a = std::get<AccumAttrs>(attrs);
      if (a.fmap.axes() != 1) return fail(ErrCode::ShapeMismatch);
      int t = a.fmap.targets[0];
      if (t == kReplica) return ok(in[0]);
      if (t < 0 || t >= in[0].rank()) return fail(ErrCode::ShapeMismatch);
      return ok(in[0]);  // concat extent applied by the caller (x forloop)
    }

    case OpType::GraphDef:
      return fail(ErrCode::Unsupported);
  }
  return fail(ErrCode::Unsupported);
}

TensorShape infer_output_shape_or_throw(OpType op, const OpAttrs &attrs,
                                        const std::vector<TensorShape> &in,
                                        Level level) {
  ShapeResult r = infer_output_shape(op, attrs, in, level);
  if (!r) throw Error(r.err, std::string("infer_output_shape(") + op_name(op) + ")");
  return *r.shape;
}

ShapeResult partition_shape(const TensorShape &shape, const DimMap &map,
                            const std::vector<int64_t> &extents) {
  if (map.axes() != static_cast<int>(extents.size()) || !map.targets_distinct())
    return fail(ErrCode::ShapeMismatch);
  TensorShape out = shape;
  for (int a = 0; a < map.axes(); ++a) {
    int t = map.targets[size_t(a)];
    if (t == kReplica) continue;
    if (t < 0 || t >= shape.rank()) return fail(ErrCode::ShapeMismatch);
    if (extents[size_t(a)] < 1 || out.dims[size_t(t)] % extents[size_t(a)] != 0)
      return fail(ErrCode::NotDivisible);
    out.dims[size_t(t)] /= extents[size_t(a)];
  }
  return ok(out);
}

ShapeResult assemble_output_shape(const TensorShape &per_block, const DimMap &omap,
                                  const std::vector<int64_t> &grid) {
  if (omap.axes() != static_cast<int>(grid.size()) || !omap.targets_distinct())
    return fail(ErrCode::ShapeMismatch);
  TensorShape out = per_block;
  for (int a = 0; a < omap.axes(); ++a) {
    int t = omap.targets[size_t(a)];
    if (t == kReplica) return fail(ErrCode::ReplicaInOmap);
    if (t < 0 || t >= per_block.rank()) return fail(ErrCode::ShapeMismatch);
    out.dims[size_t(t)] *= grid[size_t(a)];
  }
  return ok(out);
}

TensorShape partition_or_throw(const TensorShape &shape, const DimMap &map,
                               const std::vector<int64_t> &extents) {
  ShapeResult r = partition_shape(shape, map, extents);
  if (!r) throw Error(r.err, "partition_shape " + to_string(shape));
  return *r.shape;
}

TensorShape assemble_or_throw(const TensorShape &per_block, const DimMap &omap,
                              const std::vector<int64_t> &grid) {
  ShapeResult r = assemble_output_shape(per_block, omap, grid);
  if (!r) throw Error(r.err, "assemble_output_shape " + to_string(per_block));
  return *r.shape;
}

int64_t op_madds(OpType op, const OpAttrs &attrs,
                 const std::vector<TensorShape> &in, const TensorShape &out) {
  switch (op) {
    case OpType::Matmul:
      return out.elem_count() * in[0].dims.back();
    case OpType::ConcatMatmul:
      return out.elem_count() * (in[0].dims.back() + in[1].dims.back());
    case OpType::Sum:
      return in[0].elem_count();
    case OpType::EwAdd:
    case OpType::EwMul:
    case OpType::EwDiv:
    case OpType::EwExp:
    case OpType::Sqr:
    case OpType::Sqrt:
    case OpType::SiLU:
      return out.elem_count();
    case OpType::Accum:
      return in[0].elem_count();
    default:
      return 0;
  }
}

}  // namespace tpo::ir
