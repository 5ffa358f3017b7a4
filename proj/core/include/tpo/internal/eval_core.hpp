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
#include <vector>

#include "tpo/ir/graph.hpp"
#include "tpo/ir/shape_infer.hpp"

namespace tpo::internal {

template <typename V>
struct Tensor {
  ir::TensorShape shape;
  std::vector<V> data;

  Tensor() = default;
  explicit Tensor(ir::TensorShape s, V fill = V{})
      : shape(std::move(s)), data(size_t(shape.elem_count()), fill) {}
};

inline std::vector<int64_t> strides_of(const ir::TensorShape &s) {
  std::vector<int64_t> st(size_t(s.rank()), 1);
  for (int i = s.rank() - 2; i >= 0; --i)
    st[size_t(i)] = st[size_t(i + 1)] * s.dims[size_t(i + 1)];
  return st;
}

/// Iterate all index tuples of `shape` in row-major order.
template <typename F>
void for_each_index(const ir::TensorShape &shape, F &&fn) {
  std::vector<int64_t> idx(size_t(shape.rank()), 0);
  int64_t total = shape.elem_count();
  for (int64_t c = 0; c < total; ++c) {
    fn(idx);
    for (int i = shape.rank() - 1; i >= 0; --i) {
      if (++idx[size_t(i)] < shape.dims[size_t(i)]) break;
      idx[size_t(i)] = 0;
    }
  }
}

/// Flat offset of `idx` in a tensor broadcast to a larger shape
/// (right-aligned; size-1 dims repeat).
inline int64_t bcast_offset(const ir::TensorShape &shape,
                            const std::vector<int64_t> &strides,
                            const std::vector<int64_t> &idx, int out_rank) {
  int64_t off = 0;
  int shift = out_rank - shape.rank();
  for (int i = 0; i < shape.rank(); ++i) {
    int64_t v = idx[size_t(i + shift)];
    if (shape.dims[size_t(i)] == 1) v = 0;
    off += v * strides[size_t(i)];
  }
  return off;
}

// Semantics S supplies: using Value; zero(); add/sub/mul/div(Value,Value);
// exp(Value); sqrt(Value); silu(Value).
template <typename S>
class Evaluator {
 public:
  using V = typename S::Value;

  Evaluator(S &sem) : sem_(sem) {}

  std::vector<Tensor<V>> run(const ir::KernelGraph &g,
                             const std::vector<Tensor<V>> &inputs) {
    std::vector<Tensor<V>> vals(g.tensors.size());
    if (inputs.size() != g.inputs.size())
      throw Error(ErrCode::ShapeMismatch, "input count");
    for (size_t i = 0; i < inputs.size(); ++i) {
      if (inputs[i].shape != g.tensor(g.inputs[i]).shape)
        throw Error(ErrCode::ShapeMismatch, "input tensor shape");
      vals[size_t(g.inputs[i])] = inputs[i];
    }
    for (const ir::Op &op : g.ops) {
      if (op.type == ir::OpType::GraphDef) {
        eval_graphdef(g, op, vals);
        continue;
      }
      std::vector<const Tensor<V> *> ins;
      for (ir::TensorId t : op.inputs) ins.push_back(&vals[size_t(t)]);
      vals[size_t(op.outputs[0])] =
          eval_predefined(op.type, op.attrs, ins, g.tensor(op.outputs[0]).shape);
    }
    std::vector<Tensor<V>> outs;
    for (ir::TensorId t : g.outputs) outs.push_back(vals[size_t(t)]);
    return outs;
  }

 private:
  S &sem_;

  Tensor<V> eval_predefined(ir::OpType type, const ir::OpAttrs &attrs,
                            const std::vector<const Tensor<V> *> &in,
                            const ir::TensorShape &out_shape) {
    using ir::OpType;
    switch (type) {
      case OpType::Matmul:
        return matmul(*in[0], *in[1]);
      case OpType::ConcatMatmul: {
        Tensor<V> wy = matmul(*in[0], *in[2]);
        Tensor<V> xz = matmul(*in[1], *in[3]);
        for (size_t i = 0; i < wy.data.size(); ++i)
          wy.data[i] = sem_.add(wy.data[i], xz.data[i]);
        return wy;
      }
      case OpType::Sum:
        return grouped_sum(*in[0], std::get<ir::SumAttrs>(attrs));
      case OpType::EwAdd:
        return binary(*in[0], *in[1], [this](V a, V b) { return sem_.add(a, b); });
      case OpType::EwMul:
        return binary(*in[0], *in[1], [this](V a, V b) { return sem_.mul(a, b); });
      case OpType::EwDiv:
        return binary(*in[0], *in[1], [this](V a, V b) { return sem_.div(a, b); });
      case OpType::EwExp:
        return unary(*in[0], [this](V a) { return sem_.exp(a); });
      case OpType::Sqr:
        return unary(*in[0], [this](V a) { return sem_.mul(a, a); });
      case OpType::Sqrt:
        return unary(*in[0], [this](V a) { return sem_.sqrt(a); });
      case OpType::SiLU:
        return unary(*in[0], [this](V a) { return sem_.silu(a); });
      case OpType::Repeat: {
        Tensor<V> out(out_shape);
        auto st = strides_of(in[0]->shape);
        int64_t c = 0;
        for_each_index(out_shape, [&](const std::vector<int64_t> &idx) {
          out.data[size_t(c++)] =
              in[0]->data[size_t(bcast_offset(in[0]->shape, st, idx, out_shape.rank()))];
        });
        return out;
      }
      case OpType::Reshape: {
        Tensor<V> out = *in[0];
        out.shape = out_shape;
        return out;
      }
      default:
        throw Error(ErrCode::Unsupported,
                    std::string("eval of ") + ir::op_name(type));
    }
  }

  Tensor<V> unary(const Tensor<V> &a, auto &&fn) {
    Tensor<V> out(a.shape);
    for (size_t i = 0; i < a.data.size(); ++i) out.data[i] = fn(a.data[i]);
    return out;
  }

  Tensor<V> binary(const Tensor<V> &a, const Tensor<V> &b, auto &&fn) {
    auto shape = ir::broadcast_shapes(a.shape, b.shape);
    if (!shape) throw Error(ErrCode::ShapeMismatch, "broadcast");
    Tensor<V> out(*shape);
    auto sa = strides_of(a.shape);
    auto sb = strides_of(b.shape);
    int64_t c = 0;
    for_each_index(*shape, [&](const std::vector<int64_t> &idx) {
      V va = a.data[size_t(bcast_offset(a.shape, sa, idx, shape->rank()))];
      V vb = b.data[size_t(bcast_offset(b.shape, sb, idx, shape->rank()))];
      out.data[size_t(c++)] = fn(va, vb);
    });
    return out;
  }

  Tensor<V> matmul(const Tensor<V> &a, const Tensor<V> &b) {
    int r = a.shape.rank();
    int64_t m = a.shape.dims[size_t(r - 2)];
    int64_t k = a.shape.dims[size_t(r - 1)];
    int64_t n = b.shape.dims[size_t(r - 1)];
    int64_t batch = a.shape.elem_count() / (m * k);
    ir::TensorShape out_shape = a.shape;
    out_shape.dims[size_t(r - 1)] = n;
    Tensor<V> out(out_shape, sem_.zero());
    for (int64_t bt = 0; bt < batch; ++bt) {
      const V *pa = a.data.data() + bt * m * k;
      const V *pb = b.data.data() + bt * k * n;
      V *po = out.data.data() + bt * m * n;
      for (int64_t i = 0; i < m; ++i)
        for (int64_t j = 0; j < n; ++j) {
          V acc = sem_.zero();
          for (int64_t kk = 0; kk < k; ++kk)
            acc = sem_.add(acc, sem_.mul(pa[i * k + kk], pb[kk * n + j]));
          po[i * n + j] = acc;
        }
    }
    return out;
  }

  Tensor<V> grouped_sum(const Tensor<V> &a, const ir::SumAttrs &attrs) {
    ir::TensorShape out_shape = a.shape;
    out_shape.dims[size_t(attrs.dim)] /= attrs.group;
    Tensor<V> out(out_shape, sem_.zero());
    auto sa = strides_of(a.shape);
    auto so = strides_of(out_shape);
    for_each_index(a.shape, [&](const std::vector<int64_t> &idx) {
      int64_t in_off = 0, out_off = 0;
      for (int i = 0; i < a.shape.rank(); ++i) {
        int64_t v = idx[size_t(i)];
        in_off += v * sa[size_t(i)];
        if (i == attrs.dim) v /= attrs.group;  // consecutive groups collapse
        out_off += v * so[size_t(i)];
      }
      out.data[size_t(out_off)] = sem_.add(out.data[size_t(out_off)], a.data[size_t(in_off)]);
    });
    return out;
  }

  // ---- graph-defined kernel operators ---------------------------------

  void eval_graphdef(const ir::KernelGraph &g, const ir::Op &op,
                     std::vector<Tensor<V>> &vals) {
    const ir::BlockGraph &bg = *op.block;
    std::vector<Tensor<V>> outs;
    for (ir::TensorId t : op.outputs)
      outs.emplace_back(g.tensor(t).shape, sem_.zero());

    // Grid-major block order, then loop iterations within each block.
    for (int64_t bx = 0; bx < bg.grid[0]; ++bx)
      for (int64_t by = 0; by < bg.grid[1]; ++by)
        for (int64_t bz = 0; bz < bg.grid[2]; ++bz)
          eval_block(g, op, bg, {bx, by, bz}, vals, outs);

    for (size_t i = 0; i < op.outputs.size(); ++i)
      vals[size_t(op.outputs[i])] = std::move(outs[i]);
  }

  /// Slice of a device tensor for one block and iteration, per imap/fmap.
  Tensor<V> load_tile(const Tensor<V> &dev, const ir::InIterAttrs &attrs,
                      const std::array<int64_t, 3> &bc, const ir::BlockGraph &bg,
                      int64_t iter) {
    ir::TensorShape tile = dev.shape;
    std::vector<int64_t> offset(size_t(dev.shape.rank()), 0);
    for (int a = 0; a < attrs.imap.axes(); ++a) {
      int t = attrs.imap.targets[size_t(a)];
      if (t == ir::kReplica) continue;
      tile.dims[size_t(t)] /= bg.grid[size_t(a)];
      offset[size_t(t)] += bc[size_t(a)] * tile.dims[size_t(t)];
    }
    int ft = attrs.fmap.targets.at(0);
    if (ft != ir::kReplica) {
      tile.dims[size_t(ft)] /= bg.forloop;
      offset[size_t(ft)] += iter * tile.dims[size_t(ft)];
    }
    Tensor<V> out(tile);
    auto sd = strides_of(dev.shape);
    int64_t c = 0;
    for_each_index(tile, [&](const std::vector<int64_t> &idx) {
      int64_t off = 0;
      for (int i = 0; i < tile.rank(); ++i)
        off += (idx[size_t(i)] + offset[size_t(i)]) * sd[size_t(i)];
      out.data[size_t(c++)] = dev.data[size_t(off)];
    });
    return out;
  }

  void eval_block(const ir::KernelGraph &g, const ir::Op &op, const ir::BlockGraph &bg,
                  const std::array<int64_t, 3> &bc, std::vector<Tensor<V>> &vals,
                  std::vector<Tensor<V>> &outs) {
    std::vector<Tensor<V>> bvals(bg.tensors.size());

    // Tensors at or past an accumulator belong to the post-loop phase.
    std::vector<bool> post(bg.tensors.size(), false);
    for (const ir::Op &bop : bg.ops) {
      if (bop.type == ir::OpType::Accum) {
        post[size_t(bop.outputs[0])] = true;
        continue;
      }
      if (bop.type == ir::OpType::InIter || bop.type == ir::OpType::OutSaver) continue;
      bool is_post = false;
      for (ir::TensorId t : bop.inputs)
        if (post[size_t(t)]) is_post = true;
      if (is_post) post[size_t(bop.outputs[0])] = true;
    }
    auto op_is_post = [&](const ir::Op &bop) {
      for (ir::TensorId t : bop.inputs)
        if (post[size_t(t)]) return true;
      return false;
    };

    // Accumulator state, indexed by block op id.
    std::vector<Tensor<V>> accum(bg.ops.size());
    for (const ir::Op &bop : bg.ops) {
      if (bop.type != ir::OpType::Accum) continue;
      accum[size_t(bop.id)] = Tensor<V>(bg.tensor(bop.outputs[0]).shape, sem_.zero());
    }

    for (int64_t iter = 0; iter < bg.forloop; ++iter) {
      for (const ir::Op &bop : bg.ops) {
        if (bop.type == ir::OpType::InIter) {
          const auto &a = std::get<ir::InIterAttrs>(bop.attrs);
          bvals[size_t(bop.outputs[0])] =
              load_tile(vals[size_t(op.inputs[size_t(a.operand)])], a, bc, bg, iter);
          continue;
        }
        if (bop.type == ir::OpType::Accum) {
          const auto &a = std::get<ir::AccumAttrs>(bop.attrs);
          const Tensor<V> &val = bvals[size_t(bop.inputs[0])];
          Tensor<V> &acc = accum[size_t(bop.id)];
          int t = a.fmap.targets.at(0);
          if (t == ir::kReplica) {
            for (size_t i = 0; i < val.data.size(); ++i)
              acc.data[i] = sem_.add(acc.data[i], val.data[i]);
          } else {
            // Concatenate along dim t: iteration i fills slice i.
            auto sacc = strides_of(acc.shape);
            int64_t c = 0;
            for_each_index(val.shape, [&](const std::vector<int64_t> &idx) {
              int64_t off = 0;
              for (int d = 0; d < val.shape.rank(); ++d) {
                int64_t v = idx[size_t(d)];
                if (d == t) v += iter * val.shape.dims[size_t(d)];
                off += v * sacc[size_t(d)];
              }
              acc.data[size_t(off)] = val.data[size_t(c++)];
            });
          }
          continue;
        }
        if (bop.type == ir::OpType::OutSaver || op_is_post(bop)) continue;
        std::vector<const Tensor<V> *> ins;
        for (ir::TensorId t : bop.inputs) ins.push_back(&bvals[size_t(t)]);
        bvals[size_t(bop.outputs[0])] =
            eval_predefined(bop.type, bop.attrs, ins, bg.tensor(bop.outputs[0]).shape);
      }
    }

    // Publish accumulators, then run post-loop ops and out-savers.
    for (const ir::Op &bop : bg.ops)
      if (bop.type == ir::OpType::Accum)
        bvals[size_t(bop.outputs[0])] = std::move(accum[size_t(bop.id)]);

    int saver_idx = 0;
    for (const ir::Op &bop : bg.ops) {
      if (bop.type == ir::OpType::OutSaver) {
        const auto &a = std::get<ir::OutSaverAttrs>(bop.attrs);
        const Tensor<V> &val = bvals[size_t(bop.inputs[0])];
        Tensor<V> &dev = outs[size_t(saver_idx++)];
        std::vector<int64_t> offset(size_t(val.shape.rank()), 0);
        for (int ax = 0; ax < a.omap.axes(); ++ax) {
          int t = a.omap.targets[size_t(ax)];
          offset[size_t(t)] += bc[size_t(ax)] * val.shape.dims[size_t(t)];
        }
        auto sd = strides_of(dev.shape);
        int64_t c = 0;
        for_each_index(val.shape, [&](const std::vector<int64_t> &idx) {
          int64_t off = 0;
          for (int i = 0; i < val.shape.rank(); ++i)
            off += (idx[size_t(i)] + offset[size_t(i)]) * sd[size_t(i)];
          dev.data[size_t(off)] = val.data[size_t(c++)];
        });
        continue;
      }
      if (bop.type == ir::OpType::InIter || bop.type == ir::OpType::Accum) continue;
      if (!op_is_post(bop)) continue;
      std::vector<const Tensor<V> *> ins;
      for (ir::TensorId t : bop.inputs) ins.push_back(&bvals[size_t(t)]);
      bvals[size_t(bop.outputs[0])] =
          eval_predefined(bop.type, bop.attrs, ins, bg.tensor(bop.outputs[0]).shape);
    }
  }
};

}  // namespace tpo::internal
