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

#include "tpo/ir/serialize.hpp"

#include <fstream>

namespace tpo::ir {

using nlohmann::json;

namespace {

const char *kGridAxes[] = {"x", "y", "z"};

json shape_to_json(const TensorShape &s) { return json(s.dims); }
TensorShape shape_from_json(const json &j) {
  return TensorShape(j.get<std::vector<int64_t>>());
}

Scope scope_from_name(const std::string &s) {
  if (s == "device") return Scope::Device;
  if (s == "shared") return Scope::Shared;
  if (s == "register") return Scope::Register;
  throw Error(ErrCode::ParseError, "bad scope '" + s + "'");
}

json attrs_to_json(const OpAttrs &attrs) {
  json j = json::object();
  std::visit(
      [&j](const auto &a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, SumAttrs>) {
          j["dim"] = a.dim;
          j["group"] = a.group;
        } else if constexpr (std::is_same_v<T, AccumAttrs>) {
          j["fmap"] = dim_map_to_json(a.fmap, false);
        } else if constexpr (std::is_same_v<T, ReshapeAttrs>) {
          j["target"] = shape_to_json(a.target);
        } else if constexpr (std::is_same_v<T, RepeatAttrs>) {
          j["target"] = shape_to_json(a.target);
        } else if constexpr (std::is_same_v<T, InIterAttrs>) {
          j["operand"] = a.operand;
          j["imap"] = dim_map_to_json(a.imap, true);
          j["fmap"] = dim_map_to_json(a.fmap, false);
        } else if constexpr (std::is_same_v<T, OutSaverAttrs>) {
          j["omap"] = dim_map_to_json(a.omap, true);
        }
      },
      attrs);
  return j;
}

OpAttrs attrs_from_json(OpType type, const json &j) {
  switch (type) {
    case OpType::Sum:
      return SumAttrs{j.at("dim").get<int>(), j.at("group").get<int64_t>()};
    case OpType::Accum:
      return AccumAttrs{dim_map_from_json(j.at("fmap"), false)};
    case OpType::Reshape:
      return ReshapeAttrs{shape_from_json(j.at("target"))};
    case OpType::Repeat:
      return RepeatAttrs{shape_from_json(j.at("target"))};
    case OpType::InIter:
      return InIterAttrs{j.at("operand").get<int>(),
                         dim_map_from_json(j.at("imap"), true),
                         dim_map_from_json(j.at("fmap"), false)};
    case OpType::OutSaver:
      return OutSaverAttrs{dim_map_from_json(j.at("omap"), true)};
    default:
      return NoAttrs{};
  }
}

json tensors_to_json(const std::vector<TensorInfo> &tensors) {
  json arr = json::array();
  for (const TensorInfo &t : tensors) {
    json jt{{"id", t.id}, {"shape", shape_to_json(t.shape)},
            {"scope", scope_name(t.scope)}};
    if (t.layout) jt["layout"] = *t.layout;
    arr.push_back(std::move(jt));
  }
  return arr;
}

void tensors_from_json(const json &arr, std::vector<TensorInfo> &tensors) {
  for (const json &jt : arr) {
    TensorInfo t;
    t.id = jt.at("id").get<int>();
    t.shape = shape_from_json(jt.at("shape"));
    t.scope = scope_from_name(jt.at("scope").get<std::string>());
    if (jt.contains("layout")) t.layout = jt.at("layout").get<int>();
    if (t.id != static_cast<int>(tensors.size()))
      throw Error(ErrCode::ParseError, "tensor ids must be dense and ordered");
    tensors.push_back(std::move(t));
  }
}

json block_to_json(const BlockGraph &bg);
std::shared_ptr<BlockGraph> block_from_json(const json &j);

json op_to_json(const Op &op) {
  json jo{{"id", op.id},
          {"type", op_name(op.type)},
          {"attrs", attrs_to_json(op.attrs)},
          {"inputs", op.inputs},
          {"outputs", op.outputs}};
  if (op.block) jo["blockGraph"] = block_to_json(*op.block);
  return jo;
}

Op op_from_json(const json &jo) {
  Op op;
  op.id = jo.at("id").get<int>();
  op.type = op_from_name(jo.at("type").get<std::string>());
  op.attrs = attrs_from_json(op.type, jo.at("attrs"));
  op.inputs = jo.at("inputs").get<std::vector<TensorId>>();
  op.outputs = jo.at("outputs").get<std::vector<TensorId>>();
  if (jo.contains("blockGraph")) op.block = block_from_json(jo.at("blockGraph"));
  return op;
}

json block_to_json(const BlockGraph &bg) {
  json j;
  j["grid"] = bg.grid;
  j["forloop"] = bg.forloop;
  j["tensors"] = tensors_to_json(bg.tensors);
  json ops = json::array();
  for (const Op &op : bg.ops) ops.push_back(op_to_json(op));
  j["ops"] = std::move(ops);
  if (!bg.thread_groups.empty()) {
    json groups = json::array();
    for (const ThreadGroup &tg : bg.thread_groups)
      groups.push_back(json{{"ops", tg.op_ids},
                            {"blockDims", tg.block_dims},
                            {"forloop", tg.forloop}});
    j["threadGroups"] = std::move(groups);
  }
  return j;
}

std::shared_ptr<BlockGraph> block_from_json(const json &j) {
  auto bg = std::make_shared<BlockGraph>();
  auto grid = j.at("grid").get<std::vector<int64_t>>();
  if (grid.size() != 3) throw Error(ErrCode::ParseError, "grid must have 3 extents");
  std::copy(grid.begin(), grid.end(), bg->grid.begin());
  bg->forloop = j.at("forloop").get<int64_t>();
  tensors_from_json(j.at("tensors"), bg->tensors);
  for (const json &jo : j.at("ops")) {
    Op op = op_from_json(jo);
    for (TensorId out : op.outputs) {
      bg->tensor(out).producer_op = op.id;
    }
    bg->ops.push_back(std::move(op));
  }
  if (j.contains("threadGroups")) {
    for (const json &jt : j.at("threadGroups")) {
      ThreadGroup tg;
      tg.op_ids = jt.at("ops").get<std::vector<int>>();
      auto bd = jt.at("blockDims").get<std::vector<int>>();
      std::copy(bd.begin(), bd.end(), tg.block_dims.begin());
      tg.forloop = jt.at("forloop").get<int>();
      bg->thread_groups.push_back(std::move(tg));
    }
  }
  return bg;
}

}  // namespace

json dim_map_to_json(const DimMap &m, bool grid_axes) {
  json j = json::object();
  for (int a = 0; a < m.axes(); ++a) {
    const char *axis = grid_axes ? kGridAxes[a] : "i";
    int t = m.targets[size_t(a)];
    if (t == kReplica)
      j[axis] = "phi";
    else
      j[axis] = t;
  }
  return j;
}

DimMap dim_map_from_json(const json &j, bool grid_axes) {
  DimMap m;
  auto read = [&j, &m](const char *axis) {
    if (!j.contains(axis)) return false;
    const json &v = j.at(axis);
    if (v.is_string()) {
      if (v.get<std::string>() != "phi")
        throw Error(ErrCode::ParseError, "dim map entry must be an index or 'phi'");
      m.targets.push_back(kReplica);
    } else {
      m.targets.push_back(v.get<int>());
    }
    return true;
  };
  if (grid_axes) {
    for (const char *axis : kGridAxes)
      if (!read(axis)) break;
  } else {
    read("i");
  }
  return m;
}

json to_json(const KernelGraph &g) {
  json j;
  j["tensors"] = tensors_to_json(g.tensors);
  json ops = json::array();
  for (const Op &op : g.ops) ops.push_back(op_to_json(op));
  j["ops"] = std::move(ops);
  j["inputs"] = g.inputs;
  j["outputs"] = g.outputs;
  return j;
}

KernelGraph kernel_graph_from_json(const json &j) {
  KernelGraph g;
  tensors_from_json(j.at("tensors"), g.tensors);
  for (const json &jo : j.at("ops")) {
    Op op = op_from_json(jo);
    int out_idx = 0;
    for (TensorId out : op.outputs) {
      g.tensor(out).producer_op = op.id;
      g.tensor(out).producer_out = out_idx++;
    }
    g.ops.push_back(std::move(op));
  }
  g.inputs = j.at("inputs").get<std::vector<TensorId>>();
  g.outputs = j.at("outputs").get<std::vector<TensorId>>();
  return g;
}

KernelGraph load_graph_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrCode::ParseError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw Error(ErrCode::ParseError, e.what());
  }
  return kernel_graph_from_json(j);
}

void save_graph_file(const KernelGraph &g, const std::string &path, bool pretty) {
  std::ofstream out(path);
  if (!out) throw Error(ErrCode::ParseError, "cannot open " + path + " for writing");
  if (pretty)
    out << to_json(g).dump(2) << '\n';
  else
    out << to_json(g).dump() << '\n';
}

}  // namespace tpo::ir
