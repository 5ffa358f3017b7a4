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

#include <string>

#include <json.hpp>

#include "tpo/ir/graph.hpp"

namespace tpo::ir {

// Graph JSON schema:
//   { "tensors": [{"id", "shape", "scope"}],
//     "ops":     [{"id", "type", "attrs", "inputs", "outputs", "blockGraph"?}],
//     "inputs":  [...], "outputs": [...] }
// DimMaps serialize as {"x": 1, "y": "phi"} (loop maps use "i").
// serialize/deserialize round-trips are identities.

nlohmann::json to_json(const KernelGraph &g);
KernelGraph kernel_graph_from_json(const nlohmann::json &j);

nlohmann::json dim_map_to_json(const DimMap &m, bool grid_axes);
DimMap dim_map_from_json(const nlohmann::json &j, bool grid_axes);

KernelGraph load_graph_file(const std::string &path);
void save_graph_file(const KernelGraph &g, const std::string &path, bool pretty);

}  // namespace tpo::ir
