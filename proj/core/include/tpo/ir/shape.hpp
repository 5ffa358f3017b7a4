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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpo {

enum class ErrCode {
  ShapeMismatch,
  NotDivisible,
  ReplicaInOmap,
  Unsupported,
  DivByZero,
  NonResidue,
  PoisonedExponent,
  BudgetExhausted,
  Infeasible,
  DoesNotFit,
  ParseError,
  NotLax,
  UnknownSuite,
  ConfigError,
};

const char *err_name(ErrCode c);

struct Error : std::runtime_error {
  ErrCode code;
  Error(ErrCode c, const std::string &msg)
      : std::runtime_error(std::string(err_name(c)) + ": " + msg), code(c) {}
};

namespace ir {

inline constexpr int kMaxRank = 4;

/// Logical tensor shape, rank 1..4, all dims >= 1.
struct TensorShape {
  std::vector<int64_t> dims;

  TensorShape() = default;
  TensorShape(std::initializer_list<int64_t> d) : dims(d) {}
  explicit TensorShape(std::vector<int64_t> d) : dims(std::move(d)) {}

  int rank() const { return static_cast<int>(dims.size()); }
  int64_t elem_count() const {
    int64_t n = 1;
    for (int64_t d : dims) n *= d;
    return n;
  }
  bool valid() const {
    if (dims.empty() || rank() > kMaxRank) return false;
    for (int64_t d : dims)
      if (d < 1) return false;
    return true;
  }
  bool operator==(const TensorShape &o) const = default;
};

std::string to_string(const TensorShape &s);

enum class Scope { Device, Shared, Register };

const char *scope_name(Scope s);

/// Mapping from grid axes (x, y, z) or the loop axis (i) to a data
/// dimension of a tensor, or to the replica marker phi (kReplica).
/// Axis order is fixed: grid maps hold entries for x,y,z in order,
/// loop maps hold the single entry for i.
inline constexpr int kReplica = -1;

struct DimMap {
  std::vector<int> targets;  // per axis: data dim index, or kReplica

  DimMap() = default;
  explicit DimMap(std::vector<int> t) : targets(std::move(t)) {}
  static DimMap replicated(int axes) {
    return DimMap(std::vector<int>(static_cast<size_t>(axes), kReplica));
  }

  int axes() const { return static_cast<int>(targets.size()); }
  bool has_replica() const {
    for (int t : targets)
      if (t == kReplica) return true;
    return false;
  }
  /// No two axes may map to the same data dimension.
  bool targets_distinct() const {
    for (size_t i = 0; i < targets.size(); ++i)
      for (size_t j = i + 1; j < targets.size(); ++j)
        if (targets[i] != kReplica && targets[i] == targets[j]) return false;
    return true;
  }
  bool operator==(const DimMap &o) const = default;
};

std::string to_string(const DimMap &m, bool grid_axes = true);

}  // namespace ir
}  // namespace tpo
