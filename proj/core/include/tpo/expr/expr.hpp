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

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace tpo::expr {

using ExprId = int32_t;

enum class Kind : uint8_t { Var, Add, Mul, Div, Exp, Sqrt, Silu, Sum };

/// 128-bit structural hash; equal normalized terms hash identically
/// across pools, which lets worker-local pools share one closure set.
struct Hash128 {
  uint64_t lo = 0, hi = 0;
  bool operator==(const Hash128 &o) const = default;
};

struct Hash128Hasher {
  size_t operator()(const Hash128 &h) const {
    return static_cast<size_t>(h.lo ^ (h.hi * 0x9e3779b97f4a7c15ull));
  }
};

/// Arena of hash-consed immutable term nodes.
class ExprPool {
 public:
  struct Node {
    Kind kind;
    ExprId a = -1, b = -1;
    int64_t payload = 0;  // var id, or sum extent
    Hash128 hash;
  };

  ExprId var(int64_t tensor_ordinal);
  ExprId add(ExprId x, ExprId y);
  ExprId mul(ExprId x, ExprId y);
  ExprId div(ExprId x, ExprId y);
  ExprId exp(ExprId x);
  ExprId sqrt(ExprId x);
  ExprId silu(ExprId x);
  ExprId sum(int64_t k, ExprId x);

  const Node &node(ExprId id) const { return nodes_[size_t(id)]; }
  size_t size() const { return nodes_.size(); }

  /// Flattens add/mul chains, sorts commutative children by the term
  /// order, merges nested sums, and drops sum(1, x). Idempotent.
  ExprId normalize(ExprId id);

  Hash128 hash(ExprId id) const { return nodes_[size_t(id)].hash; }

  /// Rebuild a term from another pool into this one.
  ExprId import(const ExprPool &other, ExprId id);

  /// Total order used to sort commutative children.
  int compare(ExprId x, ExprId y) const;

  /// Human-friendly notation: e^a, sum_k(a), a/b, a*b.
  std::string print(ExprId id) const;

  void collect_chain(Kind kind, ExprId id, std::vector<ExprId> &leaves) const;
  ExprId fold_chain(Kind kind, const std::vector<ExprId> &leaves);

 private:
  ExprId intern(Kind kind, ExprId a, ExprId b, int64_t payload);

  struct KeyHasher {
    size_t operator()(const std::tuple<uint8_t, ExprId, ExprId, int64_t> &k) const;
  };
  std::vector<Node> nodes_;
  std::unordered_map<std::tuple<uint8_t, ExprId, ExprId, int64_t>, ExprId, KeyHasher>
      intern_;
  std::vector<ExprId> norm_memo_;
};

}  // namespace tpo::expr
