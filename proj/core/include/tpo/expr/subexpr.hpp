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

#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tpo/expr/expr.hpp"

namespace tpo::expr {

struct EngineConfig {
  size_t max_nodes = 10000;  // derivation budget: closure members
  int max_depth = 8;         // derivation budget: chain length
  bool log_steps = false;    // record one axiom name per derivation step
};

enum class Verdict : uint8_t { Yes, No, Budget };

struct DerivationStep {
  Hash128 term;
  Hash128 parent;
  const char *axiom;
};

/// Decides subexpression entailment against a fixed target set by
/// saturating the set of terms derivably *below* the targets:
///   - equality axioms rewrite members at any position (congruence),
///   - subexpression axioms descend from a member's root,
///   - reflexivity seeds the targets, transitivity chains for free.
/// Saturation runs once at construction; queries are lock-free lookups
/// of normalized structural hashes and are safe from worker threads.
class SubexprEngine {
 public:
  SubexprEngine(const ExprPool &target_pool, const std::vector<ExprId> &targets,
                EngineConfig cfg = {});

  /// Is `e` (a term in `pool`) derivably a subexpression of some target?
  Verdict query(ExprPool &pool, ExprId e) const;

  bool saturated() const { return saturated_; }
  size_t closure_size() const { return members_.size(); }
  const std::vector<DerivationStep> &steps() const { return steps_; }
  std::string dump_members() const;  // debugging aid

 private:
  void saturate(const std::vector<ExprId> &targets);
  void enqueue(ExprId id, int depth, Hash128 parent, const char *axiom);

  void eq_neighbors(ExprId id, std::vector<std::pair<ExprId, const char *>> &out);
  void eq_neighbors_root(ExprId id, std::vector<std::pair<ExprId, const char *>> &out);
  void sub_children(ExprId id, std::vector<std::pair<ExprId, const char *>> &out);

  ExprPool pool_;  // engine-private arena used during saturation
  EngineConfig cfg_;
  std::unordered_set<Hash128, Hash128Hasher> members_;
  std::vector<std::pair<ExprId, int>> worklist_;
  bool saturated_ = true;
  std::vector<DerivationStep> steps_;
};

/// Memoizes verdicts per normalized query hash; shared across search
/// workers (verdicts are deterministic, races are benign).
class EntailCache {
 public:
  bool lookup(const Hash128 &key, Verdict &out) const;
  void insert(const Hash128 &key, Verdict v);
  uint64_t hits() const { return hits_.load(); }
  uint64_t misses() const { return misses_.load(); }

 private:
  mutable std::mutex mu_;
  std::unordered_map<Hash128, Verdict, Hash128Hasher> map_;
  mutable std::atomic<uint64_t> hits_{0}, misses_{0};
};

// Axiom row labels used in derivation logs.
namespace axioms {
inline constexpr const char *kCommutativity = "commutativity";
inline constexpr const char *kAssociativity = "associativity";
inline constexpr const char *kDistributivity = "distributivity";
inline constexpr const char *kIdentityReduction = "identity reduction";
inline constexpr const char *kSubAdd = "subexpr(x, add(x,y))";
inline constexpr const char *kSubMul = "subexpr(x, mul(x,y))";
inline constexpr const char *kSubDivNum = "subexpr(x, div(x,y))";
inline constexpr const char *kSubDivDen = "subexpr(y, div(x,y))";
inline constexpr const char *kSubExp = "subexpr(x, exp(x))";
inline constexpr const char *kSubSqrt = "subexpr(x, sqrt(x))";
inline constexpr const char *kSubSilu = "subexpr(x, silu(x))";
inline constexpr const char *kSubSum = "subexpr(x, sum(i,x))";
inline constexpr const char *kReflexivity = "reflexivity";
bool known(const char *name);
}  // namespace axioms

}  // namespace tpo::expr
