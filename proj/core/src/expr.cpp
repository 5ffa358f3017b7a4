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

#include "tpo/expr/expr.hpp"

#include <algorithm>
#include <sstream>

namespace tpo::expr {

namespace {

inline uint64_t mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

Hash128 node_hash(Kind kind, const Hash128 &a, const Hash128 &b, int64_t payload) {
  uint64_t k = static_cast<uint64_t>(kind) + 1;
  Hash128 h;
  h.lo = mix(k * 0x100000001b3ull ^ a.lo ^ (b.lo << 1) ^ mix(uint64_t(payload)));
  h.hi = mix(k ^ a.hi * 0x100000001b3ull ^ (b.hi >> 1) ^ (uint64_t(payload) * 31));
  return h;
}

}  // namespace

size_t ExprPool::KeyHasher::operator()(
    const std::tuple<uint8_t, ExprId, ExprId, int64_t> &k) const {
  uint64_t h = mix(std::get<0>(k));
  h = mix(h ^ uint64_t(uint32_t(std::get<1>(k))));
  h = mix(h ^ uint64_t(uint32_t(std::get<2>(k))));
  h = mix(h ^ uint64_t(std::get<3>(k)));
  return size_t(h);
}

ExprId ExprPool::intern(Kind kind, ExprId a, ExprId b, int64_t payload) {
  auto key = std::make_tuple(static_cast<uint8_t>(kind), a, b, payload);
  auto it = intern_.find(key);
  if (it != intern_.end()) return it->second;
  Node n;
  n.kind = kind;
  n.a = a;
  n.b = b;
  n.payload = payload;
  Hash128 ha = a >= 0 ? nodes_[size_t(a)].hash : Hash128{};
  Hash128 hb = b >= 0 ? nodes_[size_t(b)].hash : Hash128{};
  n.hash = node_hash(kind, ha, hb, payload);
  ExprId id = static_cast<ExprId>(nodes_.size());
  nodes_.push_back(n);
  norm_memo_.push_back(-1);
  intern_.emplace(key, id);
  return id;
}

ExprId ExprPool::var(int64_t v) { return intern(Kind::Var, -1, -1, v); }
ExprId ExprPool::add(ExprId x, ExprId y) { return intern(Kind::Add, x, y, 0); }
ExprId ExprPool::mul(ExprId x, ExprId y) { return intern(Kind::Mul, x, y, 0); }
ExprId ExprPool::div(ExprId x, ExprId y) { return intern(Kind::Div, x, y, 0); }
ExprId ExprPool::exp(ExprId x) { return intern(Kind::Exp, x, -1, 0); }
ExprId ExprPool::sqrt(ExprId x) { return intern(Kind::Sqrt, x, -1, 0); }
ExprId ExprPool::silu(ExprId x) { return intern(Kind::Silu, x, -1, 0); }
ExprId ExprPool::sum(int64_t k, ExprId x) { return intern(Kind::Sum, x, -1, k); }

int ExprPool::compare(ExprId x, ExprId y) const {
  if (x == y) return 0;
  const Node &nx = nodes_[size_t(x)];
  const Node &ny = nodes_[size_t(y)];
  if (nx.hash.lo != ny.hash.lo) return nx.hash.lo < ny.hash.lo ? -1 : 1;
  if (nx.hash.hi != ny.hash.hi) return nx.hash.hi < ny.hash.hi ? -1 : 1;
  // Hash tie: resolve structurally.
  if (nx.kind != ny.kind) return nx.kind < ny.kind ? -1 : 1;
  if (nx.payload != ny.payload) return nx.payload < ny.payload ? -1 : 1;
  if (nx.a >= 0 && ny.a >= 0) {
    int c = compare(nx.a, ny.a);
    if (c) return c;
  }
  if (nx.b >= 0 && ny.b >= 0) return compare(nx.b, ny.b);
  return 0;
}

void ExprPool::collect_chain(Kind kind, ExprId id, std::vector<ExprId> &leaves) const {
  const Node &n = nodes_[size_t(id)];
  if (n.kind == kind) {
    collect_chain(kind, n.a, leaves);
    collect_chain(kind, n.b, leaves);
  } else {
    leaves.push_back(id);
  }
}

ExprId ExprPool::fold_chain(Kind kind, const std::vector<ExprId> &leaves) {
  ExprId acc = leaves[0];
  for (size_t i = 1; i < leaves.size(); ++i) acc = intern(kind, acc, leaves[i], 0);
  return acc;
}

ExprId ExprPool::normalize(ExprId id) {
  if (norm_memo_[size_t(id)] >= 0) return norm_memo_[size_t(id)];
  const Node n = nodes_[size_t(id)];
  ExprId result = id;
  switch (n.kind) {
    case Kind::Var:
      result = id;
      break;
    case Kind::Add:
    case Kind::Mul: {
      ExprId a = normalize(n.a);
      ExprId b = normalize(n.b);
      std::vector<ExprId> leaves;
      collect_chain(n.kind, a, leaves);
      collect_chain(n.kind, b, leaves);
      std::sort(leaves.begin(), leaves.end(),
                [this](ExprId x, ExprId y) { return compare(x, y) < 0; });
      result = fold_chain(n.kind, leaves);
      break;
    }
    case Kind::Div:
      result = intern(Kind::Div, normalize(n.a), normalize(n.b), 0);
      break;
    case Kind::Exp:
    case Kind::Sqrt:
    case Kind::Silu:
      result = intern(n.kind, normalize(n.a), -1, 0);
      break;
    case Kind::Sum: {
      ExprId body = normalize(n.a);
      int64_t k = n.payload;
      const Node *bn = &nodes_[size_t(body)];
      while (bn->kind == Kind::Sum) {
        k *= bn->payload;
        body = bn->a;
        bn = &nodes_[size_t(body)];
      }
      result = k == 1 ? body : intern(Kind::Sum, body, -1, k);
      break;
    }
  }
  norm_memo_[size_t(id)] = result;
  // The result of a normalization is itself normalized.
  norm_memo_[size_t(result)] = result;
  return result;
}

ExprId ExprPool::import(const ExprPool &other, ExprId id) {
  const Node &n = other.nodes_[size_t(id)];
  switch (n.kind) {
    case Kind::Var:
      return var(n.payload);
    case Kind::Sum:
      return sum(n.payload, import(other, n.a));
    case Kind::Exp:
    case Kind::Sqrt:
    case Kind::Silu:
      return intern(n.kind, import(other, n.a), -1, 0);
    default:
      return intern(n.kind, import(other, n.a), import(other, n.b), 0);
  }
}

std::string ExprPool::print(ExprId id) const {
  const Node &n = nodes_[size_t(id)];
  std::ostringstream os;
  switch (n.kind) {
    case Kind::Var:
      os << 'v' << n.payload;
      break;
    case Kind::Add:
      os << '(' << print(n.a) << " + " << print(n.b) << ')';
      break;
    case Kind::Mul:
      os << print(n.a) << '*' << print(n.b);
      break;
    case Kind::Div:
      os << '(' << print(n.a) << " / " << print(n.b) << ')';
      break;
    case Kind::Exp:
      os << "e^(" << print(n.a) << ')';
      break;
    case Kind::Sqrt:
      os << "sqrt(" << print(n.a) << ')';
      break;
    case Kind::Silu:
      os << "silu(" << print(n.a) << ')';
      break;
    case Kind::Sum:
      os << "sum_" << n.payload << '(' << print(n.a) << ')';
      break;
  }
  return os.str();
}

}  // namespace tpo::expr
