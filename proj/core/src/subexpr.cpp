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

#include "tpo/expr/subexpr.hpp"

#include <cstring>
#include <sstream>

namespace tpo::expr {

namespace {

std::vector<ExprId> without(const std::vector<ExprId> &leaves, size_t i) {
  std::vector<ExprId> out;
  out.reserve(leaves.size() - 1);
  for (size_t j = 0; j < leaves.size(); ++j)
    if (j != i) out.push_back(leaves[j]);
  return out;
}

std::vector<ExprId> without2(const std::vector<ExprId> &leaves, size_t i, size_t j) {
  std::vector<ExprId> out;
  out.reserve(leaves.size() - 2);
  for (size_t k = 0; k < leaves.size(); ++k)
    if (k != i && k != j) out.push_back(leaves[k]);
  return out;
}

std::vector<int64_t> proper_divisors(int64_t k) {
  std::vector<int64_t> out;
  for (int64_t d = 2; d * d <= k; ++d) {
    if (k % d == 0) {
      out.push_back(d);
      if (d != k / d) out.push_back(k / d);
    }
  }
  return out;  // excludes 1 and k
}

}  // namespace

namespace axioms {
bool known(const char *name) {
  static const char *all[] = {
      kCommutativity, kAssociativity, kDistributivity, kIdentityReduction,
      kSubAdd,        kSubMul,        kSubDivNum,      kSubDivDen,
      kSubExp,        kSubSqrt,       kSubSilu,        kSubSum,
      kReflexivity,
  };
  for (const char *a : all)
    if (std::strcmp(a, name) == 0) return true;
  return false;
}
}  // namespace axioms

SubexprEngine::SubexprEngine(const ExprPool &target_pool,
                             const std::vector<ExprId> &targets, EngineConfig cfg)
    : cfg_(cfg) {
  std::vector<ExprId> local;
  local.reserve(targets.size());
  for (ExprId t : targets) local.push_back(pool_.import(target_pool, t));
  saturate(local);
}

void SubexprEngine::enqueue(ExprId id, int depth, Hash128 parent, const char *axiom) {
  ExprId nid = pool_.normalize(id);
  Hash128 h = pool_.hash(nid);
  if (members_.count(h)) return;
  if (depth > cfg_.max_depth || members_.size() >= cfg_.max_nodes) {
    saturated_ = false;
    return;
  }
  members_.insert(h);
  worklist_.emplace_back(nid, depth);
  if (cfg_.log_steps) steps_.push_back(DerivationStep{h, parent, axiom});
}

void SubexprEngine::saturate(const std::vector<ExprId> &targets) {
  for (ExprId t : targets) enqueue(t, 0, Hash128{}, axioms::kReflexivity);
  size_t idx = 0;
  std::vector<std::pair<ExprId, const char *>> next;
  while (idx < worklist_.size()) {
    auto [id, depth] = worklist_[idx++];
    Hash128 h = pool_.hash(id);
    next.clear();
    eq_neighbors(id, next);
    sub_children(id, next);
    for (auto &[n, axiom] : next) enqueue(n, depth + 1, h, axiom);
  }
}

void SubexprEngine::eq_neighbors(ExprId id,
                                 std::vector<std::pair<ExprId, const char *>> &out) {
  eq_neighbors_root(id, out);
  const ExprPool::Node n = pool_.node(id);
  auto rebuild = [&](ExprId child, bool first) {
    std::vector<std::pair<ExprId, const char *>> tmp;
    eq_neighbors(child, tmp);
    for (auto &[c, axiom] : tmp) {
      ExprId r;
      switch (n.kind) {
        case Kind::Add: r = first ? pool_.add(c, n.b) : pool_.add(n.a, c); break;
        case Kind::Mul: r = first ? pool_.mul(c, n.b) : pool_.mul(n.a, c); break;
        case Kind::Div: r = first ? pool_.div(c, n.b) : pool_.div(n.a, c); break;
        case Kind::Exp: r = pool_.exp(c); break;
        case Kind::Sqrt: r = pool_.sqrt(c); break;
        case Kind::Silu: r = pool_.silu(c); break;
        case Kind::Sum: r = pool_.sum(n.payload, c); break;
        default: continue;
      }
      out.emplace_back(r, axiom);
    }
  };
  switch (n.kind) {
    case Kind::Var:
      break;
    case Kind::Add:
    case Kind::Mul:
    case Kind::Div:
      rebuild(n.a, true);
      rebuild(n.b, false);
      break;
    case Kind::Exp:
    case Kind::Sqrt:
    case Kind::Silu:
    case Kind::Sum:
      rebuild(n.a, true);
      break;
  }
}

void SubexprEngine::eq_neighbors_root(
    ExprId id, std::vector<std::pair<ExprId, const char *>> &out) {
  const ExprPool::Node n = pool_.node(id);

  auto build_chain = [&](Kind kind, const std::vector<ExprId> &leaves) -> ExprId {
    if (leaves.empty()) return -1;
    if (leaves.size() == 1) return leaves[0];
    return pool_.fold_chain(kind, leaves);
  };

  if (n.kind == Kind::Mul) {
    std::vector<ExprId> leaves;
    pool_.collect_chain(Kind::Mul, id, leaves);
    for (size_t i = 0; i < leaves.size(); ++i) {
      const ExprPool::Node li = pool_.node(leaves[i]);
      std::vector<ExprId> rest = without(leaves, i);
      if (li.kind == Kind::Add) {
        // mul(add(x,y), z) = add(mul(x,z), mul(y,z)), fully distributed.
        std::vector<ExprId> addends;
        pool_.collect_chain(Kind::Add, leaves[i], addends);
        ExprId acc = -1;
        for (ExprId a : addends) {
          std::vector<ExprId> term = rest;
          term.push_back(a);
          ExprId m = build_chain(Kind::Mul, term);
          acc = acc < 0 ? m : pool_.add(acc, m);
        }
        out.emplace_back(acc, axioms::kDistributivity);
      } else if (li.kind == Kind::Div) {
        // mul(x, div(y,z)) = div(mul(x,y), z)
        std::vector<ExprId> num = rest;
        num.push_back(li.a);
        out.emplace_back(pool_.div(build_chain(Kind::Mul, num), li.b),
                         axioms::kAssociativity);
      } else if (li.kind == Kind::Sum && !rest.empty()) {
        // mul(sum(i,x), y) = sum(i, mul(x,y))
        std::vector<ExprId> body = rest;
        body.push_back(li.a);
        out.emplace_back(pool_.sum(li.payload, build_chain(Kind::Mul, body)),
                         axioms::kDistributivity);
      } else if (li.kind == Kind::Exp) {
        // mul(exp(x), exp(y)) = exp(add(x,y))
        for (size_t j = i + 1; j < leaves.size(); ++j) {
          const ExprPool::Node lj = pool_.node(leaves[j]);
          if (lj.kind != Kind::Exp) continue;
          std::vector<ExprId> others = without2(leaves, i, j);
          ExprId merged = pool_.exp(pool_.add(li.a, lj.a));
          others.push_back(merged);
          out.emplace_back(build_chain(Kind::Mul, others), axioms::kDistributivity);
        }
      } else if (li.kind == Kind::Sqrt) {
        // mul(sqrt(x), sqrt(y)) = sqrt(mul(x,y))
        for (size_t j = i + 1; j < leaves.size(); ++j) {
          const ExprPool::Node lj = pool_.node(leaves[j]);
          if (lj.kind != Kind::Sqrt) continue;
          std::vector<ExprId> others = without2(leaves, i, j);
          ExprId merged = pool_.sqrt(pool_.mul(li.a, lj.a));
          others.push_back(merged);
          out.emplace_back(build_chain(Kind::Mul, others), axioms::kDistributivity);
        }
      }
    }
    return;
  }

  if (n.kind == Kind::Add) {
    std::vector<ExprId> leaves;
    pool_.collect_chain(Kind::Add, id, leaves);
    for (size_t i = 0; i < leaves.size(); ++i) {
      for (size_t j = i + 1; j < leaves.size(); ++j) {
        const ExprPool::Node li = pool_.node(leaves[i]);
        const ExprPool::Node lj = pool_.node(leaves[j]);
        std::vector<ExprId> others = without2(leaves, i, j);
        // add(div(x,z), div(y,z)) = div(add(x,y), z)
        if (li.kind == Kind::Div && lj.kind == Kind::Div && li.b == lj.b) {
          std::vector<ExprId> rest = others;
          rest.push_back(pool_.div(pool_.add(li.a, lj.a), li.b));
          out.emplace_back(build_chain(Kind::Add, rest), axioms::kAssociativity);
        }
        // add(sum(i,x), sum(i,y)) = sum(i, add(x,y))
        if (li.kind == Kind::Sum && lj.kind == Kind::Sum && li.payload == lj.payload) {
          std::vector<ExprId> rest = others;
          rest.push_back(pool_.sum(li.payload, pool_.add(li.a, lj.a)));
          out.emplace_back(build_chain(Kind::Add, rest), axioms::kAssociativity);
        }
        // add(mul(x,z), mul(y,z)) = mul(add(x,y), z): factor a shared term.
        std::vector<ExprId> fi, fj;
        if (li.kind == Kind::Mul)
          pool_.collect_chain(Kind::Mul, leaves[i], fi);
        else
          fi.push_back(leaves[i]);
        if (lj.kind == Kind::Mul)
          pool_.collect_chain(Kind::Mul, leaves[j], fj);
        else
          fj.push_back(leaves[j]);
        if (fi.size() > 1 && fj.size() > 1) {
          for (size_t a = 0; a < fi.size(); ++a) {
            for (size_t b = 0; b < fj.size(); ++b) {
              if (fi[a] != fj[b]) continue;
              ExprId ri = build_chain(Kind::Mul, without(fi, a));
              ExprId rj = build_chain(Kind::Mul, without(fj, b));
              std::vector<ExprId> rest = others;
              rest.push_back(pool_.mul(pool_.add(ri, rj), fi[a]));
              out.emplace_back(build_chain(Kind::Add, rest), axioms::kDistributivity);
            }
          }
        }
      }
    }
    return;
  }

  if (n.kind == Kind::Div) {
    const ExprPool::Node num = pool_.node(n.a);
    const ExprPool::Node den = pool_.node(n.b);
    if (num.kind == Kind::Div) {
      // div(div(x,y), z) = div(x, mul(y,z))
      out.emplace_back(pool_.div(num.a, pool_.mul(num.b, n.b)), axioms::kAssociativity);
    }
    if (den.kind == Kind::Mul) {
      // div(x, mul(y,z)) = div(div(x,y), z)
      std::vector<ExprId> dl;
      pool_.collect_chain(Kind::Mul, n.b, dl);
      for (size_t i = 0; i < dl.size(); ++i) {
        ExprId rest = build_chain(Kind::Mul, without(dl, i));
        out.emplace_back(pool_.div(pool_.div(n.a, dl[i]), rest), axioms::kAssociativity);
      }
    }
    if (num.kind == Kind::Add) {
      // div(add(x,y), z) = add(div(x,z), div(y,z)), fully split.
      std::vector<ExprId> al;
      pool_.collect_chain(Kind::Add, n.a, al);
      ExprId acc = -1;
      for (ExprId a : al) {
        ExprId d = pool_.div(a, n.b);
        acc = acc < 0 ? d : pool_.add(acc, d);
      }
      out.emplace_back(acc, axioms::kAssociativity);
    }
    if (num.kind == Kind::Sum) {
      // div(sum(i,x), y) = sum(i, div(x,y))
      out.emplace_back(pool_.sum(num.payload, pool_.div(num.a, n.b)),
                       axioms::kDistributivity);
    }
    if (num.kind == Kind::Mul) {
      // div(mul(x,y), z) = mul(x, div(y,z))
      std::vector<ExprId> ml;
      pool_.collect_chain(Kind::Mul, n.a, ml);
      for (size_t i = 0; i < ml.size(); ++i) {
        std::vector<ExprId> rest = without(ml, i);
        rest.push_back(pool_.div(ml[i], n.b));
        out.emplace_back(build_chain(Kind::Mul, rest), axioms::kAssociativity);
      }
    }
    return;
  }

  if (n.kind == Kind::Sum) {
    const ExprPool::Node body = pool_.node(n.a);
    if (body.kind == Kind::Add) {
      // sum(i, add(x,y)) = add(sum(i,x), sum(i,y))
      std::vector<ExprId> al;
      pool_.collect_chain(Kind::Add, n.a, al);
      ExprId acc = -1;
      for (ExprId a : al) {
        ExprId s = pool_.sum(n.payload, a);
        acc = acc < 0 ? s : pool_.add(acc, s);
      }
      out.emplace_back(acc, axioms::kAssociativity);
    }
    if (body.kind == Kind::Mul) {
      // sum(i, mul(x,y)) = mul(sum(i,x), y)
      std::vector<ExprId> ml;
      pool_.collect_chain(Kind::Mul, n.a, ml);
      for (size_t i = 0; i < ml.size(); ++i) {
        std::vector<ExprId> rest = without(ml, i);
        rest.push_back(pool_.sum(n.payload, ml[i]));
        out.emplace_back(build_chain(Kind::Mul, rest), axioms::kDistributivity);
      }
    }
    if (body.kind == Kind::Div) {
      // sum(i, div(x,y)) = div(sum(i,x), y)
      out.emplace_back(pool_.div(pool_.sum(n.payload, body.a), body.b),
                       axioms::kDistributivity);
    }
    return;
  }

  if (n.kind == Kind::Exp) {
    const ExprPool::Node arg = pool_.node(n.a);
    if (arg.kind == Kind::Add) {
      // exp(add(x,y)) = mul(exp(x), exp(y))
      std::vector<ExprId> al;
      pool_.collect_chain(Kind::Add, n.a, al);
      for (size_t i = 0; i < al.size(); ++i) {
        ExprId rest = build_chain(Kind::Add, without(al, i));
        out.emplace_back(pool_.mul(pool_.exp(al[i]), pool_.exp(rest)),
                         axioms::kDistributivity);
      }
    }
    return;
  }

  if (n.kind == Kind::Sqrt) {
    const ExprPool::Node arg = pool_.node(n.a);
    if (arg.kind == Kind::Mul) {
      // sqrt(mul(x,y)) = mul(sqrt(x), sqrt(y))
      std::vector<ExprId> ml;
      pool_.collect_chain(Kind::Mul, n.a, ml);
      for (size_t i = 0; i < ml.size(); ++i) {
        ExprId rest = build_chain(Kind::Mul, without(ml, i));
        out.emplace_back(pool_.mul(pool_.sqrt(ml[i]), pool_.sqrt(rest)),
                         axioms::kDistributivity);
      }
    }
    return;
  }
}

void SubexprEngine::sub_children(ExprId id,
                                 std::vector<std::pair<ExprId, const char *>> &out) {
  const ExprPool::Node n = pool_.node(id);
  switch (n.kind) {
    case Kind::Var:
      break;
    case Kind::Add:
    case Kind::Mul: {
      const char *axiom = n.kind == Kind::Add ? axioms::kSubAdd : axioms::kSubMul;
      std::vector<ExprId> leaves;
      pool_.collect_chain(n.kind, id, leaves);
      for (size_t i = 0; i < leaves.size(); ++i) {
        out.emplace_back(leaves[i], axiom);
        if (leaves.size() > 2) {
          std::vector<ExprId> rest = without(leaves, i);
          out.emplace_back(pool_.fold_chain(n.kind, rest), axiom);
        }
      }
      break;
    }
    case Kind::Div:
      out.emplace_back(n.a, axioms::kSubDivNum);
      out.emplace_back(n.b, axioms::kSubDivDen);
      break;
    case Kind::Exp:
      out.emplace_back(n.a, axioms::kSubExp);
      break;
    case Kind::Sqrt:
      out.emplace_back(n.a, axioms::kSubSqrt);
      break;
    case Kind::Silu:
      out.emplace_back(n.a, axioms::kSubSilu);
      break;
    case Kind::Sum: {
      out.emplace_back(n.a, axioms::kSubSum);
      for (int64_t d : proper_divisors(n.payload))
        out.emplace_back(pool_.sum(d, n.a), axioms::kSubSum);
      break;
    }
  }
}

Verdict SubexprEngine::query(ExprPool &pool, ExprId e) const {
  ExprId ne = pool.normalize(e);
  if (members_.count(pool.hash(ne))) return Verdict::Yes;
  return saturated_ ? Verdict::No : Verdict::Budget;
}

std::string SubexprEngine::dump_members() const {
  std::ostringstream os;
  os << "closure size " << members_.size() << (saturated_ ? " (saturated)" : " (budget)");
  return os.str();
}

bool EntailCache::lookup(const Hash128 &key, Verdict &out) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find(key);
  if (it == map_.end()) {
    misses_.fetch_add(1, std::memory_order_relaxed);
    return false;
  }
  hits_.fetch_add(1, std::memory_order_relaxed);
  out = it->second;
  return true;
}

void EntailCache::insert(const Hash128 &key, Verdict v) {
  std::lock_guard<std::mutex> lock(mu_);
  map_[key] = v;
}

}  // namespace tpo::expr
