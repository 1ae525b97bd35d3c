#include "rederiv/expr.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <set>
#include <stdexcept>

namespace rederiv {

RawPtr raw_null() { return std::make_shared<RawExpr>(RawExpr{ExprKind::Null, 0, "", {}}); }
RawPtr raw_eps() { return std::make_shared<RawExpr>(RawExpr{ExprKind::Eps, 0, "", {}}); }

RawPtr raw_sym(char c) {
  return std::make_shared<RawExpr>(RawExpr{ExprKind::Sym, c, "", {}});
}

RawPtr raw_union(RawPtr l, RawPtr r) {
  return std::make_shared<RawExpr>(
      RawExpr{ExprKind::Union, 0, "", {std::move(l), std::move(r)}});
}

RawPtr raw_concat(RawPtr l, RawPtr r) {
  return std::make_shared<RawExpr>(
      RawExpr{ExprKind::Concat, 0, "", {std::move(l), std::move(r)}});
}

RawPtr raw_star(RawPtr body) {
  return std::make_shared<RawExpr>(
      RawExpr{ExprKind::Star, 0, "", {std::move(body)}});
}

RawPtr raw_op(std::string op, std::vector<RawPtr> args) {
  return std::make_shared<RawExpr>(
      RawExpr{ExprKind::Op, 0, std::move(op), std::move(args)});
}

std::size_t raw_size(const RawExpr& e) {
  std::size_t n = 1;
  for (const auto& k : e.kids) n += raw_size(*k);
  return n;
}

std::size_t ExprPool::NodeHash::operator()(const ExprNode& n) const {
  auto mix = [](std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  };
  std::size_t h = mix(static_cast<std::size_t>(n.kind), static_cast<unsigned char>(n.sym));
  h = mix(h, std::hash<std::string>{}(n.op));
  for (ExprId k : n.kids) h = mix(h, k);
  return h;
}

ExprPool::ExprPool() {
  ExprId n = intern_locked(ExprNode{ExprKind::Null, 0, "", {}});
  ExprId e = intern_locked(ExprNode{ExprKind::Eps, 0, "", {}});
  assert(n == kNull && e == kEps);
  (void)n;
  (void)e;
}

ExprId ExprPool::intern_locked(ExprNode n) {
  auto it = table_.find(n);
  if (it != table_.end()) return it->second;
  ExprId id = static_cast<ExprId>(nodes_.size());
  nodes_.push_back(n);
  table_.emplace(std::move(n), id);
  return id;
}

ExprId ExprPool::sym(char c) {
  std::unique_lock lock(mu_);
  return intern_locked(ExprNode{ExprKind::Sym, c, {}, {}});
}

int ExprPool::compare_locked(ExprId a, ExprId b) const {
  if (a == b) return 0;
  const ExprNode& na = nodes_[a];
  const ExprNode& nb = nodes_[b];
  if (na.kind != nb.kind)
    return static_cast<int>(na.kind) < static_cast<int>(nb.kind) ? -1 : 1;
  switch (na.kind) {
    case ExprKind::Null:
    case ExprKind::Eps:
      return 0;  // unreachable: these intern uniquely
    case ExprKind::Sym:
      return na.sym < nb.sym ? -1 : 1;
    case ExprKind::Op:
      if (na.op != nb.op) return na.op < nb.op ? -1 : 1;
      break;
    default:
      break;
  }
  std::size_t n = std::min(na.kids.size(), nb.kids.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare_locked(na.kids[i], nb.kids[i]);
    if (c != 0) return c;
  }
  if (na.kids.size() != nb.kids.size())
    return na.kids.size() < nb.kids.size() ? -1 : 1;
  return 0;
}

int ExprPool::compare(ExprId a, ExprId b) const {
  std::shared_lock lock(mu_);
  return compare_locked(a, b);
}

ExprId ExprPool::union_locked(std::vector<ExprId> parts) {
  std::vector<ExprId> flat;
  for (ExprId p : parts) {
    const ExprNode& n = nodes_[p];
    if (n.kind == ExprKind::Null) continue;
    if (n.kind == ExprKind::Union)
      flat.insert(flat.end(), n.kids.begin(), n.kids.end());
    else
      flat.push_back(p);
  }
  std::sort(flat.begin(), flat.end(),
            [this](ExprId x, ExprId y) { return compare_locked(x, y) < 0; });
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return kNull;
  if (flat.size() == 1) return flat[0];
  return intern_locked(ExprNode{ExprKind::Union, 0, "", std::move(flat)});
}

ExprId ExprPool::mk_union(std::vector<ExprId> parts) {
  std::unique_lock lock(mu_);
  return union_locked(std::move(parts));
}

ExprId ExprPool::mk_concat(ExprId l, ExprId r) {
  std::unique_lock lock(mu_);
  return intern_locked(ExprNode{ExprKind::Concat, 0, "", {l, r}});
}

ExprId ExprPool::mk_star(ExprId body) {
  std::unique_lock lock(mu_);
  return intern_locked(ExprNode{ExprKind::Star, 0, "", {body}});
}

ExprId ExprPool::mk_op(std::string op, std::vector<ExprId> args) {
  std::unique_lock lock(mu_);
  return intern_locked(ExprNode{ExprKind::Op, 0, std::move(op), std::move(args)});
}

ExprId ExprPool::smart_concat(ExprId l, ExprId r) {
  if (l == kNull || r == kNull) return kNull;
  if (l == kEps) return r;
  if (r == kEps) return l;
  return mk_concat(l, r);
}

ExprId ExprPool::smart_union(ExprId l, ExprId r) { return mk_union({l, r}); }

ExprId ExprPool::prepend_word(std::string_view w, ExprId tail) {
  ExprId e = tail;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    e = smart_concat(sym(*it), e);
  return e;
}

const ExprNode& ExprPool::node(ExprId id) const {
  std::shared_lock lock(mu_);
  return nodes_[id];
}

std::size_t ExprPool::size() const {
  std::shared_lock lock(mu_);
  return nodes_.size();
}

ExprId normalize(const RawExpr& raw, ExprPool& pool) {
  switch (raw.kind) {
    case ExprKind::Null:
      return pool.null();
    case ExprKind::Eps:
      return pool.eps();
    case ExprKind::Sym:
      return pool.sym(raw.sym);
    case ExprKind::Union: {
      std::vector<ExprId> kids;
      kids.reserve(raw.kids.size());
      for (const auto& k : raw.kids) kids.push_back(normalize(*k, pool));
      return pool.mk_union(std::move(kids));
    }
    case ExprKind::Concat:
      return pool.mk_concat(normalize(*raw.kids[0], pool),
                            normalize(*raw.kids[1], pool));
    case ExprKind::Star:
      return pool.mk_star(normalize(*raw.kids[0], pool));
    case ExprKind::Op: {
      std::vector<ExprId> args;
      args.reserve(raw.kids.size());
      for (const auto& k : raw.kids) args.push_back(normalize(*k, pool));
      return pool.mk_op(raw.op, std::move(args));
    }
  }
  throw std::logic_error("normalize: bad node");
}

RawPtr to_raw(ExprId e, const ExprPool& pool) {
  const ExprNode n = pool.node(e);
  switch (n.kind) {
    case ExprKind::Null:
      return raw_null();
    case ExprKind::Eps:
      return raw_eps();
    case ExprKind::Sym:
      return raw_sym(n.sym);
    default: {
      std::vector<RawPtr> kids;
      kids.reserve(n.kids.size());
      for (ExprId k : n.kids) kids.push_back(to_raw(k, pool));
      auto r = std::make_shared<RawExpr>();
      r->kind = n.kind;
      r->op = n.op;
      r->kids = std::move(kids);
      return r;
    }
  }
}

std::vector<ExprId> summands(ExprId e, const ExprPool& pool) {
  const ExprNode& n = pool.node(e);
  if (n.kind == ExprKind::Null) return {};
  if (n.kind == ExprKind::Union) return n.kids;
  return {e};
}

bool well_formed(ExprId e, const ExprPool& pool) {
  const ExprNode& n = pool.node(e);
  switch (n.kind) {
    case ExprKind::Null:
    case ExprKind::Eps:
      return n.kids.empty();
    case ExprKind::Sym:
      return n.kids.empty();
    case ExprKind::Union: {
      if (n.kids.size() < 2) return false;
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        ExprKind kk = pool.kind(n.kids[i]);
        if (kk == ExprKind::Null || kk == ExprKind::Union) return false;
        if (i > 0 && pool.compare(n.kids[i - 1], n.kids[i]) >= 0) return false;
        if (!well_formed(n.kids[i], pool)) return false;
      }
      return true;
    }
    case ExprKind::Concat:
      return n.kids.size() == 2 && well_formed(n.kids[0], pool) &&
             well_formed(n.kids[1], pool);
    case ExprKind::Star:
      return n.kids.size() == 1 && well_formed(n.kids[0], pool);
    case ExprKind::Op: {
      if (n.op.empty()) return false;
      for (ExprId k : n.kids)
        if (!well_formed(k, pool)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace rederiv
