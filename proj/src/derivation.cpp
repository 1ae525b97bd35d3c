#include "rederiv/derivation.hpp"

#include <cassert>

#include "rederiv/automata.hpp"

namespace rederiv {

const Dfa& HookCache::dfa_for(ExprId e, const OperatorRegistry& reg,
                              ExprPool& pool) {
  auto it = cache_.find(e);
  if (it == cache_.end()) {
    auto d = std::make_shared<const Dfa>(compile(e, reg, pool));
    it = cache_.emplace(e, std::move(d)).first;
  }
  return *it->second;
}

bool hook_free(ExprId e, const OperatorRegistry& reg, const ExprPool& pool) {
  const ExprNode& n = pool.node(e);
  if (n.kind == ExprKind::Op &&
      reg.at(n.op).eps.kind == EpsCapability::Kind::Hook)
    return false;
  for (ExprId k : n.kids)
    if (!hook_free(k, reg, pool)) return false;
  return true;
}

bool is_compile_eligible(ExprId e, const OperatorRegistry& reg,
                         const ExprPool& pool, std::string* offending) {
  const ExprNode& n = pool.node(e);
  if (n.kind == ExprKind::Op) {
    const OperatorDef& def = reg.at(n.op);
    if (def.rule.kind != DerivativeRule::Kind::Linear ||
        def.eps.kind == EpsCapability::Kind::None) {
      if (offending) *offending = n.op;
      return false;
    }
    if (def.eps.kind == EpsCapability::Kind::Hook) {
      for (ExprId k : n.kids)
        if (!hook_free(k, reg, pool)) {
          if (offending) *offending = n.op;
          return false;
        }
    }
  }
  for (ExprId k : n.kids)
    if (!is_compile_eligible(k, reg, pool, offending)) return false;
  return true;
}

namespace {

Nullability eval_hook(const ExprNode& n, const OperatorDef& def,
                      const OperatorRegistry& reg, ExprPool& pool,
                      HookCache& cache) {
  for (ExprId k : n.kids)
    if (!hook_free(k, reg, pool) || !is_compile_eligible(k, reg, pool))
      return Nullability::undecided(n.op);
  switch (def.eps.hook) {
    case EpsCapability::HookKind::Emptiness:
      return Nullability::of(dfa_nonempty(cache.dfa_for(n.kids[0], reg, pool)));
    case EpsCapability::HookKind::IntersectionEmptiness: {
      const Dfa& a = cache.dfa_for(n.kids[0], reg, pool);
      const Dfa& b = cache.dfa_for(n.kids[1], reg, pool);
      return Nullability::of(dfa_intersection_nonempty(a, b));
    }
    case EpsCapability::HookKind::ShortestWordBound: {
      auto len = dfa_shortest_accepted(cache.dfa_for(n.kids[0], reg, pool));
      return Nullability::of(len.has_value() &&
                             static_cast<long>(*len) < def.eps.threshold);
    }
  }
  return Nullability::undecided(n.op);
}

Nullability nullable_impl(ExprId e, const OperatorRegistry& reg, ExprPool& pool,
                          HookCache& cache) {
  const ExprNode n = pool.node(e);
  switch (n.kind) {
    case ExprKind::Null:
    case ExprKind::Sym:
      return Nullability::of(false);
    case ExprKind::Eps:
    case ExprKind::Star:
      return Nullability::of(true);
    case ExprKind::Union: {
      Nullability pending = Nullability::of(false);
      for (ExprId k : n.kids) {
        Nullability r = nullable_impl(k, reg, pool, cache);
        if (r.yes()) return r;
        if (!r.decided()) pending = r;
      }
      return pending;
    }
    case ExprKind::Concat: {
      Nullability pending = Nullability::of(true);
      for (ExprId k : n.kids) {
        Nullability r = nullable_impl(k, reg, pool, cache);
        if (r.decided() && !r.yes()) return r;
        if (!r.decided()) pending = r;
      }
      return pending;
    }
    case ExprKind::Op: {
      const OperatorDef& def = reg.at(n.op);
      switch (def.eps.kind) {
        case EpsCapability::Kind::BooleanFn: {
          // Evaluate the table over every completion of undecided argument
          // flags; report a value only when they all agree.
          std::vector<Nullability> args;
          args.reserve(n.kids.size());
          for (ExprId k : n.kids)
            args.push_back(nullable_impl(k, reg, pool, cache));
          std::vector<std::size_t> open;
          std::size_t base = 0;
          for (std::size_t i = 0; i < args.size(); ++i) {
            if (!args[i].decided())
              open.push_back(i);
            else if (args[i].yes())
              base |= std::size_t{1} << i;
          }
          bool first = def.eps.table.at(base);
          for (std::size_t m = 1; m < (std::size_t{1} << open.size()); ++m) {
            std::size_t idx = base;
            for (std::size_t j = 0; j < open.size(); ++j)
              if (m & (std::size_t{1} << j)) idx |= std::size_t{1} << open[j];
            if (def.eps.table.at(idx) != first)
              return Nullability::undecided(args[open[0]].blocking_op);
          }
          return Nullability::of(first);
        }
        case EpsCapability::Kind::Hook:
          return eval_hook(n, def, reg, pool, cache);
        case EpsCapability::Kind::None:
          return Nullability::undecided(n.op);
      }
    }
  }
  return Nullability::undecided("");
}

struct Deriver {
  const OperatorRegistry& reg;
  ExprPool& pool;
  HookCache& cache;

  ExprId instantiate(const TemplateExpr& t, const std::vector<ExprId>& args,
                     char a) {
    switch (t.kind) {
      case TemplateExpr::Kind::Null:
        return pool.null();
      case TemplateExpr::Kind::Eps:
        return pool.eps();
      case TemplateExpr::Kind::Sym:
        return pool.sym(t.sym);
      case TemplateExpr::Kind::Union: {
        ExprId u = pool.null();
        for (const auto& k : t.kids)
          u = pool.smart_union(u, instantiate(*k, args, a));
        return u;
      }
      case TemplateExpr::Kind::Concat:
        return pool.smart_concat(instantiate(*t.kids[0], args, a),
                                 instantiate(*t.kids[1], args, a));
      case TemplateExpr::Kind::Star:
        return pool.mk_star(instantiate(*t.kids[0], args, a));
      case TemplateExpr::Kind::Op: {
        std::vector<ExprId> kids;
        kids.reserve(t.kids.size());
        for (const auto& k : t.kids) kids.push_back(instantiate(*k, args, a));
        return pool.mk_op(t.op, std::move(kids));
      }
      case TemplateExpr::Kind::Var:
        return word(t.var_word, args.at(static_cast<std::size_t>(t.var_arg)));
    }
    return pool.null();
  }

  ExprId word(std::string_view w, ExprId e) {
    for (char c : w) e = one(c, e);
    return e;
  }

  ExprId one(char a, ExprId e) {
    const ExprNode n = pool.node(e);
    switch (n.kind) {
      case ExprKind::Null:
      case ExprKind::Eps:
        return pool.null();
      case ExprKind::Sym:
        return n.sym == a ? pool.eps() : pool.null();
      case ExprKind::Union: {
        ExprId u = pool.null();
        for (ExprId k : n.kids) u = pool.smart_union(u, one(a, k));
        return u;
      }
      case ExprKind::Concat: {
        ExprId left = pool.smart_concat(one(a, n.kids[0]), n.kids[1]);
        Nullability nl = nullable_impl(n.kids[0], reg, pool, cache);
        if (!nl.decided())
          throw capability_error(
              nl.blocking_op,
              "cannot derive: empty-word test for '" + nl.blocking_op +
                  "' is undecided inside a concatenation");
        if (!nl.yes()) return left;
        return pool.smart_union(left, one(a, n.kids[1]));
      }
      case ExprKind::Star:
        return pool.smart_concat(one(a, n.kids[0]), e);
      case ExprKind::Op: {
        const OperatorDef& def = reg.at(n.op);
        switch (def.rule.kind) {
          case DerivativeRule::Kind::Linear: {
            ExprId sum = pool.null();
            for (const LinearTerm& t : def.rule.terms(a)) {
              std::vector<ExprId> args;
              args.reserve(t.args.size());
              for (const LinearArg& la : t.args)
                args.push_back(word(la.word, n.kids.at(static_cast<std::size_t>(la.arg))));
              ExprId app = pool.mk_op(t.target, std::move(args));
              sum = pool.smart_union(sum, pool.prepend_word(t.prefix, app));
            }
            return sum;
          }
          case DerivativeRule::Kind::General:
            return instantiate(*def.rule.tmpl(a), n.kids, a);
          case DerivativeRule::Kind::None:
            throw capability_error(n.op, "operator '" + n.op +
                                             "' has no derivative rule");
        }
      }
    }
    return pool.null();
  }
};

}  // namespace

Nullability nullable(ExprId e, const OperatorRegistry& reg, ExprPool& pool,
                     HookCache* cache) {
  HookCache local;
  return nullable_impl(e, reg, pool, cache ? *cache : local);
}

ExprId derive(char a, ExprId e, const OperatorRegistry& reg, ExprPool& pool,
              HookCache* cache) {
  HookCache local;
  Deriver d{reg, pool, cache ? *cache : local};
  return d.one(a, e);
}

ExprId derive_word(std::string_view w, ExprId e, const OperatorRegistry& reg,
                   ExprPool& pool, HookCache* cache) {
  HookCache local;
  Deriver d{reg, pool, cache ? *cache : local};
  return d.word(w, e);
}

bool matches(ExprId e, std::string_view w, const OperatorRegistry& reg,
             ExprPool& pool, HookCache* cache) {
  HookCache local;
  HookCache& c = cache ? *cache : local;
  ExprId d = derive_word(w, e, reg, pool, &c);
  Nullability r = nullable(d, reg, pool, &c);
  if (!r.decided())
    throw capability_error(r.blocking_op,
                           "membership undecided: empty-word test for '" +
                               r.blocking_op + "' is unavailable");
  return r.yes();
}

}  // namespace rederiv
