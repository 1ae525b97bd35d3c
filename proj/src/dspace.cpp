#include "rederiv/dspace.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rederiv/derivation.hpp"
#include "rederiv/pretty.hpp"

namespace rederiv {

namespace {

constexpr std::size_t kMaxSummands = 20;

/// Shared state for one batch of queries: the registry's prefix vocabulary
/// and a memo over (candidate, source) pairs.
struct DPlus {
  const OperatorRegistry& reg;
  ExprPool& pool;
  std::vector<std::string> prefixes;   // suffix-closed linear-rule prefixes
  std::vector<const OperatorDef*> linear_ops;
  std::map<std::pair<ExprId, ExprId>, bool> memo;

  DPlus(const OperatorRegistry& r, ExprPool& p) : reg(r), pool(p) {
    std::set<std::string> pref;
    for (const OperatorDef* d : reg.all()) {
      if (d->rule.kind != DerivativeRule::Kind::Linear) continue;
      linear_ops.push_back(d);
      for (const auto& [a, terms] : d->rule.linear)
        for (const LinearTerm& t : terms)
          for (std::size_t i = 0; i <= t.prefix.size(); ++i)
            pref.insert(t.prefix.substr(i));
    }
    pref.insert("");
    prefixes.assign(pref.begin(), pref.end());
  }

  bool prefix_ok(const std::string& v) const {
    return std::find(prefixes.begin(), prefixes.end(), v) != prefixes.end();
  }

  ExprId of_mask(const std::vector<ExprId>& parts, std::size_t mask) {
    std::vector<ExprId> chosen;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (mask & (std::size_t{1} << i)) chosen.push_back(parts[i]);
    return pool.mk_union(std::move(chosen));
  }

  bool contains(ExprId t, ExprId r) {
    auto key = std::make_pair(t, r);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    memo[key] = false;  // cycles (impossible here) and reentry default
    bool result = contains_impl(t, r);
    memo[key] = result;
    return result;
  }

  bool contains_impl(ExprId t, ExprId r) {
    const ExprNode& rn = pool.node(r);
    switch (rn.kind) {
      case ExprKind::Null:
      case ExprKind::Eps:
        return t == pool.null();
      case ExprKind::Sym:
        return t == pool.null() || t == pool.eps();
      case ExprKind::Union:
        return contains_union(t, rn.kids);
      case ExprKind::Concat:
        return contains_concat(t, rn.kids[0], rn.kids[1]);
      case ExprKind::Star:
        return contains_star(t, r, rn.kids[0]);
      case ExprKind::Op:
        return contains_op(t, rn.kids);
    }
    return false;
  }

  std::vector<ExprId> parts_checked(ExprId t) {
    std::vector<ExprId> parts = summands(t, pool);
    if (parts.size() > kMaxSummands)
      throw dspace_cap_error("membership: too many summands (" +
                             std::to_string(parts.size()) + ")");
    return parts;
  }

  // t must split as one element per branch, joined by sum; overlapping
  // assignment of summands is fine since sums are idempotent.
  bool contains_union(ExprId t, const std::vector<ExprId>& branches) {
    std::vector<ExprId> parts = parts_checked(t);
    std::size_t full = (std::size_t{1} << parts.size()) - 1;
    std::vector<std::vector<std::size_t>> choices;
    for (ExprId b : branches) {
      std::vector<std::size_t> ok;
      for (std::size_t m = 0; m <= full; ++m)
        if (contains(of_mask(parts, m), b)) ok.push_back(m);
      if (ok.empty()) return false;
      choices.push_back(std::move(ok));
    }
    std::set<std::size_t> covered{0};
    for (const auto& ok : choices) {
      std::set<std::size_t> next;
      for (std::size_t have : covered)
        for (std::size_t m : ok) next.insert(have | m);
      covered = std::move(next);
    }
    return covered.count(full) != 0;
  }

  // Summands not accounted for by the left part must each sit inside some
  // sum drawn from the right argument's space.
  bool rest_covered(const std::vector<ExprId>& parts, std::size_t rest,
                    ExprId r2) {
    if (rest == 0) return true;
    std::size_t coverable = 0;
    std::size_t full = (std::size_t{1} << parts.size()) - 1;
    for (std::size_t m = 0; m <= full; ++m)
      if ((m & ~coverable) && contains(of_mask(parts, m), r2)) coverable |= m;
    return (rest & ~coverable) == 0;
  }

  bool contains_concat(ExprId t, ExprId r1, ExprId r2) {
    std::vector<ExprId> parts = parts_checked(t);
    std::size_t full = parts.empty() ? 0 : (std::size_t{1} << parts.size()) - 1;

    auto try_left = [&](ExprId u) {
      std::size_t used = 0;
      for (ExprId s : summands(u, pool)) {
        auto it = std::find(parts.begin(), parts.end(), s);
        if (it == parts.end()) return false;
        used |= std::size_t{1} << (it - parts.begin());
      }
      return rest_covered(parts, full & ~used, r2);
    };

    if (contains(pool.null(), r1) && try_left(pool.null())) return true;
    if (r2 == pool.eps()) {
      for (std::size_t m = 0; m <= full; ++m) {
        ExprId u = of_mask(parts, m);
        if (contains(u, r1) && try_left(u)) return true;
      }
      return false;
    }
    if (contains(pool.eps(), r1) && try_left(r2)) return true;
    for (ExprId x : parts) {
      const ExprNode& xn = pool.node(x);
      if (xn.kind != ExprKind::Concat || xn.kids[1] != r2) continue;
      if (contains(xn.kids[0], r1) && try_left(x)) return true;
    }
    return false;
  }

  bool contains_star(ExprId t, ExprId r, ExprId body) {
    for (ExprId x : parts_checked(t)) {
      if (x == r) {
        if (!contains(pool.eps(), body)) return false;
        continue;
      }
      const ExprNode& xn = pool.node(x);
      if (xn.kind != ExprKind::Concat || xn.kids[1] != r ||
          !contains(xn.kids[0], body))
        return false;
    }
    return true;
  }

  bool arg_ok(ExprId arg, const std::vector<ExprId>& roots) {
    for (ExprId r : roots)
      if (arg == r || contains(arg, r)) return true;
    return false;
  }

  // Every summand must be a registry prefix-word in front of some
  // linear-rule operator whose arguments come from the arguments'
  // derivative spaces.
  bool contains_op(ExprId t, const std::vector<ExprId>& roots) {
    for (ExprId x : parts_checked(t)) {
      std::string v;
      ExprId cur = x;
      for (;;) {
        const ExprNode& cn = pool.node(cur);
        if (cn.kind == ExprKind::Concat &&
            pool.kind(cn.kids[0]) == ExprKind::Sym) {
          v += pool.node(cn.kids[0]).sym;
          cur = cn.kids[1];
          continue;
        }
        break;
      }
      const ExprNode& cn = pool.node(cur);
      if (cn.kind != ExprKind::Op) return false;
      const OperatorDef& def = reg.at(cn.op);
      if (def.rule.kind != DerivativeRule::Kind::Linear) return false;
      bool suffix = false;
      for (const auto& p : prefixes)
        if (p.size() >= v.size() && p.compare(p.size() - v.size(), v.size(), v) == 0) {
          suffix = true;
          break;
        }
      if (!suffix) return false;
      for (ExprId arg : cn.kids)
        if (!arg_ok(arg, roots)) return false;
    }
    return true;
  }

  // --- enumeration ---

  std::vector<ExprId> checked(std::set<ExprId> s, std::size_t cap) {
    if (s.size() > cap)
      throw dspace_cap_error("enumeration exceeds cap (" + std::to_string(cap) +
                             ")");
    return {s.begin(), s.end()};
  }

  std::vector<ExprId> big_sum(const std::vector<ExprId>& base, std::size_t cap) {
    std::set<ExprId> out{pool.null()};
    for (ExprId b : base) {
      std::set<ExprId> next = out;
      for (ExprId x : out) next.insert(pool.smart_union(x, b));
      if (next.size() > cap)
        throw dspace_cap_error("enumeration exceeds cap (" +
                               std::to_string(cap) + ")");
      out = std::move(next);
    }
    return {out.begin(), out.end()};
  }

  std::vector<ExprId> enumerate(ExprId r, std::size_t cap) {
    const ExprNode& rn = pool.node(r);
    switch (rn.kind) {
      case ExprKind::Null:
      case ExprKind::Eps:
        return {pool.null()};
      case ExprKind::Sym:
        return {pool.null(), pool.eps()};
      case ExprKind::Union: {
        std::vector<ExprId> acc = enumerate(rn.kids[0], cap);
        for (std::size_t i = 1; i < rn.kids.size(); ++i) {
          std::vector<ExprId> next = enumerate(rn.kids[i], cap);
          std::set<ExprId> joined;
          for (ExprId x : acc)
            for (ExprId y : next) joined.insert(pool.smart_union(x, y));
          acc = checked(std::move(joined), cap);
        }
        return acc;
      }
      case ExprKind::Concat: {
        std::vector<ExprId> left = enumerate(rn.kids[0], cap);
        std::vector<ExprId> right = big_sum(enumerate(rn.kids[1], cap), cap);
        std::set<ExprId> out;
        for (ExprId x : left)
          for (ExprId w : right)
            out.insert(pool.smart_union(pool.smart_concat(x, rn.kids[1]), w));
        return checked(std::move(out), cap);
      }
      case ExprKind::Star: {
        std::vector<ExprId> body = enumerate(rn.kids[0], cap);
        std::vector<ExprId> base;
        base.reserve(body.size());
        for (ExprId x : body) base.push_back(pool.smart_concat(x, r));
        return big_sum(base, cap);
      }
      case ExprKind::Op: {
        std::set<ExprId> pool_args;
        for (ExprId arg : rn.kids) {
          pool_args.insert(arg);
          for (ExprId d : enumerate(arg, cap)) pool_args.insert(d);
        }
        std::vector<ExprId> args(pool_args.begin(), pool_args.end());
        std::vector<ExprId> base;
        for (const OperatorDef* g : linear_ops) {
          std::vector<std::size_t> pick(static_cast<std::size_t>(g->arity), 0);
          for (;;) {
            std::vector<ExprId> chosen;
            for (std::size_t p : pick) chosen.push_back(args[p]);
            ExprId app = pool.mk_op(g->name, std::move(chosen));
            for (const auto& v : prefixes)
              base.push_back(pool.prepend_word(v, app));
            if (base.size() > cap * 8)
              throw dspace_cap_error("enumeration exceeds cap (" +
                                     std::to_string(cap) + ")");
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == args.size()) pick[i++] = 0;
            if (i == pick.size()) break;
          }
        }
        std::sort(base.begin(), base.end());
        base.erase(std::unique(base.begin(), base.end()), base.end());
        return big_sum(base, cap);
      }
    }
    return {};
  }
};

/// The space is defined only over linear-left-derivable operators; reject a
/// source expression outside that fragment up front.
void require_linear(ExprId r, const OperatorRegistry& reg,
                    const ExprPool& pool) {
  const ExprNode& n = pool.node(r);
  if (n.kind == ExprKind::Op) {
    const OperatorDef* d = reg.find(n.op);
    if (!d || d->rule.kind != DerivativeRule::Kind::Linear)
      throw capability_error(
          n.op, "derivative space is not defined for '" + n.op +
                    "' (no linear derivative rule)");
  }
  for (ExprId k : n.kids) require_linear(k, reg, pool);
}

}  // namespace

bool dplus_contains(ExprId t, ExprId r, const OperatorRegistry& reg,
                    ExprPool& pool) {
  require_linear(r, reg, pool);
  DPlus d(reg, pool);
  return d.contains(t, r);
}

std::vector<ExprId> dplus_enumerate(ExprId r, const OperatorRegistry& reg,
                                    ExprPool& pool, std::size_t cap) {
  require_linear(r, reg, pool);
  DPlus d(reg, pool);
  std::vector<ExprId> out = d.enumerate(r, cap);
  std::sort(out.begin(), out.end(),
            [&pool](ExprId a, ExprId b) { return pool.compare(a, b) < 0; });
  return out;
}

bool ClosureReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ClosureCheck& c) { return c.pass; });
}

std::string ClosureReport::text() const {
  std::string out;
  for (const ClosureCheck& c : checks) {
    out += c.pass ? "PASS " : "FAIL ";
    out += c.expr;
    out += ' ';
    out += c.symbol;
    out += '\n';
  }
  return out;
}

ClosureReport check_closure(ExprId r, const OperatorRegistry& reg,
                            ExprPool& pool,
                            const std::vector<std::string>& sample_words) {
  require_linear(r, reg, pool);
  DPlus d(reg, pool);
  ClosureReport report;
  std::set<std::pair<ExprId, char>> done;
  auto check_one = [&](ExprId from, char a) {
    if (!done.emplace(from, a).second) return;
    ExprId t = derive(a, from, reg, pool);
    report.checks.push_back({d.contains(t, r), pretty(from, pool), a});
  };
  for (char a : reg.alphabet()) check_one(r, a);
  for (const std::string& w : sample_words) {
    if (w.empty()) continue;
    ExprId from = derive_word(std::string_view(w).substr(0, w.size() - 1), r,
                              reg, pool);
    check_one(from, w.back());
  }
  return report;
}

}  // namespace rederiv
