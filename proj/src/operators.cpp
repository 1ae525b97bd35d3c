#include "rederiv/operators.hpp"

#include <algorithm>

namespace rederiv {

EpsCapability EpsCapability::boolean(std::vector<bool> t) {
  EpsCapability c;
  c.kind = Kind::BooleanFn;
  c.table = std::move(t);
  return c;
}

EpsCapability EpsCapability::hook_fn(HookKind h, long threshold) {
  EpsCapability c;
  c.kind = Kind::Hook;
  c.hook = h;
  c.threshold = threshold;
  return c;
}

EpsCapability EpsCapability::none() { return EpsCapability{}; }

bool EpsCapability::is_identity() const {
  return kind == Kind::BooleanFn && table.size() == 2 && !table[0] && table[1];
}

TemplatePtr TemplateExpr::var(std::string word, int arg) {
  auto t = std::make_shared<TemplateExpr>();
  t->kind = Kind::Var;
  t->var_word = std::move(word);
  t->var_arg = arg;
  return t;
}

TemplatePtr TemplateExpr::symbol(char c) {
  auto t = std::make_shared<TemplateExpr>();
  t->kind = Kind::Sym;
  t->sym = c;
  return t;
}

TemplatePtr TemplateExpr::concat(TemplatePtr l, TemplatePtr r) {
  auto t = std::make_shared<TemplateExpr>();
  t->kind = Kind::Concat;
  t->kids = {std::move(l), std::move(r)};
  return t;
}

TemplatePtr TemplateExpr::apply(std::string op, std::vector<TemplatePtr> args) {
  auto t = std::make_shared<TemplateExpr>();
  t->kind = Kind::Op;
  t->op = std::move(op);
  t->kids = std::move(args);
  return t;
}

const std::vector<LinearTerm>& DerivativeRule::terms(char a) const {
  auto it = linear.find(a);
  if (it == linear.end())
    throw std::out_of_range("derivative rule: symbol outside alphabet");
  return it->second;
}

const TemplatePtr& DerivativeRule::tmpl(char a) const {
  auto it = general.find(a);
  if (it == general.end())
    throw std::out_of_range("derivative rule: symbol outside alphabet");
  return it->second;
}

namespace {

const EpsCapability kIdentityEps = EpsCapability::boolean({false, true});
const EpsCapability kConstTrue1 = EpsCapability::boolean({true, true});
const EpsCapability kConstFalse1 = EpsCapability::boolean({false, false});
const EpsCapability kAnd2 = EpsCapability::boolean({false, false, false, true});
const EpsCapability kNot1 = EpsCapability::boolean({true, false});

LinearTerm term(std::string prefix, std::string target,
                std::vector<LinearArg> args) {
  return LinearTerm{std::move(prefix), std::move(target), std::move(args)};
}

/// Words over `alphabet` of length up to `max_len`, ordered by length then
/// by symbol order.
std::vector<std::string> words_up_to(const std::vector<char>& alphabet,
                                     std::size_t max_len) {
  std::vector<std::string> out{""};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      for (char c : alphabet) out.push_back(out[i] + c);
    layer_begin = layer_end;
  }
  return out;
}

std::vector<std::string> words_of_len(const std::vector<char>& alphabet,
                                      std::size_t len) {
  std::vector<std::string> out;
  for (const auto& w : words_up_to(alphabet, len))
    if (w.size() == len) out.push_back(w);
  return out;
}

std::string bracket1(const std::string& base, long k) {
  return base + "[" + std::to_string(k) + "]";
}

std::string bracket2(const std::string& base, long i, long k) {
  return base + "[" + std::to_string(i) + "," + std::to_string(k) + "]";
}

}  // namespace

OperatorRegistry::OperatorRegistry(std::vector<char> alphabet,
                                   std::map<std::string, HomTable> homs)
    : alphabet_(std::move(alphabet)), homs_(std::move(homs)) {
  if (alphabet_.empty())
    throw operator_error("", "registry: empty alphabet");
  register_fixed();
}

OperatorDef& OperatorRegistry::add(OperatorDef def) {
  auto p = std::make_unique<OperatorDef>(std::move(def));
  OperatorDef& ref = *p;
  ops_.emplace(ref.name, std::move(p));
  return ref;
}

void OperatorRegistry::register_fixed() {
  auto linear_rule = [&](auto make_terms) {
    DerivativeRule r;
    r.kind = DerivativeRule::Kind::Linear;
    for (char a : alphabet_) r.linear[a] = make_terms(a);
    return r;
  };

  {
    OperatorDef d{"and", "and", 2, {}, {}, kAnd2, {}};
    d.rule = linear_rule([&](char a) {
      std::string s(1, a);
      return std::vector<LinearTerm>{term("", "and", {{s, 0}, {s, 1}})};
    });
    add(std::move(d));
  }
  {
    OperatorDef d{"not", "not", 1, {}, {}, kNot1, {}};
    d.rule = linear_rule([&](char a) {
      return std::vector<LinearTerm>{term("", "not", {{std::string(1, a), 0}})};
    });
    add(std::move(d));
  }
  {
    OperatorDef d{"shuffle", "shuffle", 2, {}, {}, kAnd2, {}};
    d.rule = linear_rule([&](char a) {
      std::string s(1, a);
      return std::vector<LinearTerm>{term("", "shuffle", {{s, 0}, {"", 1}}),
                                     term("", "shuffle", {{"", 0}, {s, 1}})};
    });
    add(std::move(d));
  }
  {
    // One interleaved round is peeled off: a copy contributes the symbol,
    // the closure of the original language shuffles around the rest.
    OperatorDef d{"shclose", "shclose", 1, {}, {}, kConstTrue1, {}};
    d.rule.kind = DerivativeRule::Kind::General;
    for (char a : alphabet_)
      d.rule.general[a] = TemplateExpr::apply(
          "shuffle", {TemplateExpr::var(std::string(1, a), 0),
                      TemplateExpr::apply("shclose", {TemplateExpr::var("", 0)})});
    add(std::move(d));
  }
  {
    // Quotienting from the left extends the quotient word; the first
    // argument grows under derivation, so the rule is not linear.
    OperatorDef d{"lquot", "lquot", 2, {}, {},
                  EpsCapability::hook_fn(EpsCapability::HookKind::IntersectionEmptiness),
                  {}};
    d.rule.kind = DerivativeRule::Kind::General;
    for (char a : alphabet_)
      d.rule.general[a] = TemplateExpr::apply(
          "lquot", {TemplateExpr::concat(TemplateExpr::var("", 0),
                                         TemplateExpr::symbol(a)),
                    TemplateExpr::var("", 1)});
    add(std::move(d));
  }
  {
    OperatorDef d{"rquot", "rquot", 2, {}, {},
                  EpsCapability::hook_fn(EpsCapability::HookKind::IntersectionEmptiness),
                  {}};
    d.rule = linear_rule([&](char a) {
      return std::vector<LinearTerm>{
          term("", "rquot", {{std::string(1, a), 0}, {"", 1}})};
    });
    add(std::move(d));
  }
  {
    OperatorDef d{"prefixes", "prefixes", 1, {}, {},
                  EpsCapability::hook_fn(EpsCapability::HookKind::Emptiness), {}};
    d.rule = linear_rule([&](char a) {
      return std::vector<LinearTerm>{
          term("", "prefixes", {{std::string(1, a), 0}})};
    });
    add(std::move(d));
  }
  {
    OperatorDef d{"id", "id", 1, {}, {}, kIdentityEps, {}};
    d.rule = linear_rule([&](char a) {
      return std::vector<LinearTerm>{term("", "id", {{std::string(1, a), 0}})};
    });
    add(std::move(d));
  }
  {
    OperatorDef d{"tilde", "tilde", 1, {}, {}, kConstTrue1, {}};
    d.rule = linear_rule([&](char a) {
      return std::vector<LinearTerm>{term("", "id", {{std::string(1, a), 0}})};
    });
    add(std::move(d));
  }
  {
    OperatorDef d{"bar", "bar", 1, {}, {}, kConstFalse1, {}};
    d.rule = linear_rule([&](char a) {
      return std::vector<LinearTerm>{term("", "id", {{std::string(1, a), 0}})};
    });
    add(std::move(d));
  }
  {
    // A superword either embeds the whole original word past the read
    // symbol, or embeds it with the read symbol consumed.
    OperatorDef d{"upclose", "upclose", 1, {}, {}, kIdentityEps, {}};
    d.rule = linear_rule([&](char a) {
      return std::vector<LinearTerm>{term("", "upclose", {{"", 0}}),
                                     term("", "upclose", {{std::string(1, a), 0}})};
    });
    add(std::move(d));
  }
}

bool OperatorRegistry::is_known_base(const std::string& base) const {
  static const char* kBases[] = {"and",  "not",   "shuffle", "shclose", "hinv",
                                 "hom",  "xk",    "lquot",   "rquot",   "prefixes",
                                 "suffixes", "hamming", "lev", "tilde", "bar",
                                 "upclose", "id"};
  return std::find(std::begin(kBases), std::end(kBases), base) != std::end(kBases);
}

const OperatorDef* OperatorRegistry::find(const std::string& name) const {
  auto it = ops_.find(name);
  return it == ops_.end() ? nullptr : it->second.get();
}

const OperatorDef& OperatorRegistry::at(const std::string& name) const {
  const OperatorDef* d = find(name);
  if (!d) throw operator_error(name, "unknown operator '" + name + "'");
  return *d;
}

const OperatorDef& OperatorRegistry::instantiate_hamming(long k) {
  std::string name = bracket1("hamming", k);
  if (const OperatorDef* d = find(name)) return *d;
  for (long j = 0; j <= k; ++j) {
    std::string nj = bracket1("hamming", j);
    if (find(nj)) continue;
    OperatorDef d{nj, "hamming", 1, {j}, {}, kIdentityEps, {}};
    d.rule.kind = DerivativeRule::Kind::Linear;
    for (char a : alphabet_) {
      std::vector<LinearTerm> ts{term("", nj, {{std::string(1, a), 0}})};
      if (j > 0)
        for (char x : alphabet_)
          if (x != a)
            ts.push_back(term("", bracket1("hamming", j - 1), {{std::string(1, x), 0}}));
      d.rule.linear[a] = std::move(ts);
    }
    add(std::move(d));
  }
  return at(name);
}

const OperatorDef& OperatorRegistry::instantiate_lev(long k) {
  std::string name = bracket1("lev", k);
  if (const OperatorDef* d = find(name)) return *d;
  for (long j = 0; j <= k; ++j) {
    std::string nj = bracket1("lev", j);
    if (find(nj)) continue;
    OperatorDef d{nj,
                  "lev",
                  1,
                  {j},
                  {},
                  EpsCapability::hook_fn(EpsCapability::HookKind::ShortestWordBound, j + 1),
                  {}};
    d.rule.kind = DerivativeRule::Kind::Linear;
    for (char a : alphabet_) {
      // Peel a deleted prefix w, then match, substitute toward, or insert
      // the read symbol. Radius -1 terms denote the empty language and are
      // left out.
      std::vector<LinearTerm> ts;
      for (const auto& w : words_up_to(alphabet_, static_cast<std::size_t>(j))) {
        long rem = j - static_cast<long>(w.size());
        ts.push_back(term("", bracket1("lev", rem), {{w + a, 0}}));
        if (rem - 1 >= 0) {
          for (char x : alphabet_)
            if (x != a)
              ts.push_back(term("", bracket1("lev", rem - 1), {{w + x, 0}}));
          ts.push_back(term("", bracket1("lev", rem - 1), {{w, 0}}));
        }
      }
      d.rule.linear[a] = std::move(ts);
    }
    add(std::move(d));
  }
  return at(name);
}

const OperatorDef& OperatorRegistry::instantiate_xk(long i, long k) {
  std::string name = bracket2("xk", i, k);
  if (const OperatorDef* d = find(name)) return *d;
  if (i != k) instantiate_xk(k, k);
  OperatorDef d{name,
                "xk",
                1,
                {i, k},
                {},
                EpsCapability::hook_fn(EpsCapability::HookKind::ShortestWordBound, i),
                {}};
  d.rule.kind = DerivativeRule::Kind::Linear;
  std::string kk = bracket2("xk", k, k);
  for (char a : alphabet_) {
    std::vector<LinearTerm> ts;
    for (const auto& w : words_of_len(alphabet_, static_cast<std::size_t>(i - 1)))
      ts.push_back(term("", kk, {{w + a, 0}}));
    d.rule.linear[a] = std::move(ts);
  }
  add(std::move(d));
  return at(name);
}

const OperatorDef& OperatorRegistry::instantiate_hom(bool inverse,
                                                     const std::string& table) {
  std::string base = inverse ? "hinv" : "hom";
  std::string name = base + "[" + table + "]";
  if (const OperatorDef* d = find(name)) return *d;
  auto it = homs_.find(table);
  if (it == homs_.end())
    throw operator_error(name, base + ": unknown table '" + table + "'");
  const HomTable& h = it->second;
  if (!inverse && !h.non_erasing(alphabet_))
    throw operator_error(name, "hom: table '" + table +
                                   "' erases a symbol; only non-erasing "
                                   "substitutions are supported");
  OperatorDef d{name, base, 1, {}, h, kIdentityEps, {}};
  d.rule.kind = DerivativeRule::Kind::Linear;
  for (char a : alphabet_) {
    std::vector<LinearTerm> ts;
    if (inverse) {
      ts.push_back(term("", name, {{h.image(a), 0}}));
    } else {
      for (char b : alphabet_) {
        std::string img = h.image(b);
        if (!img.empty() && img[0] == a)
          ts.push_back(term(img.substr(1), name, {{std::string(1, b), 0}}));
      }
    }
    d.rule.linear[a] = std::move(ts);
  }
  add(std::move(d));
  return at(name);
}

const OperatorDef& OperatorRegistry::resolve(const std::string& base,
                                             const std::vector<OpParam>& params) {
  auto want_ints = [&](std::size_t n) {
    if (params.size() != n)
      throw operator_error(base, base + ": expected " + std::to_string(n) +
                                     " parameter(s)");
    for (const auto& p : params)
      if (!p.is_int)
        throw operator_error(base, base + ": expected numeric parameter");
  };
  if (base == "hamming" || base == "lev") {
    want_ints(1);
    if (params[0].i < 0)
      throw operator_error(base, base + ": radius must be >= 0");
    return base == "hamming" ? instantiate_hamming(params[0].i)
                             : instantiate_lev(params[0].i);
  }
  if (base == "xk") {
    want_ints(2);
    long i = params[0].i, k = params[1].i;
    if (k < 1 || i < 1 || i > k)
      throw operator_error(base, "xk: parameters must satisfy 1 <= i <= k");
    return instantiate_xk(i, k);
  }
  if (base == "hom" || base == "hinv") {
    if (params.size() != 1 || params[0].is_int)
      throw operator_error(base, base + ": expected one table-name parameter");
    return instantiate_hom(base == "hinv", params[0].s);
  }
  if (!params.empty())
    throw operator_error(base, base + ": takes no parameters");
  const OperatorDef* d = find(base);
  if (!d) throw operator_error(base, "unknown operator '" + base + "'");
  return *d;
}

std::vector<const OperatorDef*> OperatorRegistry::all() const {
  std::vector<const OperatorDef*> out;
  out.reserve(ops_.size());
  for (const auto& [name, d] : ops_) out.push_back(d.get());
  return out;
}

OperatorRegistry build_registry(const DefinitionsFile& defs) {
  return OperatorRegistry(defs.alphabet, defs.homs);
}

EpsQuery eps_capability(const OperatorDef& op, const std::vector<bool>& arg_flags) {
  EpsQuery q;
  switch (op.eps.kind) {
    case EpsCapability::Kind::BooleanFn: {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < arg_flags.size(); ++i)
        if (arg_flags[i]) idx |= std::size_t{1} << i;
      q.kind = EpsQuery::Kind::Value;
      q.value = op.eps.table.at(idx);
      return q;
    }
    case EpsCapability::Kind::Hook:
      q.kind = EpsQuery::Kind::Hook;
      q.hook = op.eps.hook;
      q.threshold = op.eps.threshold;
      return q;
    case EpsCapability::Kind::None:
      q.kind = EpsQuery::Kind::None;
      return q;
  }
  return q;
}

const DerivativeRule& derivative_rule(const OperatorDef& op) { return op.rule; }

}  // namespace rederiv
