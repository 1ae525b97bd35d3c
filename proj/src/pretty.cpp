#include "rederiv/pretty.hpp"

namespace rederiv {

namespace {

// Binding strength, loosest first. An operand is parenthesized when its own
// level is below the context's.
enum Prec : int { kUnion = 0, kAnd = 1, kConcat = 2, kUnary = 3, kAtom = 4 };

std::string render(ExprId e, const ExprPool& pool, int ctx) {
  const ExprNode& n = pool.node(e);
  auto wrap = [&](std::string s, int level) {
    if (level < ctx) return "(" + std::move(s) + ")";
    return s;
  };
  switch (n.kind) {
    case ExprKind::Null:
      return "@0";
    case ExprKind::Eps:
      return "@e";
    case ExprKind::Sym:
      return std::string(1, n.sym);
    case ExprKind::Union: {
      std::string s;
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) s += '+';
        s += render(n.kids[i], pool, kAnd);
      }
      return wrap(std::move(s), kUnion);
    }
    case ExprKind::Concat:
      return wrap(render(n.kids[0], pool, kConcat) +
                      render(n.kids[1], pool, kUnary),
                  kConcat);
    case ExprKind::Star:
      return wrap(render(n.kids[0], pool, kUnary) + "*", kUnary);
    case ExprKind::Op: {
      if (n.op == "and")
        return wrap(render(n.kids[0], pool, kAnd) + "&" +
                        render(n.kids[1], pool, kConcat),
                    kAnd);
      if (n.op == "not")
        return wrap("!" + render(n.kids[0], pool, kAtom), kUnary);
      std::string s = n.op + "(";
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) s += ',';
        s += render(n.kids[i], pool, kUnion);
      }
      s += ')';
      return s;
    }
  }
  return "@0";
}

}  // namespace

std::string pretty(ExprId e, const ExprPool& pool) {
  return render(e, pool, kUnion);
}

std::string show_word(std::string_view w) {
  return w.empty() ? "@e" : std::string(w);
}

}  // namespace rederiv
