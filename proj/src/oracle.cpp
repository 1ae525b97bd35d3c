#include "rederiv/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace rederiv {
namespace oracle {

namespace {

using Words = std::set<std::string>;

struct Eval {
  const OperatorRegistry& reg;
  std::size_t witness_cap;

  Words sigma_upto(std::size_t n) const {
    Words out{""};
    std::vector<std::string> layer{""};
    for (std::size_t len = 1; len <= n; ++len) {
      std::vector<std::string> next;
      for (const auto& w : layer)
        for (char c : reg.alphabet()) {
          next.push_back(w + c);
          out.insert(w + c);
        }
      layer = std::move(next);
    }
    return out;
  }

  static Words concat_sets(const Words& a, const Words& b, std::size_t n) {
    Words out;
    for (const auto& u : a)
      for (const auto& v : b)
        if (u.size() + v.size() <= n) out.insert(u + v);
    return out;
  }

  static void interleavings(const std::string& u, const std::string& v,
                            std::string& acc, Words& out) {
    if (u.empty() && v.empty()) {
      out.insert(acc);
      return;
    }
    if (!u.empty()) {
      acc += u[0];
      interleavings(u.substr(1), v, acc, out);
      acc.pop_back();
    }
    if (!v.empty()) {
      acc += v[0];
      interleavings(u, v.substr(1), acc, out);
      acc.pop_back();
    }
  }

  static Words shuffle_sets(const Words& a, const Words& b, std::size_t n) {
    Words out;
    std::string acc;
    for (const auto& u : a)
      for (const auto& v : b)
        if (u.size() + v.size() <= n) interleavings(u, v, acc, out);
    return out;
  }

  static bool is_subsequence(const std::string& x, const std::string& y) {
    std::size_t i = 0;
    for (char c : y) {
      if (i < x.size() && x[i] == c) ++i;
    }
    return i == x.size();
  }

  static std::size_t lev_distance(const std::string& u, const std::string& v) {
    std::vector<std::size_t> row(v.size() + 1);
    for (std::size_t j = 0; j <= v.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= u.size(); ++i) {
      std::size_t diag = row[0];
      row[0] = i;
      for (std::size_t j = 1; j <= v.size(); ++j) {
        std::size_t up = row[j];
        row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                           diag + (u[i - 1] == v[j - 1] ? 0 : 1)});
        diag = up;
      }
    }
    return row[v.size()];
  }

  static std::string extract(const std::string& w, long i, long k) {
    std::string out;
    for (std::size_t p = static_cast<std::size_t>(i); p <= w.size();
         p += static_cast<std::size_t>(k))
      out += w[p - 1];
    return out;
  }

  Slice eval(const RawExpr& e, std::size_t n) const {
    switch (e.kind) {
      case ExprKind::Null:
        return {n, {}, false};
      case ExprKind::Eps:
        return {n, {""}, false};
      case ExprKind::Sym: {
        Slice s{n, {}, false};
        if (n >= 1) s.words.insert(std::string(1, e.sym));
        return s;
      }
      case ExprKind::Union: {
        Slice s{n, {}, false};
        for (const auto& k : e.kids) {
          Slice ks = eval(*k, n);
          s.words.insert(ks.words.begin(), ks.words.end());
          s.possibly_incomplete |= ks.possibly_incomplete;
        }
        return s;
      }
      case ExprKind::Concat: {
        Slice l = eval(*e.kids[0], n);
        Slice r = eval(*e.kids[1], n);
        return {n, concat_sets(l.words, r.words, n),
                l.possibly_incomplete || r.possibly_incomplete};
      }
      case ExprKind::Star: {
        Slice b = eval(*e.kids[0], n);
        Words s{""};
        for (;;) {
          Words next = concat_sets(b.words, s, n);
          next.insert("");
          if (next == s) break;
          s = std::move(next);
        }
        return {n, std::move(s), b.possibly_incomplete};
      }
      case ExprKind::Op:
        return eval_op(e, n);
    }
    throw std::logic_error("oracle: bad node");
  }

  Slice eval_op(const RawExpr& e, std::size_t n) const {
    const OperatorDef& def = reg.at(e.op);
    const std::string& base = def.base;
    std::size_t cap = witness_cap ? witness_cap : 2 * n + 8;

    if (base == "and") {
      Slice l = eval(*e.kids[0], n);
      Slice r = eval(*e.kids[1], n);
      Words out;
      std::set_intersection(l.words.begin(), l.words.end(), r.words.begin(),
                            r.words.end(), std::inserter(out, out.begin()));
      return {n, std::move(out), l.possibly_incomplete || r.possibly_incomplete};
    }
    if (base == "not") {
      Slice a = eval(*e.kids[0], n);
      Words all = sigma_upto(n);
      Words out;
      std::set_difference(all.begin(), all.end(), a.words.begin(), a.words.end(),
                          std::inserter(out, out.begin()));
      return {n, std::move(out), a.possibly_incomplete};
    }
    if (base == "shuffle") {
      Slice l = eval(*e.kids[0], n);
      Slice r = eval(*e.kids[1], n);
      return {n, shuffle_sets(l.words, r.words, n),
              l.possibly_incomplete || r.possibly_incomplete};
    }
    if (base == "shclose") {
      Slice a = eval(*e.kids[0], n);
      Words s{""};
      for (;;) {
        Words next = shuffle_sets(a.words, s, n);
        next.insert("");
        if (next == s) break;
        s = std::move(next);
      }
      return {n, std::move(s), a.possibly_incomplete};
    }
    if (base == "hom") {
      Slice a = eval(*e.kids[0], n);
      Words out;
      for (const auto& w : a.words) {
        std::string img = def.hom->apply(w);
        if (img.size() <= n) out.insert(img);
      }
      return {n, std::move(out), a.possibly_incomplete};
    }
    if (base == "hinv") {
      std::size_t m = std::max<std::size_t>(1, def.hom->max_image_len(reg.alphabet()));
      Slice a = eval(*e.kids[0], n * m);
      Words out;
      for (const auto& w : sigma_upto(n))
        if (a.words.count(def.hom->apply(w))) out.insert(w);
      return {n, std::move(out), a.possibly_incomplete};
    }
    if (base == "xk") {
      long i = def.iparams[0], k = def.iparams[1];
      Slice a = eval(*e.kids[0],
                     static_cast<std::size_t>(i - 1) + static_cast<std::size_t>(k) * n);
      Words out;
      for (const auto& w : a.words) {
        std::string x = extract(w, i, k);
        if (x.size() <= n) out.insert(x);
      }
      return {n, std::move(out), a.possibly_incomplete};
    }
    if (base == "hamming") {
      long k = def.iparams[0];
      Slice a = eval(*e.kids[0], n);
      Words out;
      for (const auto& v : sigma_upto(n))
        for (const auto& u : a.words) {
          if (u.size() != v.size()) continue;
          long d = 0;
          for (std::size_t p = 0; p < u.size(); ++p) d += u[p] != v[p];
          if (d <= k) {
            out.insert(v);
            break;
          }
        }
      return {n, std::move(out), a.possibly_incomplete};
    }
    if (base == "lev") {
      long k = def.iparams[0];
      Slice a = eval(*e.kids[0], n + static_cast<std::size_t>(k));
      Words out;
      for (const auto& v : sigma_upto(n))
        for (const auto& u : a.words)
          if (lev_distance(u, v) <= static_cast<std::size_t>(k)) {
            out.insert(v);
            break;
          }
      return {n, std::move(out), a.possibly_incomplete};
    }
    if (base == "lquot") {
      // words v with uv in the second language for some witness u in the
      // first; u is searched up to the cap only
      Slice u = eval(*e.kids[0], cap);
      Slice w = eval(*e.kids[1], cap + n);
      Words out;
      for (const auto& v : sigma_upto(n)) {
        for (const auto& uu : u.words)
          if (w.words.count(uu + v)) {
            out.insert(v);
            break;
          }
      }
      return {n, std::move(out), true};
    }
    if (base == "rquot") {
      Slice w = eval(*e.kids[0], n + cap);
      Slice u = eval(*e.kids[1], cap);
      Words out;
      for (const auto& v : sigma_upto(n)) {
        for (const auto& uu : u.words)
          if (w.words.count(v + uu)) {
            out.insert(v);
            break;
          }
      }
      return {n, std::move(out), true};
    }
    if (base == "prefixes") {
      Slice a = eval(*e.kids[0], n + cap);
      Words out;
      for (const auto& w : a.words)
        for (std::size_t len = 0; len <= std::min(n, w.size()); ++len)
          out.insert(w.substr(0, len));
      return {n, std::move(out), true};
    }
    if (base == "tilde") {
      Slice a = eval(*e.kids[0], n);
      a.words.insert("");
      return a;
    }
    if (base == "bar") {
      Slice a = eval(*e.kids[0], n);
      a.words.erase("");
      return a;
    }
    if (base == "upclose") {
      Slice a = eval(*e.kids[0], n);
      Words out;
      for (const auto& v : sigma_upto(n))
        for (const auto& x : a.words)
          if (is_subsequence(x, v)) {
            out.insert(v);
            break;
          }
      return {n, std::move(out), a.possibly_incomplete};
    }
    if (base == "id") return eval(*e.kids[0], n);
    throw std::logic_error("oracle: no semantics for operator '" + e.op + "'");
  }
};

}  // namespace

Slice slice(const RawExpr& e, std::size_t bound, const OperatorRegistry& reg,
            std::size_t witness_cap) {
  Eval ev{reg, witness_cap};
  return ev.eval(e, bound);
}

Slice slice(ExprId e, std::size_t bound, const OperatorRegistry& reg,
            const ExprPool& pool, std::size_t witness_cap) {
  return slice(*to_raw(e, pool), bound, reg, witness_cap);
}

bool sem_member(std::string_view w, const RawExpr& e, const OperatorRegistry& reg) {
  return slice(e, w.size(), reg).contains(w);
}

bool sem_member(std::string_view w, ExprId e, const OperatorRegistry& reg,
                const ExprPool& pool) {
  return sem_member(w, *to_raw(e, pool), reg);
}

}  // namespace oracle
}  // namespace rederiv
