#include "rederiv/parse.hpp"

#include <algorithm>
#include <cctype>

namespace rederiv {

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  OperatorRegistry& reg;

  explicit Parser(std::string_view t, OperatorRegistry& r) : text(t), reg(r) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  void expect(char c) {
    if (peek() != c)
      throw parse_error(std::string("expected '") + c + "'", pos);
    ++pos;
  }

  bool in_alphabet(char c) const {
    const auto& a = reg.alphabet();
    return std::find(a.begin(), a.end(), c) != a.end();
  }

  bool starts_atom() {
    char c = peek();
    if (c == '\0' || c == ')' || c == ',' || c == '+' || c == '&' || c == '*')
      return false;
    return true;
  }

  RawPtr sigma_star() {
    RawPtr u;
    for (char c : reg.alphabet())
      u = u ? raw_union(std::move(u), raw_sym(c)) : raw_sym(c);
    return raw_star(std::move(u));
  }

  std::size_t ident_len() const {
    std::size_t n = 0;
    while (pos + n < text.size()) {
      char c = text[pos + n];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        ++n;
      else
        break;
    }
    return n;
  }

  std::vector<OpParam> parse_params() {
    std::vector<OpParam> params;
    expect('[');
    for (;;) {
      skip_ws();
      std::size_t start = pos;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          v = v * 10 + (text[pos++] - '0');
        params.push_back(OpParam::num(v));
      } else {
        std::size_t n = ident_len();
        if (n == 0) throw parse_error("expected operator parameter", start);
        params.push_back(OpParam::tab(std::string(text.substr(pos, n))));
        pos += n;
      }
      char c = peek();
      if (c == ',') {
        ++pos;
        continue;
      }
      expect(']');
      break;
    }
    return params;
  }

  RawPtr parse_opcall(const std::string& base, std::size_t at) {
    std::vector<OpParam> params;
    if (peek() == '[') params = parse_params();

    if (base == "suffixes") {
      if (!params.empty())
        throw parse_error("suffixes: takes no parameters", at);
      expect('(');
      RawPtr arg = parse_expr();
      expect(')');
      (void)reg.resolve("lquot", {});
      return raw_op("lquot", {sigma_star(), std::move(arg)});
    }

    const OperatorDef* def;
    try {
      def = &reg.resolve(base, params);
    } catch (const operator_error& e) {
      throw parse_error(e.what(), at);
    }
    expect('(');
    std::vector<RawPtr> args;
    args.push_back(parse_expr());
    while (peek() == ',') {
      ++pos;
      args.push_back(parse_expr());
    }
    expect(')');
    if (static_cast<int>(args.size()) != def->arity)
      throw parse_error(def->name + ": expected " + std::to_string(def->arity) +
                            " argument(s), got " + std::to_string(args.size()),
                        at);
    return raw_op(def->name, std::move(args));
  }

  RawPtr parse_atom() {
    char c = peek();
    std::size_t at = pos;
    if (c == '@') {
      ++pos;
      if (pos < text.size() && text[pos] == '0') {
        ++pos;
        return raw_null();
      }
      if (pos < text.size() && text[pos] == 'e') {
        ++pos;
        return raw_eps();
      }
      if (text.substr(pos, 10) == "sigma-star") {
        pos += 10;
        return sigma_star();
      }
      throw parse_error("expected @0, @e or @sigma-star", at);
    }
    if (c == '(') {
      ++pos;
      RawPtr e = parse_expr();
      expect(')');
      return e;
    }
    if (c == '!') {
      ++pos;
      RawPtr e = parse_atom();
      (void)reg.resolve("not", {});
      return raw_op("not", {std::move(e)});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = ident_len();
      std::string ident(text.substr(pos, n));
      if (n >= 2 && reg.is_known_base(ident)) {
        std::size_t after = pos + n;
        std::size_t save = pos;
        pos = after;
        char next = peek();
        if (next == '(' || next == '[') return parse_opcall(ident, save);
        pos = save;
      }
    }
    if (!in_alphabet(c))
      throw parse_error(std::string("symbol '") + c + "' is not in the alphabet",
                        pos);
    ++pos;
    return raw_sym(c);
  }

  RawPtr parse_unary() {
    RawPtr e = parse_atom();
    while (peek() == '*') {
      ++pos;
      e = raw_star(std::move(e));
    }
    return e;
  }

  RawPtr parse_concat() {
    RawPtr e = parse_unary();
    while (starts_atom()) e = raw_concat(std::move(e), parse_unary());
    return e;
  }

  RawPtr parse_inter() {
    RawPtr e = parse_concat();
    while (peek() == '&') {
      ++pos;
      (void)reg.resolve("and", {});
      e = raw_op("and", {std::move(e), parse_concat()});
    }
    return e;
  }

  RawPtr parse_expr() {
    RawPtr e = parse_inter();
    while (peek() == '+') {
      ++pos;
      e = raw_union(std::move(e), parse_inter());
    }
    return e;
  }
};

}  // namespace

RawPtr parse_raw(std::string_view text, OperatorRegistry& reg) {
  Parser p(text, reg);
  RawPtr e = p.parse_expr();
  if (!p.eof()) throw parse_error("trailing input", p.pos);
  return e;
}

ExprId parse(std::string_view text, OperatorRegistry& reg, ExprPool& pool) {
  return normalize(*parse_raw(text, reg), pool);
}

std::string parse_word(std::string_view text, const OperatorRegistry& reg) {
  if (text == "@e") return "";
  const auto& a = reg.alphabet();
  for (char c : text)
    if (std::find(a.begin(), a.end(), c) == a.end())
      throw parse_error(std::string("word symbol '") + c +
                            "' is not in the alphabet",
                        0);
  return std::string(text);
}

}  // namespace rederiv
