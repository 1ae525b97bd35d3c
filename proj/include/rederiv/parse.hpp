#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "rederiv/expr.hpp"
#include "rederiv/operators.hpp"

namespace rederiv {

struct parse_error : std::runtime_error {
  std::size_t pos;
  parse_error(const std::string& what, std::size_t pos_)
      : std::runtime_error(what + " (at offset " + std::to_string(pos_) + ")"),
        pos(pos_) {}
};

/// Expression grammar:
///
///   expr   := inter ('+' inter)*
///   inter  := concat ('&' concat)*
///   concat := unary+
///   unary  := atom '*'*
///   atom   := SYMBOL | '@0' | '@e' | '@sigma-star' | '(' expr ')'
///           | '!' atom | NAME ('[' param (',' param)* ']')? '(' expr (',' expr)* ')'
///
/// '&' and '!' are sugar for the and/not operators; suffixes(r) is sugar for
/// lquot(@sigma-star, r). Symbols must belong to the registry's alphabet.
/// Whitespace between tokens is ignored. Parameterized operator uses
/// instantiate their family in the registry.
RawPtr parse_raw(std::string_view text, OperatorRegistry& reg);

/// parse_raw followed by normalize.
ExprId parse(std::string_view text, OperatorRegistry& reg, ExprPool& pool);

/// A word argument: "@e" denotes the empty word, anything else is taken
/// symbol by symbol (each must be in the alphabet).
std::string parse_word(std::string_view text, const OperatorRegistry& reg);

}  // namespace rederiv
