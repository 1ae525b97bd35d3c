#pragma once

#include <string>
#include <string_view>

#include "rederiv/expr.hpp"

namespace rederiv {

/// Renders `e` with minimal parentheses. The output parses back (with the
/// same registry) to the same id: the empty language prints as @0 and the
/// empty word as @e, and/not print in '&'/'!' form, everything else in call
/// form.
std::string pretty(ExprId e, const ExprPool& pool);

/// A word for display: @e when empty, the symbols themselves otherwise.
std::string show_word(std::string_view w);

}  // namespace rederiv
