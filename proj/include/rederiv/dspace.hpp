#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rederiv/expr.hpp"
#include "rederiv/operators.hpp"

namespace rederiv {

struct dspace_cap_error : std::runtime_error {
  explicit dspace_cap_error(const std::string& what) : std::runtime_error(what) {}
};

/// Is `t` in the space of iterated derivatives of `r` (closed under sums
/// modulo similarity)? `r` may use any operator with a linear derivative
/// rule besides the plain regular ones.
bool dplus_contains(ExprId t, ExprId r, const OperatorRegistry& reg,
                    ExprPool& pool);

/// The space itself, materialized. Throws dspace_cap_error when any
/// intermediate set grows past `cap`. Result is sorted by the structural
/// order.
std::vector<ExprId> dplus_enumerate(ExprId r, const OperatorRegistry& reg,
                                    ExprPool& pool, std::size_t cap);

struct ClosureCheck {
  bool pass = false;
  std::string expr;  // pretty form of the expression that was derived
  char symbol = 0;
};

struct ClosureReport {
  std::vector<ClosureCheck> checks;

  bool all_pass() const;
  /// One "PASS <expr> <symbol>" / "FAIL <expr> <symbol>" line per check.
  std::string text() const;
};

/// Verifies that single-symbol derivatives of `r`, and of every derivative
/// of `r` reached by the sampled words, stay inside the derivative space.
ClosureReport check_closure(ExprId r, const OperatorRegistry& reg,
                            ExprPool& pool,
                            const std::vector<std::string>& sample_words);

}  // namespace rederiv
