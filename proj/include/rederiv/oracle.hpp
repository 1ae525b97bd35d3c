#pragma once

#include <set>
#include <string>
#include <string_view>

#include "rederiv/expr.hpp"
#include "rederiv/operators.hpp"

namespace rederiv {
namespace oracle {

/// All words of the language up to a length bound, computed by direct set
/// semantics (no derivatives, no automata).
///
/// Quotients and prefixes existentially quantify over an unbounded witness
/// word; the witness is capped (default 2*bound + 8) and the result is then
/// flagged possibly_incomplete.
struct Slice {
  std::size_t bound = 0;
  std::set<std::string> words;
  bool possibly_incomplete = false;

  bool contains(std::string_view w) const {
    return words.count(std::string(w)) != 0;
  }
};

Slice slice(const RawExpr& e, std::size_t bound, const OperatorRegistry& reg,
            std::size_t witness_cap = 0);

Slice slice(ExprId e, std::size_t bound, const OperatorRegistry& reg,
            const ExprPool& pool, std::size_t witness_cap = 0);

/// Membership decided by slicing at the word's own length.
bool sem_member(std::string_view w, const RawExpr& e, const OperatorRegistry& reg);
bool sem_member(std::string_view w, ExprId e, const OperatorRegistry& reg,
                const ExprPool& pool);

}  // namespace oracle
}  // namespace rederiv
