#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

#include "rederiv/expr.hpp"
#include "rederiv/operators.hpp"

namespace rederiv {

struct Dfa;

/// Raised when an operation needs a capability an operator does not have
/// (non-linear rule where a linear one is required, or an empty-word
/// decision that is not available).
struct capability_error : std::runtime_error {
  std::string op;
  capability_error(std::string op_, const std::string& what)
      : std::runtime_error(what), op(std::move(op_)) {}
};

struct Nullability {
  enum class Kind { Nullable, NotNullable, Undecided };
  Kind kind = Kind::Undecided;
  std::string blocking_op;  // Undecided: the operator that could not decide

  bool decided() const { return kind != Kind::Undecided; }
  bool yes() const { return kind == Kind::Nullable; }

  static Nullability of(bool b) {
    return {b ? Kind::Nullable : Kind::NotNullable, ""};
  }
  static Nullability undecided(std::string op) {
    return {Kind::Undecided, std::move(op)};
  }
};

/// Memo of automata compiled for hook decisions, keyed by argument
/// expression. Reusable across calls against the same pool and registry.
class HookCache {
 public:
  const Dfa& dfa_for(ExprId e, const OperatorRegistry& reg, ExprPool& pool);

 private:
  std::unordered_map<ExprId, std::shared_ptr<const Dfa>> cache_;
};

/// True when no operator in `e` decides the empty word through a hook.
bool hook_free(ExprId e, const OperatorRegistry& reg, const ExprPool& pool);

/// True when `e` can be compiled to a finite automaton: every operator has a
/// linear derivative rule, and every hook's arguments are themselves
/// hook-free and compilable. `offending` (optional) receives the first
/// operator that fails.
bool is_compile_eligible(ExprId e, const OperatorRegistry& reg,
                         const ExprPool& pool, std::string* offending = nullptr);

/// Does the language of `e` contain the empty word? Hook-based operators
/// decide by compiling their arguments; when that is not possible the result
/// is Undecided with the operator named.
Nullability nullable(ExprId e, const OperatorRegistry& reg, ExprPool& pool,
                     HookCache* cache = nullptr);

/// Left derivative by one symbol. Throws capability_error when an operator
/// has no usable rule or an undecidable empty-word test is required inside a
/// concatenation.
ExprId derive(char a, ExprId e, const OperatorRegistry& reg, ExprPool& pool,
              HookCache* cache = nullptr);

/// Iterated derivative, leftmost symbol first.
ExprId derive_word(std::string_view w, ExprId e, const OperatorRegistry& reg,
                   ExprPool& pool, HookCache* cache = nullptr);

/// Word problem: derive by the word, then test the empty word. Throws
/// capability_error when the final test is undecided.
bool matches(ExprId e, std::string_view w, const OperatorRegistry& reg,
             ExprPool& pool, HookCache* cache = nullptr);

}  // namespace rederiv
