#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rederiv/derivation.hpp"
#include "rederiv/expr.hpp"
#include "rederiv/operators.hpp"

namespace rederiv {

struct state_cap_error : std::runtime_error {
  std::size_t cap;
  explicit state_cap_error(std::size_t cap_)
      : std::runtime_error("state cap exceeded (" + std::to_string(cap_) + ")"),
        cap(cap_) {}
};

/// Total deterministic automaton over the registry's alphabet. States carry
/// the derivative expression they were reached as.
struct Dfa {
  std::vector<ExprId> states;  // index 0 is the start unless noted
  std::vector<char> alphabet;
  std::vector<std::vector<std::uint32_t>> delta;  // [state][symbol index]
  std::vector<bool> finals;
  std::uint32_t start = 0;

  std::size_t symbol_index(char a) const;
};

/// Derivative construction: breadth-first over canonical derivatives, states
/// interned by id, symbols in alphabet order. Requires every operator in `e`
/// to be compile-eligible; throws capability_error otherwise, and
/// state_cap_error past `max_states`.
Dfa compile(ExprId e, const OperatorRegistry& reg, ExprPool& pool,
            std::size_t max_states = 10000);

/// Runs the automaton; throws std::invalid_argument on a symbol outside its
/// alphabet.
bool run(const Dfa& d, std::string_view w);

enum class Side { First, Second };

struct EquivResult {
  bool equivalent = true;
  std::string counterexample;  // shortest; ties broken by symbol order
  Side accepting_side = Side::First;
};

/// Bisimulation over derivative pairs; both inputs must be compile-eligible.
EquivResult equiv(ExprId e1, ExprId e2, const OperatorRegistry& reg,
                  ExprPool& pool);

/// Accepted words up to max_len, ordered by length then symbol order. Uses
/// the automaton when `e` is compile-eligible and the derivative tree
/// otherwise (then nullability must stay decidable).
std::vector<std::string> enumerate_words(ExprId e, const OperatorRegistry& reg,
                                         ExprPool& pool, std::size_t max_len);

/// Deterministic DOT rendering: states in index order labeled with their
/// pretty-printed expressions, finals double-circled, edges merged per
/// target with comma-joined symbol labels.
std::string to_dot(const Dfa& d, const ExprPool& pool);

/// Hopcroft minimization. State labels of merged classes keep the class
/// representative's expression (lowest original index).
Dfa minimize(const Dfa& d);

// Decision helpers over compiled automata (used by hook evaluation).
bool dfa_nonempty(const Dfa& d);
bool dfa_intersection_nonempty(const Dfa& a, const Dfa& b);
std::optional<std::size_t> dfa_shortest_accepted(const Dfa& d);

}  // namespace rederiv
