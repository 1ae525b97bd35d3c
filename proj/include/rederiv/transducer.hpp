#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rederiv/operators.hpp"

namespace rederiv {

struct FstTransition {
  std::size_t from = 0;
  std::string input;   // argument word consumed; may be empty
  std::string output;  // emitted word; never empty
  std::size_t to = 0;
};

/// Finite-state transducer realizing a unary operator as a word relation: a
/// pair (u, v) is in the relation when some path from the initial state
/// consumes u and emits v. Every state accepts, so acceptance is exactly
/// "both words fully consumed".
struct Transducer {
  std::vector<std::string> states;  // operator names; index = state id
  std::size_t initial = 0;
  std::vector<FstTransition> transitions;
};

/// Builds the transducer of a unary operator. The operator, and every
/// operator reachable through its derivative rules, must be unary, have a
/// linear rule, and contain the empty word exactly when its argument does;
/// otherwise capability_error names the offender.
Transducer build_fst(const OperatorDef& op, const OperatorRegistry& reg);

struct TransduceResult {
  std::vector<std::string> words;    // sorted by length, then lexicographic
  bool possibly_incomplete = false;  // a budget was hit while expanding
};

/// All outputs the transducer can emit while consuming exactly `input`,
/// restricted to `max_steps` explored configurations and `max_out` output
/// symbols. Insertion loops make some output sets infinite; the flag
/// reports when a budget actually cut something off.
TransduceResult transduce(const Transducer& fst, std::string_view input,
                          std::size_t max_steps, std::size_t max_out);
TransduceResult transduce(const Transducer& fst, std::string_view input);

/// Graphviz rendering with one edge per transition, labelled
/// "input/output" (@e for the empty word).
std::string fst_to_dot(const Transducer& fst);

}  // namespace rederiv
