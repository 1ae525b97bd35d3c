#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rederiv/defs.hpp"

namespace rederiv {

struct operator_error : std::runtime_error {
  std::string op;
  operator_error(std::string op_, const std::string& what)
      : std::runtime_error(what), op(std::move(op_)) {}
};

/// How an operator decides whether its language contains the empty word.
///
/// BooleanFn: a truth table over the argument languages' empty-word flags.
/// Hook: a decision procedure over automata for the argument languages;
/// usable only when the arguments compile.
struct EpsCapability {
  enum class Kind { BooleanFn, Hook, None };
  enum class HookKind { Emptiness, IntersectionEmptiness, ShortestWordBound };

  Kind kind = Kind::None;
  std::vector<bool> table;  // BooleanFn: 2^arity entries, index bit i = arg i
  HookKind hook = HookKind::Emptiness;
  long threshold = 0;  // ShortestWordBound: accept iff shortest word < threshold

  static EpsCapability boolean(std::vector<bool> t);
  static EpsCapability hook_fn(HookKind h, long threshold = 0);
  static EpsCapability none();

  bool is_identity() const;  // arity-1 table {false, true}
};

/// One summand of a linear derivative: prefix-word times target operator
/// applied to derivatives of the original arguments.
struct LinearArg {
  std::string word;  // derive this argument by `word`
  int arg = 0;       // argument position, 0-based
};

struct LinearTerm {
  std::string prefix;  // emitted before the target application
  std::string target;  // instantiated operator name
  std::vector<LinearArg> args;
};

/// Derivative template for the general (non-linear) shape: an expression
/// over placeholders x(word, arg) standing for word-derivatives of the
/// original arguments.
struct TemplateExpr;
using TemplatePtr = std::shared_ptr<const TemplateExpr>;
struct TemplateExpr {
  enum class Kind { Null, Eps, Sym, Union, Concat, Star, Op, Var };
  Kind kind = Kind::Null;
  char sym = 0;
  std::string op;
  std::vector<TemplatePtr> kids;
  std::string var_word;  // Var
  int var_arg = 0;       // Var, 0-based

  static TemplatePtr var(std::string word, int arg);
  static TemplatePtr symbol(char c);
  static TemplatePtr concat(TemplatePtr l, TemplatePtr r);
  static TemplatePtr apply(std::string op, std::vector<TemplatePtr> args);
};

struct DerivativeRule {
  enum class Kind { Linear, General, None };
  Kind kind = Kind::None;
  std::map<char, std::vector<LinearTerm>> linear;  // per symbol
  std::map<char, TemplatePtr> general;             // per symbol

  const std::vector<LinearTerm>& terms(char a) const;
  const TemplatePtr& tmpl(char a) const;
};

struct OperatorDef {
  std::string name;  // instantiated, e.g. "hamming[1]"
  std::string base;  // e.g. "hamming"
  int arity = 1;
  std::vector<long> iparams;
  std::optional<HomTable> hom;
  EpsCapability eps;
  DerivativeRule rule;
};

/// Parameter as written in an operator instantiation: a number or a table
/// name.
struct OpParam {
  bool is_int = false;
  long i = 0;
  std::string s;

  static OpParam num(long v) { return {true, v, ""}; }
  static OpParam tab(std::string n) { return {false, 0, std::move(n)}; }
};

/// All operators known to a session, instantiated over a fixed alphabet.
///
/// Parameterless operators are registered up front; parameterized families
/// (hamming[k], lev[k], xk[i,k], hom[T], hinv[T]) are instantiated on first
/// use, together with every operator their derivative rules can reach, so
/// the registry is always closed under derivation. Instantiation happens
/// while expressions are being read; afterwards the registry is read-only.
class OperatorRegistry {
 public:
  explicit OperatorRegistry(std::vector<char> alphabet,
                            std::map<std::string, HomTable> homs = {});

  const std::vector<char>& alphabet() const { return alphabet_; }
  const std::map<std::string, HomTable>& homs() const { return homs_; }

  bool is_known_base(const std::string& base) const;

  /// Instantiated definition by full name; null when absent.
  const OperatorDef* find(const std::string& name) const;
  const OperatorDef& at(const std::string& name) const;

  /// Instantiates (if needed) and returns base[params...].
  const OperatorDef& resolve(const std::string& base,
                             const std::vector<OpParam>& params);

  /// All registered operators, ordered by name.
  std::vector<const OperatorDef*> all() const;

 private:
  OperatorDef& add(OperatorDef def);
  void register_fixed();
  const OperatorDef& instantiate_hamming(long k);
  const OperatorDef& instantiate_lev(long k);
  const OperatorDef& instantiate_xk(long i, long k);
  const OperatorDef& instantiate_hom(bool inverse, const std::string& table);

  std::vector<char> alphabet_;
  std::map<std::string, HomTable> homs_;
  std::map<std::string, std::unique_ptr<OperatorDef>> ops_;
};

OperatorRegistry build_registry(const DefinitionsFile& defs);

/// Empty-word decision for one operator given its arguments' flags.
struct EpsQuery {
  enum class Kind { Value, Hook, None };
  Kind kind = Kind::None;
  bool value = false;
  EpsCapability::HookKind hook = EpsCapability::HookKind::Emptiness;
  long threshold = 0;
};

EpsQuery eps_capability(const OperatorDef& op, const std::vector<bool>& arg_flags);

/// The operator's derivative rule (instantiated per symbol).
const DerivativeRule& derivative_rule(const OperatorDef& op);

}  // namespace rederiv
