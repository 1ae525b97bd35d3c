#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rederiv {

/// Handle into an ExprPool. Two expressions are similar (equal modulo
/// commutativity, associativity, idempotence and units of union) iff their
/// ids in the same pool are equal.
using ExprId = std::uint32_t;

enum class ExprKind : std::uint8_t { Null, Eps, Sym, Union, Concat, Star, Op };

/// One interned node. Children always refer to previously interned nodes,
/// so the pool is acyclic and append-only.
struct ExprNode {
  ExprKind kind = ExprKind::Null;
  char sym = 0;                // Sym only
  std::string op;              // Op only: instantiated operator name
  std::vector<ExprId> kids;    // Union >=2 (sorted, unique), Concat 2, Star 1, Op arity

  bool operator==(const ExprNode&) const = default;
};

struct RawExpr;
using RawPtr = std::shared_ptr<const RawExpr>;

/// Unnormalized term exactly as written. The parser and the test generators
/// build these; `normalize` folds one into canonical form in a pool.
/// Union nodes may be nested, unsorted, and may contain duplicates or Null.
struct RawExpr {
  ExprKind kind = ExprKind::Null;
  char sym = 0;
  std::string op;
  std::vector<RawPtr> kids;
};

RawPtr raw_null();
RawPtr raw_eps();
RawPtr raw_sym(char c);
RawPtr raw_union(RawPtr l, RawPtr r);
RawPtr raw_concat(RawPtr l, RawPtr r);
RawPtr raw_star(RawPtr body);
RawPtr raw_op(std::string op, std::vector<RawPtr> args);
std::size_t raw_size(const RawExpr& e);

/// Interning pool for canonical expressions.
///
/// Union canonicalization (flatten, drop Null, sort by the structural order,
/// deduplicate) happens on construction, so similarity checks are id
/// comparisons. Concatenation and star are kept as written; the smart
/// constructors apply their collapses only when called.
///
/// Thread contract: concurrent readers, serialized writers (an internal
/// reader/writer lock enforces it).
class ExprPool {
 public:
  ExprPool();

  static constexpr ExprId kNull = 0;
  static constexpr ExprId kEps = 1;

  ExprId null() const { return kNull; }
  ExprId eps() const { return kEps; }
  ExprId sym(char c);

  // Plain constructors. mk_union canonicalizes; the others build the node
  // as given.
  ExprId mk_union(std::vector<ExprId> parts);
  ExprId mk_concat(ExprId l, ExprId r);
  ExprId mk_star(ExprId body);
  ExprId mk_op(std::string op, std::vector<ExprId> args);

  // Smart constructors: concatenation collapses the 0/1 cases, union is the
  // canonical n-ary union of both sides.
  ExprId smart_concat(ExprId l, ExprId r);
  ExprId smart_union(ExprId l, ExprId r);

  /// `w` prepended to `tail` as a right-nested chain of smart concatenations.
  ExprId prepend_word(std::string_view w, ExprId tail);

  const ExprNode& node(ExprId id) const;
  ExprKind kind(ExprId id) const { return node(id).kind; }

  /// Structural total order: variant tag first, then payload and children
  /// lexicographically. Returns <0, 0, >0.
  int compare(ExprId a, ExprId b) const;

  std::size_t size() const;

 private:
  struct NodeHash {
    std::size_t operator()(const ExprNode& n) const;
  };

  ExprId intern_locked(ExprNode n);
  int compare_locked(ExprId a, ExprId b) const;
  ExprId union_locked(std::vector<ExprId> parts);

  mutable std::shared_mutex mu_;
  std::deque<ExprNode> nodes_;
  std::unordered_map<ExprNode, ExprId, NodeHash> table_;
};

/// Canonical form of a raw term. Idempotent and language-preserving.
ExprId normalize(const RawExpr& raw, ExprPool& pool);

/// The canonical expression unfolded back into a raw tree (Union stays n-ary).
RawPtr to_raw(ExprId e, const ExprPool& pool);

/// The summands of `e` viewed as a sum: empty for Null, the union's children
/// for Union, and {e} otherwise.
std::vector<ExprId> summands(ExprId e, const ExprPool& pool);

/// Structural audit of the canonical-form invariants.
bool well_formed(ExprId e, const ExprPool& pool);

}  // namespace rederiv
