#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "fel/atom.hpp"

namespace fel {

enum class Op : std::uint8_t { Atom, True, False, Undef, Not, And, Or };

struct ExprNode;

// Immutable expression over atoms, T, F, U, negation and the two fully
// evaluated binary connectives. Copies are cheap; equality is structural.
class Expr {
 public:
  Expr();  // T

  static Expr atom(Atom a);
  static Expr atom(std::string_view name) { return atom(Atom(name)); }
  static Expr top();
  static Expr bottom();
  static Expr undefined();
  static Expr negation(Expr e);
  static Expr conjunction(Expr l, Expr r);
  static Expr disjunction(Expr l, Expr r);

  Op op() const noexcept;
  Atom atom() const;              // Op::Atom only
  const Expr& operand() const;    // Op::Not only
  const Expr& left() const;       // Op::And / Op::Or only
  const Expr& right() const;

  bool is(Op o) const noexcept { return op() == o; }
  bool is_binary() const noexcept { return is(Op::And) || is(Op::Or); }
  bool has_u() const noexcept;
  std::uint64_t hash() const noexcept;
  std::uint32_t size() const noexcept;         // node count
  std::uint32_t connectives() const noexcept;  // !, & and | occurrences
  std::uint32_t depth() const noexcept;        // leaves have depth 0
  const ExprNode* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b) noexcept;

  friend Expr operator!(Expr e) { return negation(std::move(e)); }
  friend Expr operator&(Expr l, Expr r) { return conjunction(std::move(l), std::move(r)); }
  friend Expr operator|(Expr l, Expr r) { return disjunction(std::move(l), std::move(r)); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  Op op;
  std::optional<Atom> atom;
  std::optional<Expr> a, b;  // children; empty in leaves
  std::uint64_t hash;
  std::uint32_t size, connectives, depth;
  bool has_u;
};

struct PrintOptions {
  bool fully_parenthesized = false;
};

Expr parse(std::string_view text);
std::string print(const Expr& e, PrintOptions opts = {});

std::set<Atom> alphabet(const Expr& e);
AtomString sorted_alphabet(const Expr& e);
// First-occurrence atom string.
AtomString str_of(const Expr& e);
// sigma followed by the atoms of rho that do not occur in it.
AtomString seq_filter(const AtomString& sigma, const AtomString& rho);

Expr nnf(const Expr& e);
Expr dual(const Expr& e);

}  // namespace fel

template <>
struct std::hash<fel::Expr> {
  std::size_t operator()(const fel::Expr& e) const noexcept { return e.hash(); }
};
