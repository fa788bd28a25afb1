#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fel/evaltree.hpp"
#include "fel/expr.hpp"
#include "fel/scl.hpp"
#include "fel/semantics.hpp"

namespace fel {

enum class TermOp : std::uint8_t { Var, Atom, True, False, Undef, Not, And, Or, ScAnd, ScOr };

struct TermNode;

// Term with variables x, y, z, u, v, w. Atoms may appear as constants.
class OpenTerm {
 public:
  static OpenTerm var(std::string_view name);
  static OpenTerm atom(Atom a);
  static OpenTerm top();
  static OpenTerm bottom();
  static OpenTerm undefined();
  static OpenTerm negation(OpenTerm t);
  static OpenTerm binary(TermOp op, OpenTerm l, OpenTerm r);

  TermOp op() const noexcept;
  const std::string& var_name() const;
  Atom atom() const;
  const OpenTerm& operand() const;
  const OpenTerm& left() const;
  const OpenTerm& right() const;
  bool is(TermOp o) const noexcept { return op() == o; }
  bool is_binary() const noexcept;

  friend bool operator==(const OpenTerm& a, const OpenTerm& b) noexcept;

  friend OpenTerm operator!(OpenTerm t) { return negation(std::move(t)); }
  friend OpenTerm operator&(OpenTerm l, OpenTerm r) { return binary(TermOp::And, std::move(l), std::move(r)); }
  friend OpenTerm operator|(OpenTerm l, OpenTerm r) { return binary(TermOp::Or, std::move(l), std::move(r)); }

 private:
  explicit OpenTerm(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermOp op;
  std::string var;
  std::optional<Atom> atom;
  std::optional<OpenTerm> a, b;
};

bool is_variable_name(std::string_view name);

// Same grammar as expressions, plus variables and the short-circuit
// connectives && and || (at the precedence of & and | respectively).
OpenTerm parse_term(std::string_view text);
std::string print(const OpenTerm& t);
std::set<std::string> variables(const OpenTerm& t);
OpenTerm dual(const OpenTerm& t);

enum class Signature { WithoutU, WithU, ShortCircuit };
std::string signature_name(Signature s);

struct Equation {
  std::string name;
  OpenTerm lhs, rhs;
  Signature signature;

  // Signature is inferred: short-circuit if && or || occur, else with-U if U occurs.
  static Equation make(std::string name, std::string_view lhs, std::string_view rhs);
  std::set<std::string> variables() const;
  std::string to_string() const;
};

// Swaps & with |, && with ||, and T with F on both sides.
Equation dual(const Equation& eq);

struct AxiomSet {
  std::string name;
  std::vector<Equation> equations;

  const Equation& find(std::string_view equation_name) const;
  AxiomSet without(std::string_view equation_name) const;
};

AxiomSet axiom_set(std::string_view name);
std::vector<std::string> axiom_set_names();
// The logic each built-in set is meant for.
Logic own_logic(std::string_view set_name);

using Assignment = std::map<std::string, Expr>;

// Closed instance. Short-circuit equations instantiate with && and || read as
// & and |, the identification under which they are checked.
std::pair<Expr, Expr> instantiate(const Equation& eq, const Assignment& assignment);
std::pair<SclExpr, SclExpr> instantiate_short_circuit(const Equation& eq, const Assignment& assignment);

// "depth" bounds the total number of connectives across the substituted terms.
struct Exhaustive {
  std::vector<Atom> atoms;
  unsigned depth = 3;
};

// Each variable receives an independent random expression.
struct Random {
  std::uint64_t count = 100;
  std::uint64_t seed = 0;
  std::vector<Atom> atoms;  // empty means a, b, c
  unsigned max_connectives = 4;
};

using Strategy = std::variant<Exhaustive, Random>;

struct Counterexample {
  Assignment assignment;
  Expr lhs, rhs;
  EvalTree left, right;
};

struct Verdict {
  std::string equation;
  std::uint64_t instances = 0;
  std::optional<Counterexample> counterexample;

  bool valid_on_sample() const noexcept { return !counterexample; }
};

void require_compatible(const Logic& logic, const Equation& eq);

Verdict check_validity(const Logic& logic, const Equation& eq, const Strategy& strategy);

struct SetReport {
  std::string set;
  std::string logic;
  std::vector<Verdict> verdicts;

  bool all_valid() const noexcept;
};

SetReport check_set(const Logic& logic, const AxiomSet& set, const Strategy& strategy);

std::string describe(const Verdict& v);
std::string describe(const SetReport& r);

}  // namespace fel
