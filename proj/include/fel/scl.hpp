#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "fel/atom.hpp"
#include "fel/evaltree.hpp"
#include "fel/expr.hpp"

namespace fel {

enum class SclOp : std::uint8_t { Atom, True, False, Not, ScAnd, ScOr };

struct SclNode;

// U-free term over the short-circuit connectives && and ||. Kept apart from
// Expr so that the two connective families never mix in one term.
class SclExpr {
 public:
  static SclExpr atom(Atom a);
  static SclExpr top();
  static SclExpr bottom();
  static SclExpr negation(SclExpr e);
  static SclExpr sc_and(SclExpr l, SclExpr r);
  static SclExpr sc_or(SclExpr l, SclExpr r);

  SclOp op() const noexcept;
  Atom atom() const;
  const SclExpr& operand() const;
  const SclExpr& left() const;
  const SclExpr& right() const;
  bool is(SclOp o) const noexcept { return op() == o; }
  std::uint64_t hash() const noexcept;

  friend bool operator==(const SclExpr& a, const SclExpr& b) noexcept;

 private:
  explicit SclExpr(std::shared_ptr<const SclNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const SclNode> node_;
};

struct SclNode {
  SclOp op;
  std::optional<Atom> atom;
  std::optional<SclExpr> a, b;
  std::uint64_t hash;
};

// Short-circuit evaluation tree: && skips its right operand after F, || after T.
EvalTree se(const SclExpr& p);

// Structural translation with fe(p) = se(translate_t(p)).
SclExpr translate_t(const Expr& p);

bool bridge_check(const Expr& p);

// Replaces && and || by & and |. Under static semantics the two readings agree.
Expr identify_full(const SclExpr& p);

// Static short-circuit evaluation over the sorted, repetition-free beta.
EvalTree sse(const AtomString& beta, const SclExpr& p);

std::string print(const SclExpr& p, PrintOptions opts = {});

}  // namespace fel
