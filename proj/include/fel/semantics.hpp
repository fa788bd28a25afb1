#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fel/evaltree.hpp"
#include "fel/expr.hpp"

namespace fel {

enum class LogicKind { FFEL, FFELU, MFEL, MFELU, CLFEL2, CLFEL, SFEL };

class Logic {
 public:
  static Logic ffel() { return Logic(LogicKind::FFEL); }
  static Logic ffelu() { return Logic(LogicKind::FFELU); }
  static Logic mfel() { return Logic(LogicKind::MFEL); }
  static Logic mfelu() { return Logic(LogicKind::MFELU); }
  static Logic clfel2() { return Logic(LogicKind::CLFEL2); }
  static Logic clfel() { return Logic(LogicKind::CLFEL); }
  // Without beta, every comparison uses the sorted union of the operands'
  // alphabets.
  static Logic sfel(std::optional<AtomString> beta = std::nullopt);

  // ffel, ffelu, mfel, mfelu, clfel2, clfel, sfel
  static Logic from_name(std::string_view name, std::optional<AtomString> beta = std::nullopt);

  LogicKind kind() const noexcept { return kind_; }
  const std::optional<AtomString>& beta() const noexcept { return beta_; }
  bool admits_u() const noexcept;
  std::string name() const;

  // Throws PreconditionError when p cannot be evaluated in this logic.
  void require_admissible(const Expr& p) const;

  friend bool operator==(const Logic&, const Logic&) = default;

 private:
  explicit Logic(LogicKind k) : kind_(k) {}
  LogicKind kind_;
  std::optional<AtomString> beta_;
};

EvalTree fe(const Expr& p);
EvalTree fe_u(const Expr& p);

// Decides fe_u(p) == x without building fe_u(p). Work is proportional to the
// expanded size of x, so it suits small targets.
bool fe_u_equals(const Expr& p, const EvalTree& x);

// Tree forms of the connectives: fe(P & Q) = tree_and(fe(P), fe(Q)), and
// likewise for | and !. Valid for three-valued trees as well.
EvalTree tree_not(const EvalTree& x);
EvalTree tree_and(const EvalTree& x, const EvalTree& y);
EvalTree tree_or(const EvalTree& x, const EvalTree& y);

EvalTree la(Atom a, const EvalTree& x);
EvalTree ra(Atom a, const EvalTree& x);
EvalTree memo(const EvalTree& x);

EvalTree mfe(const Expr& p);
EvalTree mfe_u(const Expr& p);
EvalTree clfe(const Expr& p);
EvalTree clfe_u(const Expr& p);
EvalTree sfe(const AtomString& beta, const Expr& p);

// The logic's evaluation map. SFEL without beta uses the sorted alphabet of p.
EvalTree evaluate(const Logic& logic, const Expr& p);

struct Equivalence {
  bool equivalent;
  EvalTree left, right;
};

Equivalence equiv(const Logic& logic, const Expr& p, const Expr& q);

}  // namespace fel
