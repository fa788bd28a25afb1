#include "fel/fnf.hpp"

#include "fel/error.hpp"
#include "fel/semantics.hpp"

namespace fel {
namespace {

bool is_literal(const Expr& e) { return e.is(Op::Atom) || (e.is(Op::Not) && e.operand().is(Op::Atom)); }

bool is_tterm(const Expr& e) {
  if (e.is(Op::True)) return true;
  return e.is(Op::Or) && e.left().is(Op::Atom) && is_tterm(e.right());
}

bool is_fterm(const Expr& e) {
  if (e.is(Op::False)) return true;
  return e.is(Op::And) && e.left().is(Op::Atom) && is_fterm(e.right());
}

bool is_lterm(const Expr& e) { return e.is(Op::And) && is_literal(e.left()) && is_tterm(e.right()); }

FnfCategory star_category(const Expr& e);

bool is_cterm(const Expr& e) {
  FnfCategory c = star_category(e);
  return c == FnfCategory::LTerm || c == FnfCategory::StarConj;
}

bool is_dterm(const Expr& e) {
  FnfCategory c = star_category(e);
  return c == FnfCategory::LTerm || c == FnfCategory::StarDisj;
}

FnfCategory star_category(const Expr& e) {
  if (is_lterm(e)) return FnfCategory::LTerm;
  if (e.is(Op::And) && star_category(e.left()) != FnfCategory::NotFnf && is_dterm(e.right()))
    return FnfCategory::StarConj;
  if (e.is(Op::Or) && star_category(e.left()) != FnfCategory::NotFnf && is_cterm(e.right()))
    return FnfCategory::StarDisj;
  return FnfCategory::NotFnf;
}

// Shape-level views used during normalization. Arguments are FNF by
// construction; the first public entry point validates user input.
enum class Shape { T, F, TOr, FAnd, TStar };

Shape fnf_shape(const Expr& e) {
  switch (e.op()) {
    case Op::True: return Shape::T;
    case Op::False: return Shape::F;
    case Op::Or: return Shape::TOr;
    case Op::And: return e.left().is(Op::Atom) ? Shape::FAnd : Shape::TStar;
    default: throw DefectError("normalizer reached a term outside the normal-form grammar: " + print(e));
  }
}

enum class StarShape { Pos, Neg, Conj, Disj };

StarShape star_shape(const Expr& e) {
  if (e.is(Op::Or)) return StarShape::Disj;
  if (!e.is(Op::And)) throw DefectError("normalizer expected a *-term: " + print(e));
  if (e.left().is(Op::Atom)) return StarShape::Pos;
  if (e.left().is(Op::Not) && e.left().operand().is(Op::Atom)) return StarShape::Neg;
  return StarShape::Conj;
}

Expr fn(const Expr& p);
Expr fn1(const Expr& p);
Expr fc(const Expr& p, const Expr& q);
Expr fc1(const Expr& p, const Expr& q);
Expr fc2(const Expr& p, const Expr& q);
Expr fc3(const Expr& p, const Expr& q);

Expr fn(const Expr& p) {
  switch (fnf_shape(p)) {
    case Shape::T: return Expr::bottom();                               // nfn1
    case Shape::TOr: return p.left() & fn(p.right());                   // nfn2
    case Shape::F: return Expr::top();                                  // nfn3
    case Shape::FAnd: return p.left() | fn(p.right());                  // nfn4
    case Shape::TStar: return p.left() & fn1(p.right());                // nfn5
  }
  throw DefectError("fn");
}

Expr fn1(const Expr& p) {
  switch (star_shape(p)) {
    case StarShape::Pos: return (!p.left()) & p.right();                // nfn6
    case StarShape::Neg: return p.left().operand() & p.right();         // nfn7
    case StarShape::Conj: return fn1(p.left()) | fn1(p.right());        // nfn8
    case StarShape::Disj: return fn1(p.left()) & fn1(p.right());        // nfn9
  }
  throw DefectError("fn1");
}

Expr fc(const Expr& p, const Expr& q) {
  Shape ps = fnf_shape(p);
  Shape qs = fnf_shape(q);
  bool q_true = qs == Shape::T || qs == Shape::TOr;
  bool q_false = qs == Shape::F || qs == Shape::FAnd;
  switch (ps) {
    case Shape::T: return q;                                            // nfc1
    case Shape::TOr:
      if (q_true) return p.left() | fc(p.right(), q);                   // nfc2
      if (q_false) return p.left() & fc(p.right(), q);                  // nfc3
      return fc(p, q.left()) & q.right();                               // nfc4
    case Shape::F:
      if (q_true) return fn(q);                                         // nfc5
      if (q_false) return q;                                            // nfc6
      return fc(q, Expr::bottom());                                     // nfc7
    case Shape::FAnd: return p.left() & fc(p.right(), q);               // nfc8
    case Shape::TStar:
      if (q_true) return p.left() & fc1(p.right(), q);                  // nfc9
      if (q_false) return fc(p.left(), fc2(p.right(), q));              // nfc14
      return p.left() & fc3(p.right(), q);                              // nfc19
  }
  throw DefectError("fc");
}

Expr fc1(const Expr& p, const Expr& q) {
  switch (star_shape(p)) {
    case StarShape::Pos: return p.left() & fc(p.right(), q);            // nfc10
    case StarShape::Neg: return p.left() & fc(p.right(), q);            // nfc11
    case StarShape::Conj: return p.left() & fc1(p.right(), q);          // nfc12
    case StarShape::Disj: return p.left() | fc1(p.right(), q);          // nfc13
  }
  throw DefectError("fc1");
}

Expr fc2(const Expr& p, const Expr& q) {
  switch (star_shape(p)) {
    case StarShape::Pos: return p.left() & fc(p.right(), q);            // nfc15
    case StarShape::Neg: return p.left().operand() & fc(p.right(), q);  // nfc16
    case StarShape::Conj:                                               // nfc17
    case StarShape::Disj: return fc2(p.left(), fc2(p.right(), q));      // nfc18
  }
  throw DefectError("fc2");
}

// q = tterm & star
Expr fc3(const Expr& p, const Expr& q) {
  const Expr& t = q.left();
  const Expr& s = q.right();
  switch (star_shape(s)) {
    case StarShape::Pos:
    case StarShape::Neg: return fc1(p, t) & s;                          // nfc20
    case StarShape::Conj: return fc3(p, t & s.left()) & s.right();     // nfc21
    case StarShape::Disj: return fc1(p, t) & s;                         // nfc22
  }
  throw DefectError("fc3");
}

Expr f(const Expr& p) {
  switch (p.op()) {
    case Op::Atom: return Expr::top() & (p & Expr::top());              // nf1
    case Op::True: return p;                                            // nf2
    case Op::False: return p;                                           // nf3
    case Op::Not: return fn(f(p.operand()));                            // nf4
    case Op::And: return fc(f(p.left()), f(p.right()));                 // nf5
    case Op::Or: return fn(fc(fn(f(p.left())), fn(f(p.right()))));      // nf6
    case Op::Undef: break;
  }
  throw PreconditionError("normalize_ffel needs a U-free expression");
}

void require_fnf(const Expr& e, const char* what) {
  if (e.has_u()) throw PreconditionError(std::string(what) + ": U is outside the normal-form grammar");
  FnfCategory c = classify(e);
  if (c == FnfCategory::NotFnf) throw PreconditionError(std::string(what) + ": not a normal form: " + print(e));
  if (!is_fnf(e))
    throw PreconditionError(std::string(what) + ": " + std::string(category_name(c)) +
                            " is a sub-category, not a complete normal form: " + print(e));
}

}  // namespace

std::string_view category_name(FnfCategory c) noexcept {
  switch (c) {
    case FnfCategory::TTerm: return "T-term";
    case FnfCategory::FTerm: return "F-term";
    case FnfCategory::LTerm: return "l-term";
    case FnfCategory::StarConj: return "*-conjunction";
    case FnfCategory::StarDisj: return "*-disjunction";
    case FnfCategory::TStarTerm: return "T-*-term";
    case FnfCategory::NotFnf: return "not-fnf";
  }
  return "?";
}

FnfCategory classify(const Expr& e) {
  if (is_tterm(e)) return FnfCategory::TTerm;
  if (is_fterm(e)) return FnfCategory::FTerm;
  if (e.is(Op::And) && is_tterm(e.left()) && star_category(e.right()) != FnfCategory::NotFnf)
    return FnfCategory::TStarTerm;
  return star_category(e);
}

bool is_fnf(const Expr& e) {
  FnfCategory c = classify(e);
  return c == FnfCategory::TTerm || c == FnfCategory::FTerm || c == FnfCategory::TStarTerm;
}

bool is_star_term(const Expr& e) { return star_category(e) != FnfCategory::NotFnf; }

Expr fnf_negate(const Expr& e) {
  require_fnf(e, "fnf_negate");
  return fn(e);
}

Expr fnf_and(const Expr& p, const Expr& q) {
  require_fnf(p, "fnf_and");
  require_fnf(q, "fnf_and");
  return fc(p, q);
}

Expr normalize_ffel(const Expr& p) {
  if (p.has_u()) throw PreconditionError("normalize_ffel needs a U-free expression: " + print(p));
  return f(p);
}

Expr u_sigma(const AtomString& sigma) {
  Expr e = Expr::undefined();
  for (auto it = sigma.atoms().rbegin(); it != sigma.atoms().rend(); ++it) e = Expr::atom(*it) & e;
  return e;
}

Expr normalize_ffelu(const Expr& p) {
  if (!p.has_u()) return normalize_ffel(p);
  EvalTree tree = fe_u(p);
  auto sigma = uniform_path_labels(tree);
  if (tree.leaf_kinds() != LeafSet{Leaf::U} || !sigma)
    throw DefectError("fe_u of a U-containing expression is not an all-U perfect tree: " + print(p));
  Expr result = u_sigma(*sigma);
  if (!(fe_u(result) == tree)) throw DefectError("normalize_ffelu postcondition failed for " + print(p));
  return result;
}

}  // namespace fel
