#include "fel/scl.hpp"

#include "fel/error.hpp"
#include "fel/hash.hpp"
#include "fel/semantics.hpp"

namespace fel {
namespace {

std::shared_ptr<const SclNode> make(SclOp op, std::optional<Atom> atom, std::optional<SclExpr> a,
                                    std::optional<SclExpr> b) {
  auto n = std::make_shared<SclNode>();
  n->op = op;
  n->atom = atom;
  std::uint64_t h = detail::mix(static_cast<std::uint64_t>(op) * 7919ULL + (atom ? atom->id() + 1 : 0));
  if (a) h = detail::combine(h, a->hash());
  if (b) h = detail::combine(h, b->hash());
  n->hash = h;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

SclExpr SclExpr::atom(Atom a) { return SclExpr(make(SclOp::Atom, a, std::nullopt, std::nullopt)); }

SclExpr SclExpr::top() {
  static const SclExpr t(make(SclOp::True, std::nullopt, std::nullopt, std::nullopt));
  return t;
}

SclExpr SclExpr::bottom() {
  static const SclExpr f(make(SclOp::False, std::nullopt, std::nullopt, std::nullopt));
  return f;
}

SclExpr SclExpr::negation(SclExpr e) { return SclExpr(make(SclOp::Not, std::nullopt, std::move(e), std::nullopt)); }

SclExpr SclExpr::sc_and(SclExpr l, SclExpr r) {
  return SclExpr(make(SclOp::ScAnd, std::nullopt, std::move(l), std::move(r)));
}

SclExpr SclExpr::sc_or(SclExpr l, SclExpr r) {
  return SclExpr(make(SclOp::ScOr, std::nullopt, std::move(l), std::move(r)));
}

SclOp SclExpr::op() const noexcept { return node_->op; }

Atom SclExpr::atom() const {
  if (!node_->atom) throw DefectError("SclExpr::atom on a non-atom");
  return *node_->atom;
}

const SclExpr& SclExpr::operand() const {
  if (node_->op != SclOp::Not) throw DefectError("SclExpr::operand on a non-negation");
  return *node_->a;
}

const SclExpr& SclExpr::left() const {
  if (node_->op != SclOp::ScAnd && node_->op != SclOp::ScOr) throw DefectError("SclExpr::left on a non-binary");
  return *node_->a;
}

const SclExpr& SclExpr::right() const {
  if (node_->op != SclOp::ScAnd && node_->op != SclOp::ScOr) throw DefectError("SclExpr::right on a non-binary");
  return *node_->b;
}

std::uint64_t SclExpr::hash() const noexcept { return node_->hash; }

bool operator==(const SclExpr& a, const SclExpr& b) noexcept {
  if (a.node_ == b.node_) return true;
  const SclNode& x = *a.node_;
  const SclNode& y = *b.node_;
  if (x.hash != y.hash || x.op != y.op || x.atom != y.atom) return false;
  if (x.a && !(*x.a == *y.a)) return false;
  if (x.b && !(*x.b == *y.b)) return false;
  return true;
}

namespace {

// se with the leaves of the result already replaced: T by on_true, F by
// on_false. Allocates only the atom nodes of the result.
EvalTree se_into(const SclExpr& p, const EvalTree& on_true, const EvalTree& on_false) {
  switch (p.op()) {
    case SclOp::Atom: return EvalTree::node(p.atom(), on_true, on_false);
    case SclOp::True: return on_true;
    case SclOp::False: return on_false;
    case SclOp::Not: return se_into(p.operand(), on_false, on_true);
    case SclOp::ScAnd: return se_into(p.left(), se_into(p.right(), on_true, on_false), on_false);
    case SclOp::ScOr: return se_into(p.left(), on_true, se_into(p.right(), on_true, on_false));
  }
  throw DefectError("se: unknown operator");
}

}  // namespace

EvalTree se(const SclExpr& p) { return se_into(p, EvalTree::leaf(Leaf::T), EvalTree::leaf(Leaf::F)); }

SclExpr translate_t(const Expr& p) {
  switch (p.op()) {
    case Op::Atom: return SclExpr::atom(p.atom());
    case Op::True: return SclExpr::top();
    case Op::False: return SclExpr::bottom();
    case Op::Undef: throw PreconditionError("translate_t: U has no short-circuit counterpart");
    case Op::Not: return SclExpr::negation(translate_t(p.operand()));
    case Op::And: {
      SclExpr l = translate_t(p.left()), r = translate_t(p.right());
      return SclExpr::sc_and(SclExpr::sc_or(l, SclExpr::sc_and(r, SclExpr::bottom())), r);
    }
    case Op::Or: {
      SclExpr l = translate_t(p.left()), r = translate_t(p.right());
      return SclExpr::sc_or(SclExpr::sc_and(l, SclExpr::sc_or(r, SclExpr::top())), r);
    }
  }
  throw DefectError("translate_t: unknown operator");
}

bool bridge_check(const Expr& p) { return fe(p) == se(translate_t(p)); }

Expr identify_full(const SclExpr& p) {
  switch (p.op()) {
    case SclOp::Atom: return Expr::atom(p.atom());
    case SclOp::True: return Expr::top();
    case SclOp::False: return Expr::bottom();
    case SclOp::Not: return !identify_full(p.operand());
    case SclOp::ScAnd: return identify_full(p.left()) & identify_full(p.right());
    case SclOp::ScOr: return identify_full(p.left()) | identify_full(p.right());
  }
  throw DefectError("identify_full: unknown operator");
}

EvalTree sse(const AtomString& beta, const SclExpr& p) { return sfe(beta, identify_full(p)); }

namespace {

void print_rec(const SclExpr& p, bool full, std::string& out) {
  auto child = [&](const SclExpr& c, bool parens) {
    if (parens) out += '(';
    print_rec(c, full, out);
    if (parens) out += ')';
  };
  auto binary = [](const SclExpr& c) { return c.is(SclOp::ScAnd) || c.is(SclOp::ScOr); };
  switch (p.op()) {
    case SclOp::Atom: out += p.atom().name(); return;
    case SclOp::True: out += 'T'; return;
    case SclOp::False: out += 'F'; return;
    case SclOp::Not:
      out += '!';
      child(p.operand(), binary(p.operand()));
      return;
    case SclOp::ScAnd:
      child(p.left(), full ? binary(p.left()) : p.left().is(SclOp::ScOr));
      out += " && ";
      child(p.right(), binary(p.right()));
      return;
    case SclOp::ScOr:
      child(p.left(), full && binary(p.left()));
      out += " || ";
      child(p.right(), full ? binary(p.right()) : p.right().is(SclOp::ScOr));
      return;
  }
}

}  // namespace

std::string print(const SclExpr& p, PrintOptions opts) {
  std::string out;
  print_rec(p, opts.fully_parenthesized, out);
  return out;
}

}  // namespace fel
