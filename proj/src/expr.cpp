#include "fel/expr.hpp"

#include <algorithm>

#include "fel/error.hpp"
#include "fel/hash.hpp"

namespace fel {
namespace {

std::shared_ptr<const ExprNode> make_leaf(Op op, std::optional<Atom> atom) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->atom = atom;
  n->hash = detail::mix(static_cast<std::uint64_t>(op) * 1000003ULL + (atom ? atom->id() + 1 : 0));
  n->size = 1;
  n->connectives = 0;
  n->depth = 0;
  n->has_u = op == Op::Undef;
  return n;
}

const std::shared_ptr<const ExprNode>& constant(Op op) {
  static const std::shared_ptr<const ExprNode> t = make_leaf(Op::True, std::nullopt);
  static const std::shared_ptr<const ExprNode> f = make_leaf(Op::False, std::nullopt);
  static const std::shared_ptr<const ExprNode> u = make_leaf(Op::Undef, std::nullopt);
  return op == Op::True ? t : op == Op::False ? f : u;
}

}  // namespace

Expr::Expr() : node_(constant(Op::True)) {}

Expr Expr::atom(Atom a) { return Expr(make_leaf(Op::Atom, a)); }
Expr Expr::top() { return Expr(constant(Op::True)); }
Expr Expr::bottom() { return Expr(constant(Op::False)); }
Expr Expr::undefined() { return Expr(constant(Op::Undef)); }

Expr Expr::negation(Expr e) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Not;
  n->hash = detail::combine(0x4e4f54ULL, e.hash());
  n->size = e.size() + 1;
  n->connectives = e.connectives() + 1;
  n->depth = e.depth() + 1;
  n->has_u = e.has_u();
  n->a = std::move(e);
  return Expr(std::move(n));
}

namespace {

std::shared_ptr<const ExprNode> make_binary(Op op, Expr l, Expr r) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->hash = detail::combine(detail::combine(static_cast<std::uint64_t>(op), l.hash()), r.hash());
  n->size = l.size() + r.size() + 1;
  n->connectives = l.connectives() + r.connectives() + 1;
  n->depth = std::max(l.depth(), r.depth()) + 1;
  n->has_u = l.has_u() || r.has_u();
  n->a = std::move(l);
  n->b = std::move(r);
  return n;
}

}  // namespace

Expr Expr::conjunction(Expr l, Expr r) { return Expr(make_binary(Op::And, std::move(l), std::move(r))); }
Expr Expr::disjunction(Expr l, Expr r) { return Expr(make_binary(Op::Or, std::move(l), std::move(r))); }

Op Expr::op() const noexcept { return node_->op; }

Atom Expr::atom() const {
  if (!node_->atom) throw DefectError("Expr::atom on a non-atom");
  return *node_->atom;
}

const Expr& Expr::operand() const {
  if (node_->op != Op::Not) throw DefectError("Expr::operand on a non-negation");
  return *node_->a;
}

const Expr& Expr::left() const {
  if (!is_binary()) throw DefectError("Expr::left on a non-binary node");
  return *node_->a;
}

const Expr& Expr::right() const {
  if (!is_binary()) throw DefectError("Expr::right on a non-binary node");
  return *node_->b;
}

bool Expr::has_u() const noexcept { return node_->has_u; }
std::uint64_t Expr::hash() const noexcept { return node_->hash; }
std::uint32_t Expr::size() const noexcept { return node_->size; }
std::uint32_t Expr::connectives() const noexcept { return node_->connectives; }
std::uint32_t Expr::depth() const noexcept { return node_->depth; }

bool operator==(const Expr& x, const Expr& y) noexcept {
  const ExprNode* a = x.node_.get();
  const ExprNode* b = y.node_.get();
  if (a == b) return true;
  if (a->hash != b->hash || a->op != b->op || a->size != b->size) return false;
  switch (a->op) {
    case Op::Atom: return *a->atom == *b->atom;
    case Op::True:
    case Op::False:
    case Op::Undef: return true;
    case Op::Not: return *a->a == *b->a;
    case Op::And:
    case Op::Or: return *a->a == *b->a && *a->b == *b->b;
  }
  return false;
}

namespace {

void collect_atoms(const Expr& e, std::set<Atom>& out) {
  switch (e.op()) {
    case Op::Atom: out.insert(e.atom()); break;
    case Op::Not: collect_atoms(e.operand(), out); break;
    case Op::And:
    case Op::Or:
      collect_atoms(e.left(), out);
      collect_atoms(e.right(), out);
      break;
    default: break;
  }
}

void collect_first_occurrences(const Expr& e, std::vector<Atom>& out) {
  switch (e.op()) {
    case Op::Atom:
      if (std::find(out.begin(), out.end(), e.atom()) == out.end()) out.push_back(e.atom());
      break;
    case Op::Not: collect_first_occurrences(e.operand(), out); break;
    case Op::And:
    case Op::Or:
      collect_first_occurrences(e.left(), out);
      collect_first_occurrences(e.right(), out);
      break;
    default: break;
  }
}

}  // namespace

std::set<Atom> alphabet(const Expr& e) {
  std::set<Atom> out;
  collect_atoms(e, out);
  return out;
}

AtomString sorted_alphabet(const Expr& e) {
  std::set<Atom> s = alphabet(e);
  return AtomString(std::vector<Atom>(s.begin(), s.end()));
}

// Left-to-right first occurrences, which unfolds to the recursive definition
// str(P op Q) = str(P) >> str(Q).
AtomString str_of(const Expr& e) {
  std::vector<Atom> out;
  collect_first_occurrences(e, out);
  return AtomString(std::move(out));
}

AtomString seq_filter(const AtomString& sigma, const AtomString& rho) {
  std::vector<Atom> out = sigma.atoms();
  for (Atom a : rho)
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  return AtomString(std::move(out));
}

namespace {

Expr nnf_signed(const Expr& e, bool negate) {
  switch (e.op()) {
    case Op::Atom: return negate ? !e : e;
    case Op::True: return negate ? Expr::bottom() : e;
    case Op::False: return negate ? Expr::top() : e;
    case Op::Undef: return e;
    case Op::Not: return nnf_signed(e.operand(), !negate);
    case Op::And:
      return negate ? nnf_signed(e.left(), true) | nnf_signed(e.right(), true)
                    : nnf_signed(e.left(), false) & nnf_signed(e.right(), false);
    case Op::Or:
      return negate ? nnf_signed(e.left(), true) & nnf_signed(e.right(), true)
                    : nnf_signed(e.left(), false) | nnf_signed(e.right(), false);
  }
  throw DefectError("nnf: unknown operator");
}

}  // namespace

Expr nnf(const Expr& e) { return nnf_signed(e, false); }

Expr dual(const Expr& e) {
  switch (e.op()) {
    case Op::Atom:
    case Op::Undef: return e;
    case Op::True: return Expr::bottom();
    case Op::False: return Expr::top();
    case Op::Not: return !dual(e.operand());
    case Op::And: return dual(e.left()) | dual(e.right());
    case Op::Or: return dual(e.left()) & dual(e.right());
  }
  throw DefectError("dual: unknown operator");
}

namespace {

void print_into(const Expr& e, bool full, std::string& out) {
  auto child = [&](const Expr& c, bool parens) {
    if (parens) out += '(';
    print_into(c, full, out);
    if (parens) out += ')';
  };
  switch (e.op()) {
    case Op::Atom: out += e.atom().name(); return;
    case Op::True: out += 'T'; return;
    case Op::False: out += 'F'; return;
    case Op::Undef: out += 'U'; return;
    case Op::Not:
      out += '!';
      child(e.operand(), e.operand().is_binary());
      return;
    case Op::And:
      child(e.left(), e.left().is(Op::Or) || (full && e.left().is_binary()));
      out += " & ";
      child(e.right(), e.right().is_binary());
      return;
    case Op::Or:
      child(e.left(), full && e.left().is_binary());
      out += " | ";
      child(e.right(), e.right().is(Op::Or) || (full && e.right().is_binary()));
      return;
  }
}

}  // namespace

std::string print(const Expr& e, PrintOptions opts) {
  std::string out;
  print_into(e, opts.fully_parenthesized, out);
  return out;
}

}  // namespace fel
