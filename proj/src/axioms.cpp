#include "fel/axioms.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "fel/error.hpp"
#include "fel/generate.hpp"
#include "fel/hash.hpp"
#include "fel/normalforms.hpp"

namespace fel {

// ---------------------------------------------------------------------------
// OpenTerm

namespace {

std::shared_ptr<const TermNode> make_term(TermOp op) {
  auto n = std::make_shared<TermNode>();
  n->op = op;
  return n;
}

}  // namespace

bool is_variable_name(std::string_view name) {
  return name.size() == 1 && std::string_view("xyzuvw").find(name[0]) != std::string_view::npos;
}

OpenTerm OpenTerm::var(std::string_view name) {
  if (!is_variable_name(name)) throw PreconditionError("not a variable name: '" + std::string(name) + "'");
  auto n = std::make_shared<TermNode>();
  n->op = TermOp::Var;
  n->var = std::string(name);
  return OpenTerm(std::move(n));
}

OpenTerm OpenTerm::atom(Atom a) {
  auto n = std::make_shared<TermNode>();
  n->op = TermOp::Atom;
  n->atom = a;
  return OpenTerm(std::move(n));
}

OpenTerm OpenTerm::top() { return OpenTerm(make_term(TermOp::True)); }
OpenTerm OpenTerm::bottom() { return OpenTerm(make_term(TermOp::False)); }
OpenTerm OpenTerm::undefined() { return OpenTerm(make_term(TermOp::Undef)); }

OpenTerm OpenTerm::negation(OpenTerm t) {
  auto n = std::make_shared<TermNode>();
  n->op = TermOp::Not;
  n->a = std::move(t);
  return OpenTerm(std::move(n));
}

OpenTerm OpenTerm::binary(TermOp op, OpenTerm l, OpenTerm r) {
  if (op != TermOp::And && op != TermOp::Or && op != TermOp::ScAnd && op != TermOp::ScOr)
    throw PreconditionError("OpenTerm::binary needs a binary connective");
  auto n = std::make_shared<TermNode>();
  n->op = op;
  n->a = std::move(l);
  n->b = std::move(r);
  return OpenTerm(std::move(n));
}

TermOp OpenTerm::op() const noexcept { return node_->op; }

const std::string& OpenTerm::var_name() const {
  if (node_->op != TermOp::Var) throw DefectError("OpenTerm::var_name on a non-variable");
  return node_->var;
}

Atom OpenTerm::atom() const {
  if (!node_->atom) throw DefectError("OpenTerm::atom on a non-atom");
  return *node_->atom;
}

const OpenTerm& OpenTerm::operand() const {
  if (node_->op != TermOp::Not) throw DefectError("OpenTerm::operand on a non-negation");
  return *node_->a;
}

const OpenTerm& OpenTerm::left() const {
  if (!is_binary()) throw DefectError("OpenTerm::left on a non-binary");
  return *node_->a;
}

const OpenTerm& OpenTerm::right() const {
  if (!is_binary()) throw DefectError("OpenTerm::right on a non-binary");
  return *node_->b;
}

bool OpenTerm::is_binary() const noexcept {
  TermOp o = node_->op;
  return o == TermOp::And || o == TermOp::Or || o == TermOp::ScAnd || o == TermOp::ScOr;
}

bool operator==(const OpenTerm& a, const OpenTerm& b) noexcept {
  if (a.node_ == b.node_) return true;
  const TermNode& x = *a.node_;
  const TermNode& y = *b.node_;
  if (x.op != y.op || x.var != y.var || x.atom != y.atom) return false;
  if (x.a && !(*x.a == *y.a)) return false;
  if (x.b && !(*x.b == *y.b)) return false;
  return true;
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  OpenTerm run() {
    OpenTerm t = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail({"'&'", "'|'", "'&&'", "'||'", "end of input"});
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::string_view(" \t\r\n").find(text_[pos_]) != std::string_view::npos) ++pos_;
  }

  // Returns 2 for a doubled connective, 1 for a single one, 0 if absent.
  int accept_connective(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) return 0;
    if (pos_ + 1 < text_.size() && text_[pos_ + 1] == c) {
      pos_ += 2;
      return 2;
    }
    ++pos_;
    return 1;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw ParseError(pos_, std::move(expected), found);
  }

  OpenTerm parse_or() {
    OpenTerm t = parse_and();
    while (int k = accept_connective('|')) t = OpenTerm::binary(k == 2 ? TermOp::ScOr : TermOp::Or, t, parse_and());
    return t;
  }

  OpenTerm parse_and() {
    OpenTerm t = parse_unary();
    while (int k = accept_connective('&'))
      t = OpenTerm::binary(k == 2 ? TermOp::ScAnd : TermOp::And, t, parse_unary());
    return t;
  }

  OpenTerm parse_unary() {
    if (accept('!')) return !parse_unary();
    return parse_primary();
  }

  OpenTerm parse_primary() {
    static const std::vector<std::string> operand = {"'!'", "'('", "'T'", "'F'", "'U'", "variable", "atom"};
    skip_ws();
    if (pos_ >= text_.size()) fail(operand);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      OpenTerm t = parse_or();
      if (!accept(')')) fail({"'&'", "'|'", "'&&'", "'||'", "')'"});
      return t;
    }
    if (c == 'T' || c == 'F' || c == 'U') {
      ++pos_;
      return c == 'T' ? OpenTerm::top() : c == 'F' ? OpenTerm::bottom() : OpenTerm::undefined();
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
                                     (text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      return is_variable_name(name) ? OpenTerm::var(name) : OpenTerm::atom(Atom(name));
    }
    fail(operand);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_or_like(const OpenTerm& t) { return t.is(TermOp::Or) || t.is(TermOp::ScOr); }

void print_into(const OpenTerm& t, std::string& out) {
  auto child = [&](const OpenTerm& c, bool parens) {
    if (parens) out += '(';
    print_into(c, out);
    if (parens) out += ')';
  };
  switch (t.op()) {
    case TermOp::Var: out += t.var_name(); return;
    case TermOp::Atom: out += t.atom().name(); return;
    case TermOp::True: out += 'T'; return;
    case TermOp::False: out += 'F'; return;
    case TermOp::Undef: out += 'U'; return;
    case TermOp::Not:
      out += '!';
      child(t.operand(), t.operand().is_binary());
      return;
    case TermOp::And:
    case TermOp::ScAnd:
      child(t.left(), is_or_like(t.left()));
      out += t.is(TermOp::And) ? " & " : " && ";
      child(t.right(), t.right().is_binary());
      return;
    case TermOp::Or:
    case TermOp::ScOr:
      child(t.left(), false);
      out += t.is(TermOp::Or) ? " | " : " || ";
      child(t.right(), is_or_like(t.right()));
      return;
  }
}

void collect_vars(const OpenTerm& t, std::set<std::string>& out) {
  switch (t.op()) {
    case TermOp::Var: out.insert(t.var_name()); return;
    case TermOp::Not: collect_vars(t.operand(), out); return;
    case TermOp::And:
    case TermOp::Or:
    case TermOp::ScAnd:
    case TermOp::ScOr:
      collect_vars(t.left(), out);
      collect_vars(t.right(), out);
      return;
    default: return;
  }
}

bool mentions(const OpenTerm& t, bool (*pred)(TermOp)) {
  if (pred(t.op())) return true;
  if (t.is(TermOp::Not)) return mentions(t.operand(), pred);
  if (t.is_binary()) return mentions(t.left(), pred) || mentions(t.right(), pred);
  return false;
}

bool is_short_circuit(TermOp o) { return o == TermOp::ScAnd || o == TermOp::ScOr; }
bool is_undef(TermOp o) { return o == TermOp::Undef; }

}  // namespace

OpenTerm parse_term(std::string_view text) { return TermParser(text).run(); }

std::string print(const OpenTerm& t) {
  std::string out;
  print_into(t, out);
  return out;
}

std::set<std::string> variables(const OpenTerm& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

OpenTerm dual(const OpenTerm& t) {
  switch (t.op()) {
    case TermOp::True: return OpenTerm::bottom();
    case TermOp::False: return OpenTerm::top();
    case TermOp::Not: return !dual(t.operand());
    case TermOp::And: return dual(t.left()) | dual(t.right());
    case TermOp::Or: return dual(t.left()) & dual(t.right());
    case TermOp::ScAnd: return OpenTerm::binary(TermOp::ScOr, dual(t.left()), dual(t.right()));
    case TermOp::ScOr: return OpenTerm::binary(TermOp::ScAnd, dual(t.left()), dual(t.right()));
    default: return t;
  }
}

// ---------------------------------------------------------------------------
// Equations and built-in sets

std::string signature_name(Signature s) {
  switch (s) {
    case Signature::WithoutU: return "without-U";
    case Signature::WithU: return "with-U";
    case Signature::ShortCircuit: return "short-circuit";
  }
  return "?";
}

Equation Equation::make(std::string name, std::string_view lhs, std::string_view rhs) {
  OpenTerm l = parse_term(lhs), r = parse_term(rhs);
  bool sc = mentions(l, is_short_circuit) || mentions(r, is_short_circuit);
  bool u = mentions(l, is_undef) || mentions(r, is_undef);
  if (sc && u) throw PreconditionError("short-circuit equations cannot mention U: " + name);
  Signature s = sc ? Signature::ShortCircuit : u ? Signature::WithU : Signature::WithoutU;
  return Equation{std::move(name), std::move(l), std::move(r), s};
}

std::set<std::string> Equation::variables() const {
  std::set<std::string> out;
  collect_vars(lhs, out);
  collect_vars(rhs, out);
  return out;
}

std::string Equation::to_string() const { return name + ": " + print(lhs) + " = " + print(rhs); }

Equation dual(const Equation& eq) { return Equation{eq.name + "-dual", dual(eq.lhs), dual(eq.rhs), eq.signature}; }

const Equation& AxiomSet::find(std::string_view equation_name) const {
  for (const Equation& e : equations)
    if (e.name == equation_name) return e;
  throw PreconditionError("set " + name + " has no equation named '" + std::string(equation_name) + "'");
}

AxiomSet AxiomSet::without(std::string_view equation_name) const {
  find(equation_name);
  AxiomSet out{name + " without " + std::string(equation_name), {}};
  for (const Equation& e : equations)
    if (e.name != equation_name) out.equations.push_back(e);
  return out;
}

namespace {

using Table = std::vector<Equation>;

Table concat(std::initializer_list<Table> parts) {
  Table out;
  for (const Table& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Table ffel_table() {
  return {
      Equation::make("FFEL1", "F", "!T"),
      Equation::make("FFEL2", "x | y", "!(!x & !y)"),
      Equation::make("FFEL3", "!!x", "x"),
      Equation::make("FFEL4", "(x & y) & z", "x & (y & z)"),
      Equation::make("FFEL5", "T & x", "x"),
      Equation::make("FFEL6", "x & T", "x"),
      Equation::make("FFEL7", "x & F", "F & x"),
      Equation::make("FFEL8", "!x & F", "x & F"),
      Equation::make("FFEL9", "(x & F) | y", "(x | T) & y"),
      Equation::make("FFEL10", "x | (y & F)", "x & (y | T)"),
  };
}

Table u_table() { return {Equation::make("U1", "!U", "U"), Equation::make("U2", "U & x", "U")}; }
Table m1_table() { return {Equation::make("M1", "(x | y) & z", "(!x & (y & z)) | (x & z)")}; }
Table comm_table() { return {Equation::make("Comm", "x & y", "y & x")}; }
Table fzero_table() { return {Equation::make("FZero", "x & F", "F")}; }

Table mf_table() {
  return {
      Equation::make("MF1", "x | y", "!(!x & !y)"),
      Equation::make("MF2", "!!x", "x"),
      Equation::make("MF3", "T & x", "x"),
      Equation::make("MF4", "(x | y) & z", "(!x & (y & z)) | (x & z)"),
      Equation::make("MF5", "(x & y) | x", "x | (y & F)"),
      Equation::make("MF6", "x & (y | z)", "(x & y) | (x & z)"),
  };
}

Table mf_without_mf6() {
  Table t = mf_table();
  t.pop_back();
  return t;
}

// h(x, y, z) = (x & y) | (!x & z), spelled out over term text.
std::string h_text(const std::string& x, const std::string& y, const std::string& z) {
  return "((" + x + ") & (" + y + ")) | (!(" + x + ") & (" + z + "))";
}

Table build(std::string_view name) {
  if (name == "eqffel") return ffel_table();
  if (name == "eqffelu") return concat({ffel_table(), u_table()});
  if (name == "eqmfel") return concat({ffel_table(), m1_table()});
  if (name == "eqmfelu") return concat({ffel_table(), m1_table(), u_table()});
  if (name == "eqclfel2") return concat({ffel_table(), m1_table(), comm_table()});
  if (name == "eqclfelu") return concat({ffel_table(), m1_table(), u_table(), comm_table()});
  if (name == "eqsfel") return concat({ffel_table(), m1_table(), comm_table(), fzero_table()});
  if (name == "mf") return mf_table();
  if (name == "cf") return concat({comm_table(), mf_without_mf6()});
  if (name == "sf") return concat({fzero_table(), mf_without_mf6()});
  if (name == "eqsscl")
    return {
        Equation::make("Mem1", "F", "!T"),
        Equation::make("Mem2", "x || y", "!(!x && !y)"),
        Equation::make("Mem3", "T && x", "x"),
        Equation::make("Mem4", "x && (x || y)", "x"),
        Equation::make("Mem5", "(x || y) && z", "(!x && (y && z)) || (x && z)"),
        Equation::make("Comm", "x && y", "y && x"),
    };
  if (name == "bochvar")
    return {
        Equation::make("S1", "!T", "F"),
        Equation::make("S2", "!U", "U"),
        Equation::make("S3", "!!x", "x"),
        Equation::make("S4", "!(x & y)", "!x | !y"),
        Equation::make("S6", "(x & y) & z", "x & (y & z)"),
        Equation::make("S7", "T & x", "x"),
        Equation::make("S8", "x | (!x & y)", "x | y"),
        Equation::make("S9", "x & y", "y & x"),
        Equation::make("S10", "x & (y | z)", "(x & y) | (x & z)"),
        Equation::make("S11", "U & x", "U"),
    };
  if (name == "lemma26")
    return {
        Equation::make("L1", "x & (y & F)", "!x & (y & F)"),
        Equation::make("L2", "(x | T) & y", "!(x | T) | y"),
        Equation::make("L3", "x | (y & (z | T))", "(x | y) & (z | T)"),
    };
  if (name == "c1c4")
    return {
        Equation::make("C1", "x & (y & x)", "x & y"),
        Equation::make("C2", "(x & y) | x", "x & (y | x)"),
        Equation::make("C3", "(x & y) | (!x & z)", "(!x | y) & (x | z)"),
        Equation::make("C4", "x & (y | z)", "(x & y) | (x & z)"),
    };
  if (name == "crux")
    return {
        Equation::make("Crux1", "(" + h_text("x", "y", "z") + ") & w", h_text("x", "(y | (z & F)) & w", "z & w")),
        Equation::make("Crux2", "(" + h_text("x", "y", "z") + ") | w", h_text("x", "(y & (z | T)) | w", "z | w")),
    };
  if (name == "cruxswap")
    return {Equation::make("Swap", h_text("x", h_text("y", "z", "u"), h_text("y", "v", "w")),
                           h_text("y", h_text("x", "z", "v"), h_text("x", "u", "w")))};
  if (name == "aux0")
    return {
        Equation::make("A1", "x | (y & U)", "(x | y) & U"),
        Equation::make("A2", "x | (y & U)", "x & (y & U)"),
        Equation::make("A3", "!x & (y & U)", "x & (y & U)"),
    };
  if (name == "lemmaB") return {Equation::make("B", "(x & F) | (x & y)", "(x & F) | (y & x)")};
  throw PreconditionError("unknown axiom set '" + std::string(name) + "'");
}

}  // namespace

AxiomSet axiom_set(std::string_view name) { return AxiomSet{std::string(name), build(name)}; }

std::vector<std::string> axiom_set_names() {
  return {"eqffel", "eqffelu", "eqmfel", "eqmfelu", "eqclfel2", "eqclfelu", "eqsfel", "mf", "cf",
          "sf",     "eqsscl",  "bochvar", "lemma26", "c1c4",   "crux",     "cruxswap", "aux0", "lemmaB"};
}

Logic own_logic(std::string_view set_name) {
  if (set_name == "eqffel" || set_name == "lemma26") return Logic::ffel();
  if (set_name == "eqffelu" || set_name == "aux0") return Logic::ffelu();
  if (set_name == "eqmfel" || set_name == "mf" || set_name == "c1c4" || set_name == "crux" || set_name == "lemmaB")
    return Logic::mfel();
  if (set_name == "eqmfelu") return Logic::mfelu();
  if (set_name == "eqclfel2" || set_name == "cf" || set_name == "cruxswap") return Logic::clfel2();
  if (set_name == "eqclfelu" || set_name == "bochvar") return Logic::clfel();
  if (set_name == "eqsfel" || set_name == "sf" || set_name == "eqsscl") return Logic::sfel();
  throw PreconditionError("unknown axiom set '" + std::string(set_name) + "'");
}

// ---------------------------------------------------------------------------
// Instantiation

namespace {

Expr to_expr(const OpenTerm& t, const Assignment& env) {
  switch (t.op()) {
    case TermOp::Var: {
      auto it = env.find(t.var_name());
      if (it == env.end()) throw PreconditionError("assignment misses variable " + t.var_name());
      return it->second;
    }
    case TermOp::Atom: return Expr::atom(t.atom());
    case TermOp::True: return Expr::top();
    case TermOp::False: return Expr::bottom();
    case TermOp::Undef: return Expr::undefined();
    case TermOp::Not: return !to_expr(t.operand(), env);
    case TermOp::And:
    case TermOp::ScAnd: return to_expr(t.left(), env) & to_expr(t.right(), env);
    case TermOp::Or:
    case TermOp::ScOr: return to_expr(t.left(), env) | to_expr(t.right(), env);
  }
  throw DefectError("instantiate: unknown operator");
}

SclExpr expr_to_scl(const Expr& e) {
  switch (e.op()) {
    case Op::Atom: return SclExpr::atom(e.atom());
    case Op::True: return SclExpr::top();
    case Op::False: return SclExpr::bottom();
    case Op::Not: return SclExpr::negation(expr_to_scl(e.operand()));
    default:
      throw PreconditionError("short-circuit instances need substituted terms over atoms, T, F and !: " + print(e));
  }
}

SclExpr to_scl(const OpenTerm& t, const Assignment& env) {
  switch (t.op()) {
    case TermOp::Var: {
      auto it = env.find(t.var_name());
      if (it == env.end()) throw PreconditionError("assignment misses variable " + t.var_name());
      return expr_to_scl(it->second);
    }
    case TermOp::Atom: return SclExpr::atom(t.atom());
    case TermOp::True: return SclExpr::top();
    case TermOp::False: return SclExpr::bottom();
    case TermOp::Not: return SclExpr::negation(to_scl(t.operand(), env));
    case TermOp::ScAnd: return SclExpr::sc_and(to_scl(t.left(), env), to_scl(t.right(), env));
    case TermOp::ScOr: return SclExpr::sc_or(to_scl(t.left(), env), to_scl(t.right(), env));
    default: throw PreconditionError("not a short-circuit term: " + print(t));
  }
}

void check_assignment(const Equation& eq, const Assignment& assignment) {
  for (const std::string& v : eq.variables()) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw PreconditionError(eq.name + ": assignment misses variable " + v);
    if (eq.signature == Signature::ShortCircuit && it->second.has_u())
      throw PreconditionError(eq.name + ": short-circuit equation instantiated with a U term for " + v);
  }
}

}  // namespace

std::pair<Expr, Expr> instantiate(const Equation& eq, const Assignment& assignment) {
  check_assignment(eq, assignment);
  return {to_expr(eq.lhs, assignment), to_expr(eq.rhs, assignment)};
}

std::pair<SclExpr, SclExpr> instantiate_short_circuit(const Equation& eq, const Assignment& assignment) {
  if (eq.signature == Signature::WithU) throw PreconditionError(eq.name + ": equation mentions U");
  check_assignment(eq, assignment);
  // Equations without connectives of either kind read the same in both signatures.
  auto convert = [&](const OpenTerm& t) {
    if (mentions(t, [](TermOp o) { return o == TermOp::And || o == TermOp::Or; }))
      throw PreconditionError(eq.name + ": equation uses fully evaluated connectives");
    return to_scl(t, assignment);
  };
  return {convert(eq.lhs), convert(eq.rhs)};
}

// ---------------------------------------------------------------------------
// Validity checking

void require_compatible(const Logic& logic, const Equation& eq) {
  if (eq.signature == Signature::WithU && !logic.admits_u())
    throw PreconditionError(eq.name + " mentions U but " + logic.name() + " does not admit it");
  if (eq.signature == Signature::ShortCircuit && logic.kind() != LogicKind::SFEL)
    throw PreconditionError(eq.name + " is a short-circuit equation; it is checked under sfel only");
}

namespace {

bool memorising(LogicKind k) { return k != LogicKind::FFEL && k != LogicKind::FFELU; }

// A semantic class of closed terms: its tree under the logic's compositional
// map (fe or mfe, U allowed where the logic admits it) plus its alphabet as
// a mask over the pool atoms. Equal keys mean interchangeable instances.
struct ClassValue {
  EvalTree tree;
  std::uint64_t atoms = 0;

  friend bool operator==(const ClassValue&, const ClassValue&) = default;
};

struct ClassValueHash {
  std::size_t operator()(const ClassValue& v) const noexcept { return detail::combine(v.tree.hash(), v.atoms); }
};

class Algebra {
 public:
  Algebra(const Logic& logic, std::vector<Atom> atoms) : logic_(logic), atoms_(std::move(atoms)) {}

  const std::vector<Atom>& atoms() const { return atoms_; }

  ClassValue atom(Atom a) const {
    auto it = std::find(atoms_.begin(), atoms_.end(), a);
    if (it == atoms_.end()) throw PreconditionError("atom " + std::string(a.name()) + " is outside the pool");
    return {EvalTree::node(a, EvalTree::leaf(Leaf::T), EvalTree::leaf(Leaf::F)),
            1ULL << static_cast<unsigned>(it - atoms_.begin())};
  }

  ClassValue leaf(Leaf l) const { return {EvalTree::leaf(l), 0}; }
  ClassValue negate(const ClassValue& x) const { return {tree_not(x.tree), x.atoms}; }

  ClassValue conj(const ClassValue& x, const ClassValue& y) const { return {settle(tree_and(x.tree, y.tree)), x.atoms | y.atoms}; }
  ClassValue disj(const ClassValue& x, const ClassValue& y) const { return {settle(tree_or(x.tree, y.tree)), x.atoms | y.atoms}; }

  // The logic's tree for a closed term with class value v; beta_atoms covers
  // both sides of the equation for the static logic without a fixed alphabet.
  EvalTree finish(const ClassValue& v, std::uint64_t beta_atoms) const {
    switch (logic_.kind()) {
      case LogicKind::FFEL:
      case LogicKind::FFELU:
      case LogicKind::MFEL:
      case LogicKind::MFELU: return v.tree;
      case LogicKind::CLFEL:
        if (v.tree.leaf_kinds().contains(Leaf::U)) return EvalTree::leaf(Leaf::U);
        [[fallthrough]];
      case LogicKind::CLFEL2: return conditional(v, sorted(v.atoms));
      case LogicKind::SFEL: return conditional(v, logic_.beta() ? *logic_.beta() : sorted(beta_atoms));
    }
    throw DefectError("Algebra::finish: unknown logic");
  }

 private:
  EvalTree settle(const EvalTree& t) const { return memorising(logic_.kind()) ? memo(t) : t; }

  EvalTree conditional(const ClassValue& v, const AtomString& beta) const {
    return memo(tree_or(fe(f_tilde_sigma(beta)), v.tree));
  }

  AtomString sorted(std::uint64_t mask) const {
    std::vector<Atom> out;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (mask & (1ULL << i)) out.push_back(atoms_[i]);
    std::sort(out.begin(), out.end());
    return AtomString(std::move(out));
  }

  Logic logic_;
  std::vector<Atom> atoms_;
};

// Semantic classes of closed terms over the pool atoms, by least connective
// count. Every closed term with at most `depth` connectives has its class in
// levels[0..depth].
struct ClassPool {
  std::vector<ClassValue> values;
  std::vector<Expr> representatives;
  std::vector<std::vector<std::size_t>> levels;
};

ClassPool build_pool(const Algebra& alg, unsigned depth, bool allow_u) {
  ClassPool pool;
  std::unordered_map<ClassValue, std::size_t, ClassValueHash> index;
  pool.levels.resize(depth + 1);
  auto add = [&](unsigned level, ClassValue v, Expr rep) {
    if (index.emplace(v, pool.values.size()).second) {
      pool.values.push_back(std::move(v));
      pool.representatives.push_back(std::move(rep));
      pool.levels[level].push_back(pool.values.size() - 1);
    }
  };
  for (Atom a : alg.atoms()) add(0, alg.atom(a), Expr::atom(a));
  add(0, alg.leaf(Leaf::T), Expr::top());
  add(0, alg.leaf(Leaf::F), Expr::bottom());
  if (allow_u) add(0, alg.leaf(Leaf::U), Expr::undefined());
  for (unsigned n = 1; n <= depth; ++n) {
    for (std::size_t i : pool.levels[n - 1]) {
      ClassValue v = alg.negate(pool.values[i]);
      add(n, std::move(v), !pool.representatives[i]);
    }
    for (unsigned k = 0; k < n; ++k) {
      // Copy the index lists: add() may grow pool.levels[n] but never levels below n.
      const std::vector<std::size_t> left = pool.levels[k], right = pool.levels[n - 1 - k];
      for (std::size_t i : left)
        for (std::size_t j : right) {
          add(n, alg.conj(pool.values[i], pool.values[j]), pool.representatives[i] & pool.representatives[j]);
          add(n, alg.disj(pool.values[i], pool.values[j]), pool.representatives[i] | pool.representatives[j]);
        }
    }
  }
  return pool;
}

ClassValue eval_classes(const Algebra& alg, const OpenTerm& t, const std::map<std::string, const ClassValue*>& env) {
  switch (t.op()) {
    case TermOp::Var: return *env.at(t.var_name());
    case TermOp::Atom: return alg.atom(t.atom());
    case TermOp::True: return alg.leaf(Leaf::T);
    case TermOp::False: return alg.leaf(Leaf::F);
    case TermOp::Undef: return alg.leaf(Leaf::U);
    case TermOp::Not: return alg.negate(eval_classes(alg, t.operand(), env));
    case TermOp::And:
    case TermOp::ScAnd: return alg.conj(eval_classes(alg, t.left(), env), eval_classes(alg, t.right(), env));
    case TermOp::Or:
    case TermOp::ScOr: return alg.disj(eval_classes(alg, t.left(), env), eval_classes(alg, t.right(), env));
  }
  throw DefectError("eval_classes: unknown operator");
}

std::vector<Atom> default_atoms() { return atoms_named({"a", "b", "c"}); }

// Evaluates a closed instance directly, outside the class algebra.
Equivalence direct_check(const Logic& logic, const Expr& lhs, const Expr& rhs) { return equiv(logic, lhs, rhs); }

Verdict check_exhaustive(const Logic& logic, const Equation& eq, const Algebra& alg, const ClassPool& pool) {
  Verdict verdict{eq.name, 0, std::nullopt};
  const std::set<std::string> var_set = eq.variables();
  const std::vector<std::string> vars(var_set.begin(), var_set.end());
  const unsigned depth = static_cast<unsigned>(pool.levels.size()) - 1;
  std::vector<std::size_t> chosen(vars.size());
  std::map<std::string, const ClassValue*> env;

  auto test = [&]() -> bool {
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = &pool.values[chosen[i]];
    ClassValue l = eval_classes(alg, eq.lhs, env);
    ClassValue r = eval_classes(alg, eq.rhs, env);
    std::uint64_t beta = l.atoms | r.atoms;
    ++verdict.instances;
    if (alg.finish(l, beta) == alg.finish(r, beta)) return true;
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = pool.representatives[chosen[i]];
    auto [li, ri] = instantiate(eq, a);
    Equivalence direct = direct_check(logic, li, ri);
    if (direct.equivalent)
      throw DefectError(eq.name + ": class evaluation disagrees with direct evaluation on " + print(li) + " = " +
                        print(ri));
    verdict.counterexample = Counterexample{std::move(a), li, ri, direct.left, direct.right};
    return false;
  };

  // Distribute the connective budget over the variables, then every class
  // tuple at those levels.
  std::vector<unsigned> level(vars.size(), 0);
  auto over_classes = [&](auto&& self, std::size_t i) -> bool {
    if (i == vars.size()) return test();
    for (std::size_t c : pool.levels[level[i]]) {
      chosen[i] = c;
      if (!self(self, i + 1)) return false;
    }
    return true;
  };
  auto over_levels = [&](auto&& self, std::size_t i, unsigned budget) -> bool {
    if (i == vars.size()) return over_classes(over_classes, 0);
    for (unsigned l = 0; l <= budget; ++l) {
      level[i] = l;
      if (!self(self, i + 1, budget - l)) return false;
    }
    return true;
  };
  over_levels(over_levels, 0, depth);
  return verdict;
}

Verdict check_random(const Logic& logic, const Equation& eq, const Random& r) {
  Verdict verdict{eq.name, 0, std::nullopt};
  GenOptions opts{r.atoms.empty() ? default_atoms() : r.atoms, r.max_connectives, logic.admits_u()};
  if (r.atoms.empty() && logic.beta()) opts.atoms.assign(logic.beta()->begin(), logic.beta()->end());
  std::mt19937_64 rng(r.seed);
  std::set<std::string> vars = eq.variables();
  for (std::uint64_t k = 0; k < r.count; ++k) {
    Assignment a;
    for (const std::string& v : vars) a[v] = random_expr(rng, opts);
    auto [li, ri] = instantiate(eq, a);
    ++verdict.instances;
    Equivalence e = direct_check(logic, li, ri);
    if (!e.equivalent) {
      verdict.counterexample = Counterexample{std::move(a), li, ri, e.left, e.right};
      break;
    }
  }
  return verdict;
}

std::vector<Atom> pool_atoms(const Logic& logic, const Exhaustive& ex) {
  std::vector<Atom> atoms = ex.atoms.empty() ? atoms_named({"a", "b"}) : ex.atoms;
  if (atoms.size() > 64) throw PreconditionError("exhaustive checking supports at most 64 atoms");
  if (logic.beta())
    for (Atom a : atoms)
      if (!logic.beta()->contains(a))
        throw PreconditionError("pool atom " + std::string(a.name()) + " is outside the sfel alphabet");
  return atoms;
}

}  // namespace

Verdict check_validity(const Logic& logic, const Equation& eq, const Strategy& strategy) {
  return check_set(logic, AxiomSet{eq.name, {eq}}, strategy).verdicts.front();
}

bool SetReport::all_valid() const noexcept {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.valid_on_sample(); });
}

SetReport check_set(const Logic& logic, const AxiomSet& set, const Strategy& strategy) {
  for (const Equation& eq : set.equations) require_compatible(logic, eq);
  SetReport report{set.name, logic.name(), {}};
  if (const auto* ex = std::get_if<Exhaustive>(&strategy)) {
    Algebra alg(logic, pool_atoms(logic, *ex));
    ClassPool pool = build_pool(alg, ex->depth, logic.admits_u());
    for (const Equation& eq : set.equations) report.verdicts.push_back(check_exhaustive(logic, eq, alg, pool));
  } else {
    const Random& r = std::get<Random>(strategy);
    for (const Equation& eq : set.equations) report.verdicts.push_back(check_random(logic, eq, r));
  }
  return report;
}

std::string describe(const Verdict& v) {
  std::string out = v.equation + ": ";
  if (v.valid_on_sample()) return out + "valid-on-sample (" + std::to_string(v.instances) + " instances)";
  const Counterexample& c = *v.counterexample;
  out += "counterexample after " + std::to_string(v.instances) + " instances with";
  for (const auto& [var, e] : c.assignment) out += " " + var + " := " + print(e) + ";";
  out += "\n  lhs " + print(c.lhs) + "\n  rhs " + print(c.rhs);
  out += "\n  lhs tree " + render(c.left, TreeFormat::Json);
  out += "\n  rhs tree " + render(c.right, TreeFormat::Json);
  return out;
}

std::string describe(const SetReport& r) {
  std::string out;
  for (const Verdict& v : r.verdicts) out += describe(v) + "\n";
  std::size_t failing = static_cast<std::size_t>(
      std::count_if(r.verdicts.begin(), r.verdicts.end(), [](const Verdict& v) { return !v.valid_on_sample(); }));
  out += r.set + " under " + r.logic + ": ";
  out += failing == 0 ? "all equations valid-on-sample" : std::to_string(failing) + " with counterexamples";
  return out + "\n";
}

}  // namespace fel
