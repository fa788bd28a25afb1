#include "fel/semantics.hpp"

#include <unordered_map>

#include "fel/error.hpp"
#include "fel/hash.hpp"
#include "fel/normalforms.hpp"

namespace fel {

Logic Logic::sfel(std::optional<AtomString> beta) {
  if (beta && !beta->ordered())
    throw PreconditionError("sfel alphabet must be sorted and repetition-free: " + beta->to_string());
  Logic l(LogicKind::SFEL);
  l.beta_ = std::move(beta);
  return l;
}

Logic Logic::from_name(std::string_view name, std::optional<AtomString> beta) {
  if (name == "sfel") return sfel(std::move(beta));
  if (beta) throw PreconditionError("an alphabet is only meaningful for sfel");
  if (name == "ffel") return ffel();
  if (name == "ffelu") return ffelu();
  if (name == "mfel") return mfel();
  if (name == "mfelu") return mfelu();
  if (name == "clfel2") return clfel2();
  if (name == "clfel") return clfel();
  throw PreconditionError("unknown logic '" + std::string(name) + "'");
}

bool Logic::admits_u() const noexcept {
  return kind_ == LogicKind::FFELU || kind_ == LogicKind::MFELU || kind_ == LogicKind::CLFEL;
}

std::string Logic::name() const {
  switch (kind_) {
    case LogicKind::FFEL: return "ffel";
    case LogicKind::FFELU: return "ffelu";
    case LogicKind::MFEL: return "mfel";
    case LogicKind::MFELU: return "mfelu";
    case LogicKind::CLFEL2: return "clfel2";
    case LogicKind::CLFEL: return "clfel";
    case LogicKind::SFEL: return "sfel";
  }
  return "?";
}

void Logic::require_admissible(const Expr& p) const {
  if (!admits_u() && p.has_u()) throw PreconditionError(name() + " does not admit U: " + print(p));
  if (kind_ == LogicKind::SFEL && beta_) {
    std::string missing;
    for (Atom a : alphabet(p))
      if (!beta_->contains(a)) missing += (missing.empty() ? "" : ",") + std::string(a.name());
    if (!missing.empty())
      throw PreconditionError("atoms outside the sfel alphabet " + beta_->to_string() + ": " + missing);
  }
}

EvalTree tree_not(const EvalTree& x) {
  return replace_leaves(x, LeafMap().set(Leaf::T, EvalTree::leaf(Leaf::F)).set(Leaf::F, EvalTree::leaf(Leaf::T)));
}

EvalTree tree_and(const EvalTree& x, const EvalTree& y) {
  EvalTree y_false = replace_leaf(y, Leaf::T, EvalTree::leaf(Leaf::F));
  return replace_leaves(x, LeafMap().set(Leaf::T, y).set(Leaf::F, y_false));
}

EvalTree tree_or(const EvalTree& x, const EvalTree& y) {
  EvalTree y_true = replace_leaf(y, Leaf::F, EvalTree::leaf(Leaf::T));
  return replace_leaves(x, LeafMap().set(Leaf::T, y_true).set(Leaf::F, y));
}

namespace {

// fe(P)[T -> on_true, F -> on_false], built top-down so that only nodes of the
// result are allocated. Agrees with the leaf-replacement clauses of
// tree_not/tree_and/tree_or by the composition law for replacements.
struct ContKey {
  const ExprNode* expr;
  const TreeNode* on_true;
  const TreeNode* on_false;
  bool operator==(const ContKey&) const = default;
};

struct ContKeyHash {
  std::size_t operator()(const ContKey& k) const noexcept {
    return detail::combine(detail::combine(reinterpret_cast<std::uintptr_t>(k.expr),
                                           reinterpret_cast<std::uintptr_t>(k.on_true)),
                           reinterpret_cast<std::uintptr_t>(k.on_false));
  }
};

class FullEvaluator {
 public:
  // Large inputs share subresults; small ones are cheaper without a table.
  explicit FullEvaluator(const Expr& root) : shared_(root.size() > 24) {}

  EvalTree run(const Expr& p, const EvalTree& on_true, const EvalTree& on_false) {
    switch (p.op()) {
      case Op::True: return on_true;
      case Op::False: return on_false;
      case Op::Undef: return EvalTree::leaf(Leaf::U);
      case Op::Atom: return EvalTree::node(p.atom(), on_true, on_false);
      case Op::Not: return run(p.operand(), on_false, on_true);
      case Op::And:
      case Op::Or: break;
    }
    if (!shared_) return binary(p, on_true, on_false);
    ContKey key{p.identity(), on_true.identity(), on_false.identity()};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    EvalTree r = binary(p, on_true, on_false);
    memo_.emplace(key, r);
    return r;
  }

 private:
  EvalTree binary(const Expr& p, const EvalTree& on_true, const EvalTree& on_false) {
    if (p.is(Op::And)) {
      return run(p.left(), run(p.right(), on_true, on_false), run(p.right(), on_false, on_false));
    }
    return run(p.left(), run(p.right(), on_true, on_true), run(p.right(), on_true, on_false));
  }

  bool shared_;
  // Keys point into the input expression and into trees held as values or
  // as leaf constants, so they stay valid for the evaluator's lifetime.
  std::unordered_map<ContKey, EvalTree, ContKeyHash> memo_;
};

EvalTree full_eval(const Expr& p) {
  FullEvaluator ev(p);
  return ev.run(p, EvalTree::leaf(Leaf::T), EvalTree::leaf(Leaf::F));
}

// A continuation of the evaluator: either a leaf, or "evaluate expr, then
// continue with on_true or on_false". Frames live on the call stack.
struct Cont {
  const Expr* expr = nullptr;
  Leaf leaf = Leaf::T;
  const Cont* on_true = nullptr;
  const Cont* on_false = nullptr;
};

bool matches_expr(const Expr& p, const Cont& on_true, const Cont& on_false, const EvalTree& x);

bool matches(const Cont& k, const EvalTree& x) {
  if (k.expr) return matches_expr(*k.expr, *k.on_true, *k.on_false, x);
  return x.is_leaf() && x.leaf_kind() == k.leaf;
}

bool matches_expr(const Expr& p, const Cont& on_true, const Cont& on_false, const EvalTree& x) {
  switch (p.op()) {
    case Op::True: return matches(on_true, x);
    case Op::False: return matches(on_false, x);
    case Op::Undef: return x.is_leaf() && x.leaf_kind() == Leaf::U;
    case Op::Atom:
      return !x.is_leaf() && x.atom() == p.atom() && matches(on_true, x.left()) && matches(on_false, x.right());
    case Op::Not: return matches_expr(p.operand(), on_false, on_true, x);
    case Op::And: {
      Cont t{&p.right(), Leaf::T, &on_true, &on_false};
      Cont f{&p.right(), Leaf::T, &on_false, &on_false};
      return matches_expr(p.left(), t, f, x);
    }
    case Op::Or: {
      Cont t{&p.right(), Leaf::T, &on_true, &on_true};
      Cont f{&p.right(), Leaf::T, &on_true, &on_false};
      return matches_expr(p.left(), t, f, x);
    }
  }
  return false;
}

void require_u_free(const Expr& p, const char* what) {
  if (p.has_u()) throw PreconditionError(std::string(what) + " needs a U-free expression: " + print(p));
}

using Memo = std::unordered_map<const TreeNode*, EvalTree>;

bool mentions(const EvalTree& x, Atom a) { return x.atom_mask() & (1ULL << (a.id() % 64)); }

constexpr std::uint64_t kSmallTree = 64;

EvalTree prune_plain(Atom a, const EvalTree& x, bool keep_left) {
  if (x.is_leaf() || !mentions(x, a)) return x;
  if (x.atom() == a) return prune_plain(a, keep_left ? x.left() : x.right(), keep_left);
  return EvalTree::node(x.atom(), prune_plain(a, x.left(), keep_left), prune_plain(a, x.right(), keep_left));
}

EvalTree memo_plain(const EvalTree& x) {
  if (x.is_leaf()) return x;
  return EvalTree::node(x.atom(), memo_plain(prune_plain(x.atom(), x.left(), true)),
                        memo_plain(prune_plain(x.atom(), x.right(), false)));
}

// Keeps the left (keep_left) or right child of every a-node.
EvalTree prune(Atom a, const EvalTree& x, bool keep_left, Memo& cache) {
  if (x.is_leaf() || !mentions(x, a)) return x;
  if (x.leaf_count() <= kSmallTree) return prune_plain(a, x, keep_left);
  if (auto it = cache.find(x.identity()); it != cache.end()) return it->second;
  EvalTree r = x.atom() == a ? prune(a, keep_left ? x.left() : x.right(), keep_left, cache)
                             : EvalTree::node(x.atom(), prune(a, x.left(), keep_left, cache),
                                              prune(a, x.right(), keep_left, cache));
  cache.emplace(x.identity(), r);
  return r;
}

// Inputs here are mostly fresh prune results, so the cache keeps its keys
// alive to rule out address reuse.
using KeyedMemo = std::unordered_map<const TreeNode*, std::pair<EvalTree, EvalTree>>;

EvalTree memo_rec(const EvalTree& x, KeyedMemo& cache) {
  if (x.leaf_count() <= kSmallTree) return memo_plain(x);
  if (auto it = cache.find(x.identity()); it != cache.end()) return it->second.second;
  Memo lc, rc;
  EvalTree l = memo_rec(prune(x.atom(), x.left(), true, lc), cache);
  EvalTree r = memo_rec(prune(x.atom(), x.right(), false, rc), cache);
  EvalTree result = EvalTree::node(x.atom(), std::move(l), std::move(r));
  cache.emplace(x.identity(), std::pair{x, result});
  return result;
}

}  // namespace

EvalTree fe(const Expr& p) {
  require_u_free(p, "fe");
  return full_eval(p);
}

EvalTree fe_u(const Expr& p) { return full_eval(p); }

bool fe_u_equals(const Expr& p, const EvalTree& x) {
  if (x.leaf_count() > 4096) return full_eval(p) == x;
  const Cont t{nullptr, Leaf::T}, f{nullptr, Leaf::F};
  return matches_expr(p, t, f, x);
}

EvalTree la(Atom a, const EvalTree& x) {
  Memo cache;
  return prune(a, x, true, cache);
}

EvalTree ra(Atom a, const EvalTree& x) {
  Memo cache;
  return prune(a, x, false, cache);
}

EvalTree memo(const EvalTree& x) {
  if (x.leaf_kinds().intersects(LeafSet::placeholders()))
    throw PreconditionError("memo: tree contains placeholder leaves");
  KeyedMemo cache;
  return memo_rec(x, cache);
}

EvalTree mfe(const Expr& p) { return memo(fe(p)); }
EvalTree mfe_u(const Expr& p) { return memo(fe_u(p)); }

EvalTree clfe(const Expr& p) {
  require_u_free(p, "clfe");
  return mfe(f_tilde_sigma(sorted_alphabet(p)) | p);
}

EvalTree clfe_u(const Expr& p) {
  if (p.has_u()) return EvalTree::leaf(Leaf::U);
  return clfe(p);
}

EvalTree sfe(const AtomString& beta, const Expr& p) {
  Logic::sfel(beta).require_admissible(p);
  return mfe(f_tilde_sigma(beta) | p);
}

EvalTree evaluate(const Logic& logic, const Expr& p) {
  logic.require_admissible(p);
  switch (logic.kind()) {
    case LogicKind::FFEL: return fe(p);
    case LogicKind::FFELU: return fe_u(p);
    case LogicKind::MFEL: return mfe(p);
    case LogicKind::MFELU: return mfe_u(p);
    case LogicKind::CLFEL2: return clfe(p);
    case LogicKind::CLFEL: return clfe_u(p);
    case LogicKind::SFEL: return sfe(logic.beta() ? *logic.beta() : sorted_alphabet(p), p);
  }
  throw DefectError("evaluate: unknown logic");
}

Equivalence equiv(const Logic& logic, const Expr& p, const Expr& q) {
  Logic effective = logic;
  if (logic.kind() == LogicKind::SFEL && !logic.beta()) {
    std::set<Atom> atoms = alphabet(p);
    atoms.merge(alphabet(q));
    effective = Logic::sfel(AtomString(std::vector<Atom>(atoms.begin(), atoms.end())));
  }
  EvalTree l = evaluate(effective, p);
  EvalTree r = evaluate(effective, q);
  bool eq = l == r;
  return {eq, std::move(l), std::move(r)};
}

}  // namespace fel
