#include "fel/invert.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

#include "fel/error.hpp"
#include "fel/semantics.hpp"

namespace fel {
namespace {

const EvalTree kT = EvalTree::leaf(Leaf::T);
const EvalTree kF = EvalTree::leaf(Leaf::F);

// Distinct subtrees in preorder of first occurrence.
std::vector<EvalTree> distinct_subtrees(const EvalTree& x) {
  std::vector<EvalTree> order;
  std::unordered_set<EvalTree> seen;
  std::vector<EvalTree> stack{x};
  while (!stack.empty()) {
    EvalTree t = stack.back();
    stack.pop_back();
    if (!seen.insert(t).second) continue;
    order.push_back(t);
    if (!t.is_leaf()) {
      stack.push_back(t.right());
      stack.push_back(t.left());
    }
  }
  return order;
}

// Replaces every maximal occurrence of first (second) by the placeholder
// first_leaf (second_leaf). Fails if a T or F leaf remains uncovered. Since
// placeholder images have equal size, occurrences can neither nest nor
// overlap, so the top-down cut is the only candidate context.
std::optional<EvalTree> cut(const EvalTree& x, const EvalTree& first, Leaf first_leaf,
                            const std::optional<EvalTree>& second, Leaf second_leaf) {
  if (x == first) return EvalTree::leaf(first_leaf);
  if (second && x == *second) return EvalTree::leaf(second_leaf);
  if (x.is_leaf()) return std::nullopt;
  auto l = cut(x.left(), first, first_leaf, second, second_leaf);
  if (!l) return std::nullopt;
  auto r = cut(x.right(), first, first_leaf, second, second_leaf);
  if (!r) return std::nullopt;
  return EvalTree::node(x.atom(), std::move(*l), std::move(*r));
}

void require_two_valued(const EvalTree& x, const char* what) {
  if (!x.leaf_kinds().subset_of({Leaf::T, Leaf::F}))
    throw PreconditionError(std::string(what) + ": tree must have only T and F leaves");
}

enum class Shape { Conjunction, Disjunction };

std::vector<Decomposition> find_candidates(const EvalTree& x, Shape shape) {
  require_two_valued(x, shape == Shape::Conjunction ? "find_ccd" : "find_cdd");
  std::vector<Decomposition> out;
  for (const EvalTree& z : distinct_subtrees(x)) {
    if (!z.leaf_kinds().contains(Leaf::T) || !z.leaf_kinds().contains(Leaf::F)) continue;
    EvalTree d1 = shape == Shape::Conjunction ? z : replace_leaf(z, Leaf::F, kT);
    EvalTree d2 = shape == Shape::Conjunction ? replace_leaf(z, Leaf::T, kF) : z;
    auto y = cut(x, d1, Leaf::D1, d2, Leaf::D2);
    if (!y || !y->leaf_kinds().contains(Leaf::D1) || !y->leaf_kinds().contains(Leaf::D2)) continue;
    Decomposition d{*y, z};
    EvalTree back = shape == Shape::Conjunction ? reassemble_conjunction(d) : reassemble_disjunction(d);
    if (!(back == x)) throw DefectError("candidate decomposition does not reassemble");
    out.push_back(std::move(d));
  }
  return out;
}

Decomposition minimal_core(const std::vector<Decomposition>& candidates, const char* what) {
  if (candidates.empty()) throw NoDecomposition(std::string("no ") + what);
  auto depth_of = [](const Decomposition& d) { return d.core.depth(); };
  auto best = std::min_element(candidates.begin(), candidates.end(),
                               [&](const auto& a, const auto& b) { return depth_of(a) < depth_of(b); });
  auto ties = std::count_if(candidates.begin(), candidates.end(),
                            [&](const auto& d) { return depth_of(d) == depth_of(*best); });
  if (ties > 1) throw NotInImage(std::string("ambiguous ") + what + ": several minimal-depth cores");
  return *best;
}

bool only(const EvalTree& x, Leaf k) { return x.leaf_kinds() == LeafSet{k}; }

}  // namespace

EvalTree reassemble_conjunction(const Decomposition& d) {
  return replace_leaves(d.context, LeafMap().set(Leaf::D1, d.core).set(Leaf::D2, replace_leaf(d.core, Leaf::T, kF)));
}

EvalTree reassemble_disjunction(const Decomposition& d) {
  return replace_leaves(d.context, LeafMap().set(Leaf::D1, replace_leaf(d.core, Leaf::F, kT)).set(Leaf::D2, d.core));
}

EvalTree reassemble_tstar(const Decomposition& d) { return replace_leaf(d.context, Leaf::D, d.core); }

std::vector<Decomposition> find_ccd(const EvalTree& x) { return find_candidates(x, Shape::Conjunction); }
std::vector<Decomposition> find_cdd(const EvalTree& x) { return find_candidates(x, Shape::Disjunction); }

Decomposition cd(const EvalTree& x) { return minimal_core(find_ccd(x), "conjunction decomposition"); }
Decomposition dd(const EvalTree& x) { return minimal_core(find_cdd(x), "disjunction decomposition"); }

bool has_nontrivial_decomposition(const EvalTree& x) {
  for (const EvalTree& w : distinct_subtrees(x)) {
    if (w == x) continue;
    auto v = cut(x, w, Leaf::D, std::nullopt, Leaf::D);
    if (v && !v->is_leaf()) return true;
  }
  return false;
}

Decomposition tsd(const EvalTree& x) {
  require_two_valued(x, "tsd");
  if (!x.leaf_kinds().contains(Leaf::T) || !x.leaf_kinds().contains(Leaf::F))
    throw NoDecomposition("tsd: tree needs both T and F leaves");
  std::vector<Decomposition> found;
  for (const EvalTree& z : distinct_subtrees(x)) {
    if (!z.leaf_kinds().contains(Leaf::T) || !z.leaf_kinds().contains(Leaf::F)) continue;
    auto y = cut(x, z, Leaf::D, std::nullopt, Leaf::D);
    if (!y || has_nontrivial_decomposition(z)) continue;
    found.push_back({*y, z});
  }
  if (found.empty()) throw NoDecomposition("no T-*-decomposition");
  if (found.size() > 1) throw NotInImage("ambiguous T-*-decomposition");
  if (!(reassemble_tstar(found.front()) == x)) throw DefectError("tsd does not reassemble");
  return found.front();
}

Expr g_t(const EvalTree& x) {
  if (x.is_leaf()) {
    if (x.leaf_kind() != Leaf::T) throw NotInImage("g_t: leaf other than T");
    return Expr::top();
  }
  return Expr::atom(x.atom()) | g_t(x.left());
}

Expr g_f(const EvalTree& x) {
  if (x.is_leaf()) {
    if (x.leaf_kind() != Leaf::F) throw NotInImage("g_f: leaf other than F");
    return Expr::bottom();
  }
  return Expr::atom(x.atom()) & g_f(x.right());
}

Expr g_ell(const EvalTree& x) {
  if (x.is_leaf()) throw NotInImage("g_ell: leaf");
  Expr a = Expr::atom(x.atom());
  if (only(x.left(), Leaf::T)) return a & g_t(x.left());
  if (only(x.right(), Leaf::T)) return (!a) & g_t(x.right());
  throw NotInImage("g_ell: neither branch has only T leaves");
}

Expr g_star(const EvalTree& x) {
  auto ccds = find_ccd(x);
  auto cdds = find_cdd(x);
  if (!ccds.empty() && !cdds.empty()) throw NotInImage("g_star: tree has both a ccd and a cdd");
  if (!ccds.empty()) {
    Decomposition d = minimal_core(ccds, "conjunction decomposition");
    EvalTree head = replace_leaves(d.context, LeafMap().set(Leaf::D1, kT).set(Leaf::D2, kF));
    return g_star(head) & g_star(d.core);
  }
  if (!cdds.empty()) {
    Decomposition d = minimal_core(cdds, "disjunction decomposition");
    EvalTree head = replace_leaves(d.context, LeafMap().set(Leaf::D1, kT).set(Leaf::D2, kF));
    return g_star(head) | g_star(d.core);
  }
  return g_ell(x);
}

Expr g(const EvalTree& x) {
  if (!x.leaf_kinds().subset_of({Leaf::T, Leaf::F})) throw NotInImage("g: tree has leaves other than T and F");
  Expr result;
  if (only(x, Leaf::T)) {
    result = g_t(x);
  } else if (only(x, Leaf::F)) {
    result = g_f(x);
  } else {
    Decomposition d = tsd(x);
    result = g_t(replace_leaf(d.context, Leaf::D, kT)) & g_star(d.core);
  }
  if (!(fe(result) == x)) throw NotInImage("g: tree is not the image of a normal form");
  return result;
}

}  // namespace fel
