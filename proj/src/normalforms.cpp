#include "fel/normalforms.hpp"

#include <algorithm>

#include "fel/error.hpp"
#include "fel/fnf.hpp"
#include "fel/semantics.hpp"

namespace fel {

Expr h(const Expr& x, const Expr& y, const Expr& z) { return (x & y) | ((!x) & z); }

std::optional<HParts> match_h(const Expr& e) {
  if (!e.is(Op::Or) || !e.left().is(Op::And) || !e.right().is(Op::And)) return std::nullopt;
  const Expr& pos = e.left().left();
  const Expr& neg = e.right().left();
  if (!pos.is(Op::Atom) || !neg.is(Op::Not) || !(neg.operand() == pos)) return std::nullopt;
  return HParts{pos.atom(), e.left().right(), e.right().right()};
}

namespace {

Expr uniform_form(const AtomString& sigma, std::size_t from, const Expr& leaf) {
  if (from == sigma.size()) return leaf;
  Expr rest = uniform_form(sigma, from + 1, leaf);
  return h(Expr::atom(sigma[from]), rest, rest);
}

void require_repetition_free(const AtomString& sigma, const char* what) {
  if (!sigma.repetition_free())
    throw PreconditionError(std::string(what) + ": atom string has repetitions: " + sigma.to_string());
}

bool is_nf_from(const Expr& body, const AtomString& sigma, std::size_t from) {
  if (from == sigma.size()) return body.is(Op::True) || body.is(Op::False);
  auto parts = match_h(body);
  return parts && parts->atom == sigma[from] && is_nf_from(parts->if_true, sigma, from + 1) &&
         is_nf_from(parts->if_false, sigma, from + 1);
}

}  // namespace

Expr t_sigma(const AtomString& sigma) {
  require_repetition_free(sigma, "t_sigma");
  return uniform_form(sigma, 0, Expr::top());
}

Expr f_sigma(const AtomString& sigma) {
  require_repetition_free(sigma, "f_sigma");
  return uniform_form(sigma, 0, Expr::bottom());
}

Expr f_tilde_sigma(const AtomString& sigma) {
  Expr e = Expr::bottom();
  for (auto it = sigma.atoms().rbegin(); it != sigma.atoms().rend(); ++it) e = Expr::atom(*it) & e;
  return e;
}

bool is_sigma_normal_form(const Expr& body, const AtomString& sigma) {
  return sigma.repetition_free() && is_nf_from(body, sigma, 0);
}

Expr read_back(const EvalTree& tree) {
  if (tree.is_leaf()) {
    switch (tree.leaf_kind()) {
      case Leaf::T: return Expr::top();
      case Leaf::F: return Expr::bottom();
      default: throw PreconditionError("read_back: leaf " + std::string(leaf_name(tree.leaf_kind())));
    }
  }
  return h(Expr::atom(tree.atom()), read_back(tree.left()), read_back(tree.right()));
}

namespace {

// Shared tail of the read-back normalizers.
SigmaNormalForm read_back_checked(const EvalTree& tree, const AtomString& expected_sigma,
                                  const std::function<EvalTree(const Expr&)>& eval, const Expr& p) {
  auto labels = uniform_path_labels(tree);
  if (!labels || !(*labels == expected_sigma))
    throw DefectError("tree of " + print(p) + " is not perfect over " + expected_sigma.to_string());
  SigmaNormalForm nf{expected_sigma, read_back(tree)};
  if (!(eval(nf.body) == tree)) throw DefectError("normal form postcondition failed for " + print(p));
  return nf;
}

}  // namespace

SigmaNormalForm normalize_mfel(const Expr& p) {
  if (p.has_u()) throw PreconditionError("normalize_mfel needs a U-free expression: " + print(p));
  return read_back_checked(mfe(p), str_of(p), [](const Expr& e) { return mfe(e); }, p);
}

SigmaNormalForm normalize_mfelu(const Expr& p) {
  if (!p.has_u()) return normalize_mfel(p);
  EvalTree tree = mfe_u(p);
  auto sigma = uniform_path_labels(tree);
  if (tree.leaf_kinds() != LeafSet{Leaf::U} || !sigma)
    throw DefectError("mfe_u of a U-containing expression is not an all-U perfect tree: " + print(p));
  SigmaNormalForm nf{*sigma, u_sigma(*sigma)};
  if (!(mfe_u(nf.body) == tree)) throw DefectError("normalize_mfelu postcondition failed for " + print(p));
  return nf;
}

SigmaNormalForm normalize_clfel2(const Expr& p) {
  if (p.has_u()) throw PreconditionError("normalize_clfel2 needs a U-free expression: " + print(p));
  return read_back_checked(clfe(p), sorted_alphabet(p), [](const Expr& e) { return clfe(e); }, p);
}

SigmaNormalForm normalize_clfelu(const Expr& p) {
  if (p.has_u()) return {sorted_alphabet(p), Expr::undefined()};
  return normalize_clfel2(p);
}

namespace {

// body is a sigma-normal form; returns a target-normal form.
Expr permute(const Expr& body, const AtomString& sigma, const AtomString& target) {
  if (sigma.empty()) return body;
  Atom head = target[0];
  auto parts = match_h(body);
  if (!parts) throw DefectError("permute: not an h-form: " + print(body));
  AtomString rest = sigma.tail();
  if (sigma[0] == head) {
    AtomString target_rest = target.tail();
    return h(Expr::atom(head), permute(parts->if_true, rest, target_rest),
             permute(parts->if_false, rest, target_rest));
  }
  // Move head to the front of both branches, then swap it above sigma[0]:
  // h(a, h(b,z,u), h(b,v,w)) = h(b, h(a,z,v), h(a,u,w)).
  std::vector<Atom> moved{head};
  for (Atom x : rest)
    if (x != head) moved.push_back(x);
  AtomString branch_order(moved);
  auto l = match_h(permute(parts->if_true, rest, branch_order));
  auto r = match_h(permute(parts->if_false, rest, branch_order));
  if (!l || !r) throw DefectError("permute: branch lost its h-form");
  Expr a = Expr::atom(sigma[0]);
  Expr swapped = h(Expr::atom(head), h(a, l->if_true, r->if_true), h(a, l->if_false, r->if_false));
  std::vector<Atom> swapped_order{head, sigma[0]};
  for (std::size_t i = 1; i < moved.size(); ++i) swapped_order.push_back(moved[i]);
  return permute(swapped, AtomString(swapped_order), target);
}

}  // namespace

SigmaNormalForm permute_sigma_nf(const SigmaNormalForm& nf, const AtomString& target) {
  if (!target.repetition_free() || !target.is_permutation_of(nf.sigma))
    throw PreconditionError("permute_sigma_nf: " + target.to_string() + " is not a permutation of " +
                            nf.sigma.to_string());
  if (!is_sigma_normal_form(nf.body, nf.sigma))
    throw PreconditionError("permute_sigma_nf: not a U-free sigma-normal form: " + print(nf.body));
  SigmaNormalForm out{target, permute(nf.body, nf.sigma, target)};
  if (!is_sigma_normal_form(out.body, target) || !(clfe(out.body) == clfe(nf.body)))
    throw DefectError("permute_sigma_nf postcondition failed for " + print(nf.body));
  return out;
}

std::size_t count_sigma_nf(const AtomString& sigma, std::size_t bound) {
  require_repetition_free(sigma, "count_sigma_nf");
  if (sigma.size() > bound)
    throw PreconditionError("sigma-normal form enumeration is bounded to length " + std::to_string(bound));
  if (sigma.size() > 5) throw PreconditionError("count_sigma_nf: count does not fit in 64 bits");
  return std::size_t{1} << (std::size_t{1} << sigma.size());
}

namespace {

Expr build_form(const AtomString& sigma, std::size_t level, std::uint64_t bits, std::size_t first_leaf,
                std::size_t leaves) {
  if (level == sigma.size()) {
    bool t = (bits >> (leaves - 1 - first_leaf)) & 1U;
    return t ? Expr::top() : Expr::bottom();
  }
  std::size_t half = std::size_t{1} << (sigma.size() - level - 1);
  return h(Expr::atom(sigma[level]), build_form(sigma, level + 1, bits, first_leaf, leaves),
           build_form(sigma, level + 1, bits, first_leaf + half, leaves));
}

}  // namespace

std::vector<SigmaNormalForm> enumerate_sigma_nf(const AtomString& sigma, std::size_t bound) {
  std::size_t count = count_sigma_nf(sigma, bound);
  std::size_t leaves = std::size_t{1} << sigma.size();
  std::vector<SigmaNormalForm> out;
  out.reserve(count);
  for (std::uint64_t k = count; k-- > 0;) out.push_back({sigma, build_form(sigma, 0, k, 0, leaves)});
  return out;
}

}  // namespace fel
