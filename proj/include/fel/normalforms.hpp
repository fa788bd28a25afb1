#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "fel/atom.hpp"
#include "fel/evaltree.hpp"
#include "fel/expr.hpp"

namespace fel {

struct SigmaNormalForm {
  AtomString sigma;
  Expr body;

  friend bool operator==(const SigmaNormalForm&, const SigmaNormalForm&) = default;
};

// (x & y) | (!x & z)
Expr h(const Expr& x, const Expr& y, const Expr& z);

struct HParts {
  Atom atom;
  Expr if_true, if_false;
};
// Recognises h(a, y, z) for an atom a.
std::optional<HParts> match_h(const Expr& e);

Expr t_sigma(const AtomString& sigma);
Expr f_sigma(const AtomString& sigma);
Expr f_tilde_sigma(const AtomString& sigma);  // a1 & (a2 & ... & F)

// Grammar check for U-free sigma-normal forms.
bool is_sigma_normal_form(const Expr& body, const AtomString& sigma);

// Node(a, L, R) becomes h(a, read(L), read(R)); leaves T and F are kept.
Expr read_back(const EvalTree& tree);

SigmaNormalForm normalize_mfel(const Expr& p);
SigmaNormalForm normalize_mfelu(const Expr& p);
SigmaNormalForm normalize_clfel2(const Expr& p);
SigmaNormalForm normalize_clfelu(const Expr& p);

SigmaNormalForm permute_sigma_nf(const SigmaNormalForm& nf, const AtomString& target);

inline constexpr std::size_t kSigmaEnumerationBound = 4;

// All 2^(2^|sigma|) U-free sigma-normal forms. The leaf pattern, read as a
// binary number with the leftmost leaf most significant and T = 1, descends
// from all-T to all-F.
std::vector<SigmaNormalForm> enumerate_sigma_nf(const AtomString& sigma,
                                                std::size_t bound = kSigmaEnumerationBound);
std::size_t count_sigma_nf(const AtomString& sigma, std::size_t bound = kSigmaEnumerationBound);

}  // namespace fel
