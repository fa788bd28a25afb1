#include "fel/generate.hpp"


namespace fel {
namespace {

Expr random_shape(std::mt19937_64& rng, const GenOptions& opts, unsigned n) {
  if (n == 0) {
    std::size_t consts = opts.allow_u ? 3 : 2;
    std::uniform_int_distribution<std::size_t> pick(0, opts.atoms.size() + consts - 1);
    std::size_t k = pick(rng);
    if (k < opts.atoms.size()) return Expr::atom(opts.atoms[k]);
    k -= opts.atoms.size();
    return k == 0 ? Expr::top() : k == 1 ? Expr::bottom() : Expr::undefined();
  }
  std::uniform_int_distribution<int> op(0, 2);
  int o = op(rng);
  if (o == 0) return !random_shape(rng, opts, n - 1);
  std::uniform_int_distribution<unsigned> split(0, n - 1);
  unsigned k = split(rng);
  Expr l = random_shape(rng, opts, k);
  Expr r = random_shape(rng, opts, n - 1 - k);
  return o == 1 ? l & r : l | r;
}

}  // namespace

Expr random_expr(std::mt19937_64& rng, const GenOptions& opts) {
  std::uniform_int_distribution<unsigned> count(0, opts.max_connectives);
  return random_shape(rng, opts, count(rng));
}

std::vector<std::vector<Expr>> exprs_by_connectives(const std::vector<Expr>& leaves, unsigned max_connectives) {
  std::vector<std::vector<Expr>> out(max_connectives + 1);
  out[0] = leaves;
  for (unsigned n = 1; n <= max_connectives; ++n) {
    for (const Expr& e : out[n - 1]) out[n].push_back(!e);
    for (unsigned i = 0; i < n; ++i)
      for (const Expr& l : out[i])
        for (const Expr& r : out[n - 1 - i]) {
          out[n].push_back(l & r);
          out[n].push_back(l | r);
        }
  }
  return out;
}

std::vector<Expr> enumerate_fnf(const std::vector<Atom>& atoms, unsigned max_size) {
  using Level = std::vector<Expr>;
  std::size_t n_max = max_size + 1;
  std::vector<Level> tterm(n_max), fterm(n_max), lterm(n_max), conj(n_max), disj(n_max), star(n_max);
  if (max_size >= 1) {
    tterm[1] = {Expr::top()};
    fterm[1] = {Expr::bottom()};
  }
  for (std::size_t n = 3; n < n_max; ++n)
    for (Atom a : atoms) {
      for (const Expr& t : tterm[n - 2]) tterm[n].push_back(Expr::atom(a) | t);
      for (const Expr& f : fterm[n - 2]) fterm[n].push_back(Expr::atom(a) & f);
    }
  for (std::size_t n = 3; n < n_max; ++n)
    for (Atom a : atoms) {
      for (const Expr& t : tterm[n - 2]) lterm[n].push_back(Expr::atom(a) & t);
      if (n >= 4)
        for (const Expr& t : tterm[n - 3]) lterm[n].push_back((!Expr::atom(a)) & t);
    }
  for (std::size_t n = 1; n < n_max; ++n) {
    conj[n] = lterm[n];
    disj[n] = lterm[n];
    for (std::size_t i = 1; i + 2 <= n; ++i)
      for (const Expr& s : star[i]) {
        for (const Expr& d : disj[n - 1 - i]) conj[n].push_back(s & d);
        for (const Expr& c : conj[n - 1 - i]) disj[n].push_back(s | c);
      }
    star[n] = conj[n];
    star[n].insert(star[n].end(), disj[n].begin() + static_cast<std::ptrdiff_t>(lterm[n].size()), disj[n].end());
  }
  std::vector<Expr> out;
  for (std::size_t n = 1; n < n_max; ++n) {
    out.insert(out.end(), tterm[n].begin(), tterm[n].end());
    out.insert(out.end(), fterm[n].begin(), fterm[n].end());
    for (std::size_t i = 1; i + 2 <= n; ++i)
      for (const Expr& t : tterm[i])
        for (const Expr& s : star[n - 1 - i]) out.push_back(t & s);
  }
  return out;
}

std::vector<Atom> atoms_named(std::initializer_list<const char*> names) {
  std::vector<Atom> out;
  for (const char* n : names) out.emplace_back(n);
  return out;
}

}  // namespace fel
