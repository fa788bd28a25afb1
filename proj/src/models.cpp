#include "fel/models.hpp"

#include <algorithm>

#include "json.hpp"

#include "fel/error.hpp"

namespace fel {

void validate(const FiniteModel& m) {
  auto in_range = [&](int v) { return v >= 0 && v < m.size; };
  if (m.size < 1) throw PreconditionError("model size must be positive");
  if (static_cast<int>(m.neg_table.size()) != m.size) throw PreconditionError("neg table has the wrong size");
  for (const auto* table : {&m.and_table, &m.or_table}) {
    if (static_cast<int>(table->size()) != m.size) throw PreconditionError("binary table has the wrong size");
    for (const auto& row : *table) {
      if (static_cast<int>(row.size()) != m.size) throw PreconditionError("binary table row has the wrong size");
      if (!std::all_of(row.begin(), row.end(), in_range)) throw PreconditionError("table entry out of range");
    }
  }
  if (!std::all_of(m.neg_table.begin(), m.neg_table.end(), in_range))
    throw PreconditionError("neg entry out of range");
  if (!in_range(m.t_elem) || !in_range(m.f_elem) || (m.u_elem && !in_range(*m.u_elem)))
    throw PreconditionError("constant out of range");
}

std::string to_json(const FiniteModel& m) {
  nlohmann::ordered_json j;
  j["size"] = m.size;
  j["and"] = m.and_table;
  j["or"] = m.or_table;
  j["neg"] = m.neg_table;
  j["T"] = m.t_elem;
  j["F"] = m.f_elem;
  if (m.u_elem) j["U"] = *m.u_elem;
  return j.dump();
}

FiniteModel model_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("model JSON: ") + e.what());
  }
  FiniteModel m;
  try {
    m.size = j.at("size").get<int>();
    m.and_table = j.at("and").get<std::vector<std::vector<int>>>();
    m.or_table = j.at("or").get<std::vector<std::vector<int>>>();
    m.neg_table = j.at("neg").get<std::vector<int>>();
    m.t_elem = j.at("T").get<int>();
    m.f_elem = j.at("F").get<int>();
    if (j.contains("U")) m.u_elem = j.at("U").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("model JSON: ") + e.what());
  }
  validate(m);
  return m;
}

int eval_open_term(const FiniteModel& m, const OpenTerm& t, const ModelEnv& env) {
  switch (t.op()) {
    case TermOp::Var: {
      auto it = env.find(t.var_name());
      if (it == env.end()) throw PreconditionError("environment misses variable " + t.var_name());
      return it->second;
    }
    case TermOp::True: return m.t_elem;
    case TermOp::False: return m.f_elem;
    case TermOp::Undef:
      if (!m.u_elem) throw PreconditionError("model has no element for U");
      return *m.u_elem;
    case TermOp::Not: return m.neg_table[eval_open_term(m, t.operand(), env)];
    case TermOp::And: return m.and_table[eval_open_term(m, t.left(), env)][eval_open_term(m, t.right(), env)];
    case TermOp::Or: return m.or_table[eval_open_term(m, t.left(), env)][eval_open_term(m, t.right(), env)];
    case TermOp::Atom: throw PreconditionError("atoms have no interpretation in a finite model");
    case TermOp::ScAnd:
    case TermOp::ScOr: throw PreconditionError("short-circuit connectives have no interpretation in a finite model");
  }
  throw DefectError("eval_open_term: unknown operator");
}

std::optional<ModelEnv> find_violation(const FiniteModel& m, const Equation& eq) {
  const std::set<std::string> vs = eq.variables();
  const std::vector<std::string> vars(vs.begin(), vs.end());
  std::vector<int> digits(vars.size(), 0);
  ModelEnv env;
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = digits[i];
    if (eval_open_term(m, eq.lhs, env) != eval_open_term(m, eq.rhs, env)) return env;
    std::size_t k = vars.size();
    while (k > 0 && digits[k - 1] == m.size - 1) digits[--k] = 0;
    if (k == 0) return std::nullopt;
    ++digits[k - 1];
  }
}

bool check_equation_in_model(const FiniteModel& m, const Equation& eq) { return !find_violation(m, eq); }

std::string status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::Timeout: return "timeout";
  }
  return "?";
}

namespace {

// Which parts of the signature the equations mention; the others are not
// searched and stay 0.
struct Usage {
  bool t = false, f = false, u = false, neg = false, conj = false, disj = false;
};

void note_usage(const OpenTerm& t, Usage& use) {
  switch (t.op()) {
    case TermOp::True: use.t = true; return;
    case TermOp::False: use.f = true; return;
    case TermOp::Undef: use.u = true; return;
    case TermOp::Not:
      use.neg = true;
      note_usage(t.operand(), use);
      return;
    case TermOp::And:
    case TermOp::Or:
      (t.is(TermOp::And) ? use.conj : use.disj) = true;
      note_usage(t.left(), use);
      note_usage(t.right(), use);
      return;
    case TermOp::Atom: throw PreconditionError("atoms have no interpretation in a finite model");
    case TermOp::ScAnd:
    case TermOp::ScOr: throw PreconditionError("short-circuit connectives have no interpretation in a finite model");
    case TermOp::Var: return;
  }
}

struct CellLayout {
  int size = 0;
  int t = -1, f = -1, u = -1, neg = -1, conj = -1, disj = -1;
  int count = 0;

  CellLayout(int n, const Usage& use) : size(n) {
    if (use.t) t = count++;
    if (use.f) f = count++;
    if (use.u) u = count++;
    if (use.neg) { neg = count; count += n; }
    if (use.conj) { conj = count; count += n * n; }
    if (use.disj) { disj = count; count += n * n; }
  }
};

// Postfix program for one side of an equation.
struct Step {
  TermOp op;
  int a = -1, b = -1;  // earlier steps
  int var = -1;
};

struct Program {
  std::vector<Step> steps;

  int compile(const OpenTerm& t, const std::vector<std::string>& vars) {
    Step s{t.op()};
    if (t.is(TermOp::Var))
      s.var = static_cast<int>(std::find(vars.begin(), vars.end(), t.var_name()) - vars.begin());
    else if (t.is(TermOp::Not))
      s.a = compile(t.operand(), vars);
    else if (t.is_binary()) {
      s.a = compile(t.left(), vars);
      s.b = compile(t.right(), vars);
    }
    steps.push_back(s);
    return static_cast<int>(steps.size()) - 1;
  }
};

// Value of a program, or the first unassigned cell it needs.
struct Outcome {
  int value = -1;
  int blocked_on = -1;
};

Outcome run(const Program& p, const int* env, const std::vector<int>& cells, const CellLayout& lay,
            std::vector<int>& scratch) {
  scratch.resize(p.steps.size());
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const Step& s = p.steps[i];
    int cell;
    switch (s.op) {
      case TermOp::Var: scratch[i] = env[s.var]; continue;
      case TermOp::True: cell = lay.t; break;
      case TermOp::False: cell = lay.f; break;
      case TermOp::Undef: cell = lay.u; break;
      case TermOp::Not: cell = lay.neg + scratch[s.a]; break;
      case TermOp::And: cell = lay.conj + scratch[s.a] * lay.size + scratch[s.b]; break;
      case TermOp::Or: cell = lay.disj + scratch[s.a] * lay.size + scratch[s.b]; break;
      default: throw DefectError("model search: unsupported operator");
    }
    if (cells[cell] < 0) return {-1, cell};
    scratch[i] = cells[cell];
  }
  return {scratch.back(), -1};
}

enum class State : std::uint8_t { Open, Equal, Unequal };

struct Instance {
  int equation;
  bool violate;
  std::size_t env;  // offset into the environment pool
};

class Search {
 public:
  using Clock = std::chrono::steady_clock;

  Search(const std::vector<Equation>& satisfy, const std::optional<Equation>& violate, int n, Clock::time_point deadline,
         SearchStats& stats)
      : layout_(n, usage(satisfy, violate)), deadline_(deadline), stats_(stats) {
    std::vector<const Equation*> eqs;
    for (const Equation& e : satisfy) eqs.push_back(&e);
    if (violate) eqs.push_back(&*violate);
    for (std::size_t k = 0; k < eqs.size(); ++k) {
      const std::set<std::string> vs = eqs[k]->variables();
      const std::vector<std::string> vars(vs.begin(), vs.end());
      Program l, r;
      l.compile(eqs[k]->lhs, vars);
      r.compile(eqs[k]->rhs, vars);
      programs_.push_back({std::move(l), std::move(r)});
      bool is_violate = violate && k + 1 == eqs.size();
      std::vector<int> digits(vars.size(), 0);
      while (true) {
        instances_.push_back({static_cast<int>(k), is_violate, envs_.size()});
        envs_.insert(envs_.end(), digits.begin(), digits.end());
        std::size_t d = digits.size();
        while (d > 0 && digits[d - 1] == n - 1) digits[--d] = 0;
        if (d == 0) break;
        ++digits[d - 1];
      }
    }
    has_violate_ = violate.has_value();
    stats_.ground_instances += instances_.size();
  }

  // nullopt: no model at this size, or the deadline passed (see timed_out).
  std::optional<FiniteModel> run_search() {
    cells_.assign(layout_.count, -1);
    watch_.assign(layout_.count, {});
    state_.assign(instances_.size(), State::Open);
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      Eval e = evaluate(i);
      if (e.blocked_on >= 0) {
        watch_[e.blocked_on].push_back(i);
        (instances_[i].violate ? open_violate_ : open_satisfy_)++;
      } else if (!e.equal && !instances_[i].violate) {
        return std::nullopt;
      } else {
        state_[i] = e.equal ? State::Equal : State::Unequal;
        if (instances_[i].violate && !e.equal) ++witnesses_;
      }
    }
    if (has_violate_ && witnesses_ == 0 && open_violate_ == 0) return std::nullopt;
    if (satisfied()) return complete();
    if (layout_.count > 0 && descend(0)) return complete();
    return std::nullopt;
  }

  bool timed_out() const { return timed_out_; }

 private:
  struct Eval {
    bool equal = false;
    int blocked_on = -1;
  };

  struct TrailEntry {
    std::size_t instance;
    State previous;
  };

  bool satisfied() const { return open_satisfy_ == 0 && (!has_violate_ || witnesses_ > 0); }

  static Usage usage(const std::vector<Equation>& satisfy, const std::optional<Equation>& violate) {
    Usage use;
    for (const Equation& e : satisfy) {
      note_usage(e.lhs, use);
      note_usage(e.rhs, use);
    }
    if (violate) {
      note_usage(violate->lhs, use);
      note_usage(violate->rhs, use);
    }
    return use;
  }

  Eval evaluate(std::size_t i) {
    const Instance& inst = instances_[i];
    const auto& [lhs, rhs] = programs_[inst.equation];
    const int* env = envs_.data() + inst.env;
    Outcome l = run(lhs, env, cells_, layout_, scratch_);
    if (l.blocked_on >= 0) return {false, l.blocked_on};
    Outcome r = run(rhs, env, cells_, layout_, scratch_);
    if (r.blocked_on >= 0) return {false, r.blocked_on};
    return {l.value == r.value, -1};
  }

  void set_state(std::size_t i, State s) {
    State old = state_[i];
    if (old == s) return;
    trail_.push_back({i, old});
    apply(i, old, s);
  }

  void apply(std::size_t i, State from, State to) {
    bool v = instances_[i].violate;
    auto& open = v ? open_violate_ : open_satisfy_;
    if (from == State::Open) --open;
    if (to == State::Open) ++open;
    if (v && from == State::Unequal) --witnesses_;
    if (v && to == State::Unequal) ++witnesses_;
    state_[i] = to;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      TrailEntry e = trail_.back();
      trail_.pop_back();
      apply(e.instance, state_[e.instance], e.previous);
    }
  }

  // Re-evaluates the instances watching `cell`. False on a conflict.
  bool propagate(int cell) {
    std::vector<std::size_t> list;
    list.swap(watch_[cell]);
    std::vector<std::size_t> keep;
    bool ok = true;
    for (std::size_t k = 0; k < list.size(); ++k) {
      std::size_t i = list[k];
      if (!ok) {
        keep.push_back(i);
        continue;
      }
      Eval e = evaluate(i);
      if (e.blocked_on >= 0) {
        set_state(i, State::Open);
        watch_[e.blocked_on].push_back(i);
        continue;
      }
      keep.push_back(i);
      if (!e.equal && !instances_[i].violate) {
        ok = false;
        continue;
      }
      set_state(i, e.equal ? State::Equal : State::Unequal);
    }
    watch_[cell].swap(keep);
    if (ok && has_violate_ && witnesses_ == 0 && open_violate_ == 0) ok = false;
    return ok;
  }

  bool descend(int cell) {
    if ((++stats_.nodes & 1023) == 0 && Clock::now() > deadline_) timed_out_ = true;
    if (timed_out_) return false;
    for (int v = 0; v < layout_.size; ++v) {
      std::size_t mark = trail_.size();
      cells_[cell] = v;
      if (propagate(cell)) {
        if (satisfied()) return true;
        if (cell + 1 < layout_.count && descend(cell + 1)) return true;
      }
      undo_to(mark);
      if (timed_out_) break;
    }
    cells_[cell] = -1;
    return false;
  }

  // Unassigned cells are mentioned by no open instance; 0 is the least completion.
  FiniteModel complete() const {
    const int n = layout_.size;
    auto cell = [&](int base, int offset) { return base < 0 ? 0 : std::max(cells_[base + offset], 0); };
    FiniteModel m;
    m.size = n;
    m.t_elem = cell(layout_.t, 0);
    m.f_elem = cell(layout_.f, 0);
    if (layout_.u >= 0) m.u_elem = cell(layout_.u, 0);
    m.neg_table.resize(n);
    m.and_table.assign(n, std::vector<int>(n));
    m.or_table.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
      m.neg_table[a] = cell(layout_.neg, a);
      for (int b = 0; b < n; ++b) {
        m.and_table[a][b] = cell(layout_.conj, a * n + b);
        m.or_table[a][b] = cell(layout_.disj, a * n + b);
      }
    }
    return m;
  }

  CellLayout layout_;
  Clock::time_point deadline_;
  SearchStats& stats_;
  std::vector<std::pair<Program, Program>> programs_;
  std::vector<Instance> instances_;
  std::vector<int> envs_;
  bool has_violate_ = false;

  std::vector<int> cells_;
  std::vector<std::vector<std::size_t>> watch_;
  std::vector<State> state_;
  std::vector<TrailEntry> trail_;
  std::vector<int> scratch_;
  std::size_t open_satisfy_ = 0, open_violate_ = 0, witnesses_ = 0;
  bool timed_out_ = false;
};

}  // namespace

SearchResult find_model(const std::vector<Equation>& satisfy, const std::optional<Equation>& violate, int max_size,
                        std::chrono::duration<double> budget) {
  if (max_size > kMaxModelSize) throw PreconditionError("model sizes are capped at " + std::to_string(kMaxModelSize));
  auto start = Search::Clock::now();
  auto deadline = start + std::chrono::duration_cast<Search::Clock::duration>(budget);
  SearchResult result;
  for (int n = 2; n <= max_size; ++n) {
    result.stats.largest_size_tried = n;
    Search search(satisfy, violate, n, deadline, result.stats);
    std::optional<FiniteModel> m = search.run_search();
    if (m) {
      for (const Equation& e : satisfy)
        if (!check_equation_in_model(*m, e)) throw DefectError("model search returned a model violating " + e.name);
      if (violate && check_equation_in_model(*m, *violate))
        throw DefectError("model search returned a model satisfying " + violate->name);
      result.status = SearchStatus::Found;
      result.model = std::move(m);
      break;
    }
    if (search.timed_out()) {
      result.status = SearchStatus::Timeout;
      break;
    }
  }
  result.stats.seconds = std::chrono::duration<double>(Search::Clock::now() - start).count();
  return result;
}

std::vector<IndependenceEntry> independence_report(const AxiomSet& set, int max_size,
                                                   std::chrono::duration<double> budget) {
  std::vector<IndependenceEntry> out;
  if (set.equations.empty()) return out;
  auto share = budget / static_cast<double>(set.equations.size());
  for (const Equation& e : set.equations)
    out.push_back({e.name, find_model(set.without(e.name).equations, e, max_size, share)});
  return out;
}

std::vector<FiniteModel> all_models(int size, bool with_u) {
  const int n = size;
  const int cells = (with_u ? 3 : 2) + n + 2 * n * n;
  std::vector<int> digits(cells, 0);
  std::vector<FiniteModel> out;
  while (true) {
    FiniteModel m;
    m.size = n;
    int k = 0;
    m.t_elem = digits[k++];
    m.f_elem = digits[k++];
    if (with_u) m.u_elem = digits[k++];
    m.neg_table.assign(digits.begin() + k, digits.begin() + k + n);
    k += n;
    m.and_table.assign(n, std::vector<int>(n));
    m.or_table.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m.and_table[a][b] = digits[k++];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m.or_table[a][b] = digits[k++];
    out.push_back(std::move(m));
    int d = cells;
    while (d > 0 && digits[d - 1] == n - 1) digits[--d] = 0;
    if (d == 0) break;
    ++digits[d - 1];
  }
  return out;
}

}  // namespace fel
