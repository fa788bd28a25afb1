#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fel/axioms.hpp"

namespace fel {

// Interpretation of T, F, U, !, & and | over the domain {0, ..., size-1}.
struct FiniteModel {
  int size = 0;
  std::vector<std::vector<int>> and_table, or_table;
  std::vector<int> neg_table;
  int t_elem = 0, f_elem = 0;
  std::optional<int> u_elem;

  friend bool operator==(const FiniteModel&, const FiniteModel&) = default;
};

// Throws PreconditionError on malformed tables.
void validate(const FiniteModel& m);

// {"size", "and", "or", "neg", "T", "F", "U"?}
std::string to_json(const FiniteModel& m);
FiniteModel model_from_json(std::string_view json);

using ModelEnv = std::map<std::string, int>;

// Atoms and short-circuit connectives have no interpretation in a model.
int eval_open_term(const FiniteModel& m, const OpenTerm& t, const ModelEnv& env);

// First assignment (in counting order over the sorted variables) where the
// two sides differ.
std::optional<ModelEnv> find_violation(const FiniteModel& m, const Equation& eq);
bool check_equation_in_model(const FiniteModel& m, const Equation& eq);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t ground_instances = 0;
  int largest_size_tried = 0;
  double seconds = 0;
};

enum class SearchStatus { Found, Exhausted, Timeout };
std::string status_name(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<FiniteModel> model;
  SearchStats stats;
};

inline constexpr int kMaxModelSize = 4;

// Sizes 2..max_size in turn. Cells are filled in the order T, F, U, the
// negation table, the & table row by row, then the | table, each trying
// values 0 upwards, so the first model found is the least in that order.
// Ground instances are checked as soon as their cells are assigned.
SearchResult find_model(const std::vector<Equation>& satisfy, const std::optional<Equation>& violate, int max_size,
                        std::chrono::duration<double> budget);

struct IndependenceEntry {
  std::string axiom;
  SearchResult result;
};

// find_model(set without e, e) for each e, with the budget split evenly.
std::vector<IndependenceEntry> independence_report(const AxiomSet& set, int max_size,
                                                   std::chrono::duration<double> budget);

// Every interpretation of the given size, in the search order above.
std::vector<FiniteModel> all_models(int size, bool with_u);

}  // namespace fel
