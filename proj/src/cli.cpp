#include "fel/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "fel/axioms.hpp"
#include "fel/error.hpp"
#include "fel/fnf.hpp"
#include "fel/invert.hpp"
#include "fel/models.hpp"
#include "fel/normalforms.hpp"
#include "fel/scl.hpp"
#include "fel/semantics.hpp"

namespace fel {
namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

// Input error detected after argument parsing.
struct UsageError : Error {
  using Error::Error;
};

std::uint64_t parse_number(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size())
    throw UsageError("invalid number for " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

// "k1=v1,k2=v2" with every key required.
std::map<std::string, std::uint64_t> parse_pairs(std::string_view text, std::initializer_list<std::string> keys) {
  std::map<std::string, std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw UsageError("expected key=value, got '" + std::string(item) + "'");
    std::string key(item.substr(0, eq));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw UsageError("unknown key '" + key + "'");
    out[key] = parse_number(item.substr(eq + 1), key);
    start = end + 1;
  }
  for (const std::string& k : keys)
    if (!out.count(k)) throw UsageError("missing key '" + k + "'");
  return out;
}

std::vector<Atom> first_atoms(std::uint64_t k) {
  if (k > 26) throw UsageError("at most 26 pool atoms");
  std::vector<Atom> out;
  for (std::uint64_t i = 0; i < k; ++i) out.emplace_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

Logic make_logic(const std::string& name, const std::string& alphabet) {
  std::optional<AtomString> beta;
  if (!alphabet.empty()) beta = AtomString::parse(alphabet);
  // "clfelu" is accepted as another name for the U-admitting static logic.
  return Logic::from_name(name == "clfelu" ? "clfel" : name, std::move(beta));
}

TreeFormat parse_format(const std::string& f) {
  if (f == "ascii") return TreeFormat::Ascii;
  if (f == "dot") return TreeFormat::Dot;
  if (f == "json") return TreeFormat::Json;
  throw UsageError("unknown format '" + f + "'");
}

std::string read_tree_text(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw UsageError("cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

std::vector<Equation> equations_of(const std::string& sets) {
  std::vector<Equation> out;
  std::stringstream ss(sets);
  std::string name;
  while (std::getline(ss, name, ',')) {
    AxiomSet s = axiom_set(name);
    out.insert(out.end(), s.equations.begin(), s.equations.end());
  }
  if (out.empty()) throw UsageError("--satisfy names no equations");
  return out;
}

void print_search(std::ostream& out, const std::string& label, const SearchResult& r) {
  out << label << status_name(r.status);
  if (r.model) out << " " << to_json(*r.model);
  out << " (sizes up to " << r.stats.largest_size_tried << ", " << r.stats.nodes << " nodes)\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Evaluation-tree semantics for fully evaluated left-sequential logics", "fel");
  app.require_subcommand(1);
  bool fully_parenthesized = false;
  app.add_flag("--fully-parenthesized", fully_parenthesized, "Print expressions with every binary subterm in parentheses");

  std::function<int()> action;
  auto opts = [&] { return PrintOptions{fully_parenthesized}; };

  std::string expr1, expr2, logic_name, alphabet, format = "ascii";

  auto* parse_cmd = app.add_subcommand("parse", "Parse and print an expression");
  parse_cmd->add_option("EXPR", expr1)->required();
  parse_cmd->callback([&] {
    action = [&] {
      out << print(parse(expr1), opts()) << "\n";
      return kOk;
    };
  });

  auto* tree_cmd = app.add_subcommand("tree", "Print the evaluation tree of an expression");
  tree_cmd->add_option("--logic", logic_name)->required();
  tree_cmd->add_option("--alphabet", alphabet, "Comma-separated sorted alphabet (sfel only)");
  tree_cmd->add_option("--format", format)->check(CLI::IsMember({"ascii", "dot", "json"}));
  tree_cmd->add_option("EXPR", expr1)->required();
  tree_cmd->callback([&] {
    action = [&] {
      Logic logic = make_logic(logic_name, alphabet);
      TreeFormat f = parse_format(format);
      out << render(evaluate(logic, parse(expr1)), f) << (f == TreeFormat::Json ? "\n" : "");
      return kOk;
    };
  });

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide equivalence of two expressions");
  equiv_cmd->add_option("--logic", logic_name)->required();
  equiv_cmd->add_option("--alphabet", alphabet, "Comma-separated sorted alphabet (sfel only)");
  equiv_cmd->add_option("EXPR1", expr1)->required();
  equiv_cmd->add_option("EXPR2", expr2)->required();
  equiv_cmd->callback([&] {
    action = [&] {
      Logic logic = make_logic(logic_name, alphabet);
      Equivalence e = equiv(logic, parse(expr1), parse(expr2));
      if (e.equivalent) {
        out << "equivalent\n";
        return kOk;
      }
      out << "NOT equivalent\n";
      out << "left:\n" << render(e.left, TreeFormat::Ascii) << "right:\n" << render(e.right, TreeFormat::Ascii);
      return kNegative;
    };
  });

  auto* norm_cmd = app.add_subcommand("normalize", "Normal form of an expression");
  norm_cmd->add_option("--logic", logic_name)->required();
  norm_cmd->add_option("EXPR", expr1)->required();
  norm_cmd->callback([&] {
    action = [&] {
      Logic logic = make_logic(logic_name, "");
      Expr p = parse(expr1);
      logic.require_admissible(p);
      auto print_nf = [&](const SigmaNormalForm& nf) {
        out << "sigma: " << nf.sigma.to_string() << "\n" << print(nf.body, opts()) << "\n";
      };
      switch (logic.kind()) {
        case LogicKind::FFEL: out << print(normalize_ffel(p), opts()) << "\n"; break;
        case LogicKind::FFELU: out << print(normalize_ffelu(p), opts()) << "\n"; break;
        case LogicKind::MFEL: print_nf(normalize_mfel(p)); break;
        case LogicKind::MFELU: print_nf(normalize_mfelu(p)); break;
        case LogicKind::CLFEL2: print_nf(normalize_clfel2(p)); break;
        case LogicKind::CLFEL: print_nf(normalize_clfelu(p)); break;
        case LogicKind::SFEL: throw UsageError("normalize does not support sfel");
      }
      return kOk;
    };
  });

  std::string tree_text;
  auto* invert_cmd = app.add_subcommand("invert", "Normal form whose tree is the given JSON tree (@FILE reads a file)");
  invert_cmd->add_option("TREE_JSON", tree_text)->required();
  invert_cmd->callback([&] {
    action = [&] {
      EvalTree x = tree_from_json(read_tree_text(tree_text));
      try {
        out << print(g(x), opts()) << "\n";
        return kOk;
      } catch (const NotInImage& e) {
        out << "not in the image of fe: " << e.what() << "\n";
        return kNegative;
      }
    };
  });

  std::string set_name, exhaustive, random;
  auto* axioms_cmd = app.add_subcommand("axioms", "Check an axiom set on closed instances");
  axioms_cmd->add_option("--logic", logic_name, "Defaults to the set's own logic");
  axioms_cmd->add_option("--set", set_name)->required();
  auto* ex_opt = axioms_cmd->add_option("--exhaustive", exhaustive, "atoms=K,depth=D (default atoms=2,depth=3)");
  axioms_cmd->add_option("--random", random, "n=N,seed=S")->excludes(ex_opt);
  axioms_cmd->callback([&] {
    action = [&] {
      AxiomSet set = axiom_set(set_name);
      Logic logic = logic_name.empty() ? own_logic(set_name) : make_logic(logic_name, "");
      Strategy strategy = Exhaustive{first_atoms(2), 3};
      if (!exhaustive.empty()) {
        auto kv = parse_pairs(exhaustive, {"atoms", "depth"});
        strategy = Exhaustive{first_atoms(kv["atoms"]), static_cast<unsigned>(kv["depth"])};
      } else if (!random.empty()) {
        auto kv = parse_pairs(random, {"n", "seed"});
        strategy = Random{kv["n"], kv["seed"], {}, 4};
      }
      SetReport report = check_set(logic, set, strategy);
      out << describe(report);
      return report.all_valid() ? kOk : kNegative;
    };
  });

  std::string satisfy, drop;
  int max_size = 3;
  double budget = 60;
  bool independence = false;
  auto* models_cmd = app.add_subcommand("models", "Search for finite models");
  models_cmd->add_option("--satisfy", satisfy, "SET[,SET...]")->required();
  models_cmd->add_option("--drop", drop, "Axiom to drop from the sets and violate");
  models_cmd->add_option("--max-size", max_size)->check(CLI::Range(2, kMaxModelSize));
  models_cmd->add_option("--budget", budget, "Seconds")->check(CLI::PositiveNumber);
  models_cmd->add_flag("--independence", independence, "Drop and violate each axiom in turn");
  models_cmd->callback([&] {
    action = [&] {
      std::vector<Equation> eqs = equations_of(satisfy);
      std::chrono::duration<double> secs(budget);
      if (independence) {
        AxiomSet set{satisfy, eqs};
        bool all = true;
        for (const IndependenceEntry& e : independence_report(set, max_size, secs)) {
          print_search(out, e.axiom + ": ", e.result);
          all = all && e.result.status == SearchStatus::Found;
        }
        return all ? kOk : kNegative;
      }
      std::optional<Equation> violate;
      if (!drop.empty()) {
        AxiomSet set{satisfy, eqs};
        violate = set.find(drop);
        eqs = set.without(drop).equations;
      }
      SearchResult r = find_model(eqs, violate, max_size, secs);
      print_search(out, "", r);
      return r.status == SearchStatus::Found ? kOk : kNegative;
    };
  });

  std::string sigma;
  bool count_only = false;
  auto* enum_cmd = app.add_subcommand("enumerate", "List the sigma-normal forms");
  enum_cmd->add_option("--sigma", sigma, "Comma-separated repetition-free atoms")->required();
  enum_cmd->add_flag("--count-only", count_only);
  enum_cmd->callback([&] {
    action = [&] {
      AtomString s = AtomString::parse(sigma);
      if (count_only) {
        out << count_sigma_nf(s) << "\n";
        return kOk;
      }
      for (const SigmaNormalForm& nf : enumerate_sigma_nf(s)) out << print(nf.body, opts()) << "\n";
      return kOk;
    };
  });

  auto* translate_cmd = app.add_subcommand("translate", "Short-circuit translation t");
  translate_cmd->add_option("EXPR", expr1)->required();
  translate_cmd->callback([&] {
    action = [&] {
      out << print(translate_t(parse(expr1)), opts()) << "\n";
      return kOk;
    };
  });

  auto* bridge_cmd = app.add_subcommand("bridge-check", "Compare fe(P) with se(t(P))");
  bridge_cmd->add_option("EXPR", expr1)->required();
  bridge_cmd->callback([&] {
    action = [&] {
      Expr p = parse(expr1);
      bool ok = bridge_check(p);
      out << (ok ? "fe(P) = se(t(P))" : "fe(P) != se(t(P))") << "\n";
      return ok ? kOk : kNegative;
    };
  });

  std::vector<std::string> argv_store{"fel"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    return action();
  } catch (const DefectError& e) {
    err << "internal error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace fel
