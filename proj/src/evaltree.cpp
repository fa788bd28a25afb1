#include "fel/evaltree.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fel/error.hpp"
#include "fel/hash.hpp"
#include "json.hpp"

namespace fel {
namespace {

constexpr std::array<std::string_view, 6> kLeafNames = {"T", "F", "U", "D", "D1", "D2"};

std::shared_ptr<const TreeNode> make_leaf_node(Leaf k) {
  auto n = std::make_shared<TreeNode>();
  n->leaf = k;
  n->hash = detail::mix(0x1eafULL + static_cast<std::uint64_t>(k));
  n->kinds = LeafSet{k};
  return n;
}

const std::array<std::shared_ptr<const TreeNode>, 6>& leaf_nodes() {
  static const std::array<std::shared_ptr<const TreeNode>, 6> nodes = {
      make_leaf_node(Leaf::T),  make_leaf_node(Leaf::F),  make_leaf_node(Leaf::U),
      make_leaf_node(Leaf::D),  make_leaf_node(Leaf::D1), make_leaf_node(Leaf::D2)};
  return nodes;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

// Trees above this many leaves are traversed with per-call memo tables so
// that shared subtrees are visited once.
constexpr std::uint64_t kShareThreshold = 64;

}  // namespace

std::string_view leaf_name(Leaf k) noexcept { return kLeafNames[static_cast<std::size_t>(k)]; }

std::optional<Leaf> leaf_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kLeafNames.size(); ++i)
    if (kLeafNames[i] == name) return static_cast<Leaf>(i);
  return std::nullopt;
}

EvalTree::EvalTree() : node_(leaf_nodes()[0]) {}

EvalTree EvalTree::leaf(Leaf k) { return EvalTree(leaf_nodes()[static_cast<std::size_t>(k)]); }

EvalTree EvalTree::node(Atom a, EvalTree l, EvalTree r) {
  auto n = std::make_shared<TreeNode>();
  n->atom = a;
  n->hash = detail::combine(detail::combine(detail::mix(a.id() + 0x5eedULL), l.hash()), r.hash());
  n->leaves = saturating_add(l.leaf_count(), r.leaf_count());
  n->atom_mask = l.atom_mask() | r.atom_mask() | (1ULL << (a.id() % 64));
  n->depth = 1 + std::max(l.depth(), r.depth());
  n->kinds = l.leaf_kinds() | r.leaf_kinds();
  n->left = std::move(l);
  n->right = std::move(r);
  return EvalTree(std::move(n));
}

bool EvalTree::is_leaf() const noexcept { return !node_->atom.has_value(); }

Leaf EvalTree::leaf_kind() const {
  if (!is_leaf()) throw DefectError("EvalTree::leaf_kind on a node");
  return node_->leaf;
}

Atom EvalTree::atom() const {
  if (is_leaf()) throw DefectError("EvalTree::atom on a leaf");
  return *node_->atom;
}

const EvalTree& EvalTree::left() const {
  if (is_leaf()) throw DefectError("EvalTree::left on a leaf");
  return *node_->left;
}

const EvalTree& EvalTree::right() const {
  if (is_leaf()) throw DefectError("EvalTree::right on a leaf");
  return *node_->right;
}

std::uint64_t EvalTree::hash() const noexcept { return node_->hash; }
std::uint32_t EvalTree::depth() const noexcept { return node_->depth; }
LeafSet EvalTree::leaf_kinds() const noexcept { return node_->kinds; }
std::uint64_t EvalTree::leaf_count() const noexcept { return node_->leaves; }
std::uint64_t EvalTree::atom_mask() const noexcept { return node_->atom_mask; }

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<const TreeNode*, const TreeNode*>& p) const noexcept {
    return detail::combine(reinterpret_cast<std::uintptr_t>(p.first), reinterpret_cast<std::uintptr_t>(p.second));
  }
};
using EqualPairs = std::unordered_set<std::pair<const TreeNode*, const TreeNode*>, PairHash>;

bool quick_differ(const TreeNode* a, const TreeNode* b) {
  return a->hash != b->hash || a->depth != b->depth || a->leaves != b->leaves || a->kinds != b->kinds ||
         a->atom.has_value() != b->atom.has_value();
}

bool equal_shared(const EvalTree& x, const EvalTree& y, EqualPairs& known) {
  const TreeNode* a = x.identity();
  const TreeNode* b = y.identity();
  if (a == b) return true;
  if (quick_differ(a, b)) return false;
  if (!a->atom) return a->leaf == b->leaf;
  if (*a->atom != *b->atom) return false;
  if (a->leaves > kShareThreshold && known.count({a, b})) return true;
  bool eq = equal_shared(*a->left, *b->left, known) && equal_shared(*a->right, *b->right, known);
  if (eq && a->leaves > kShareThreshold) known.insert({a, b});
  return eq;
}

bool equal_plain(const EvalTree& x, const EvalTree& y) {
  const TreeNode* a = x.identity();
  const TreeNode* b = y.identity();
  if (a == b) return true;
  if (quick_differ(a, b)) return false;
  if (!a->atom) return a->leaf == b->leaf;
  return *a->atom == *b->atom && equal_plain(*a->left, *b->left) && equal_plain(*a->right, *b->right);
}

}  // namespace

bool operator==(const EvalTree& a, const EvalTree& b) {
  if (a.leaf_count() <= kShareThreshold) return equal_plain(a, b);
  EqualPairs known;
  return equal_shared(a, b, known);
}

namespace {

EvalTree replace_plain(const EvalTree& x, const LeafMap& map) {
  if (!x.leaf_kinds().intersects(map.domain())) return x;
  if (x.is_leaf()) return *map[x.leaf_kind()];
  return EvalTree::node(x.atom(), replace_plain(x.left(), map), replace_plain(x.right(), map));
}

EvalTree replace_shared(const EvalTree& x, const LeafMap& map,
                        std::unordered_map<const TreeNode*, EvalTree>& memo) {
  if (!x.leaf_kinds().intersects(map.domain())) return x;
  if (x.leaf_count() <= kShareThreshold) return replace_plain(x, map);
  if (auto it = memo.find(x.identity()); it != memo.end()) return it->second;
  EvalTree r = EvalTree::node(x.atom(), replace_shared(x.left(), map, memo), replace_shared(x.right(), map, memo));
  memo.emplace(x.identity(), r);
  return r;
}

}  // namespace

EvalTree replace_leaves(const EvalTree& x, const LeafMap& map) {
  if (x.leaf_count() <= kShareThreshold) return replace_plain(x, map);
  std::unordered_map<const TreeNode*, EvalTree> memo;
  return replace_shared(x, map, memo);
}

namespace {

// Returns the uniform label sequence in reverse (leaf to root).
std::optional<std::vector<Atom>> uniform_rev(const EvalTree& x,
                                             std::unordered_map<const TreeNode*, std::optional<std::vector<Atom>>>& memo) {
  if (x.is_leaf()) return std::vector<Atom>{};
  if (auto it = memo.find(x.identity()); it != memo.end()) return it->second;
  std::optional<std::vector<Atom>> result;
  auto l = uniform_rev(x.left(), memo);
  if (l) {
    auto r = uniform_rev(x.right(), memo);
    if (r && *l == *r) {
      l->push_back(x.atom());
      result = std::move(l);
    }
  }
  memo.emplace(x.identity(), result);
  return result;
}

struct SubtreeAtoms {
  std::vector<Atom> atoms;  // sorted by id
  bool repeats = false;
};

const SubtreeAtoms& subtree_atoms(const EvalTree& x, std::unordered_map<const TreeNode*, SubtreeAtoms>& memo) {
  if (auto it = memo.find(x.identity()); it != memo.end()) return it->second;
  SubtreeAtoms info;
  if (!x.is_leaf()) {
    const SubtreeAtoms& l = subtree_atoms(x.left(), memo);
    const SubtreeAtoms& r = subtree_atoms(x.right(), memo);
    auto by_id = [](Atom p, Atom q) { return p.id() < q.id(); };
    std::set_union(l.atoms.begin(), l.atoms.end(), r.atoms.begin(), r.atoms.end(), std::back_inserter(info.atoms),
                   by_id);
    info.repeats = l.repeats || r.repeats || std::binary_search(info.atoms.begin(), info.atoms.end(), x.atom(), by_id);
    info.atoms.insert(std::lower_bound(info.atoms.begin(), info.atoms.end(), x.atom(), by_id), x.atom());
    if (info.repeats) info.atoms.erase(std::unique(info.atoms.begin(), info.atoms.end()), info.atoms.end());
  }
  return memo.emplace(x.identity(), std::move(info)).first->second;
}

}  // namespace

std::optional<AtomString> uniform_path_labels(const EvalTree& x) {
  std::unordered_map<const TreeNode*, std::optional<std::vector<Atom>>> memo;
  auto rev = uniform_rev(x, memo);
  if (!rev) return std::nullopt;
  std::reverse(rev->begin(), rev->end());
  return AtomString(std::move(*rev));
}

bool has_repeated_atom_on_some_path(const EvalTree& x) {
  std::unordered_map<const TreeNode*, SubtreeAtoms> memo;
  return subtree_atoms(x, memo).repeats;
}

namespace {

void render_ascii(const EvalTree& x, std::size_t indent, std::string_view edge, bool middle, std::string& out) {
  out.append(indent, ' ');
  out += edge;
  if (x.is_leaf()) {
    out += leaf_name(x.leaf_kind());
    out += '\n';
    return;
  }
  out += x.atom().name();
  out += '\n';
  render_ascii(x.left(), indent + 2, "L: ", middle, out);
  if (middle) out.append(indent + 2, ' ') += "M: U\n";
  render_ascii(x.right(), indent + 2, "R: ", middle, out);
}

void render_dot(const EvalTree& x, bool middle, std::size_t& next, std::string& out) {
  std::size_t id = next++;
  if (x.is_leaf()) {
    out += "  n" + std::to_string(id) + " [label=\"" + std::string(leaf_name(x.leaf_kind())) + "\", shape=box];\n";
    return;
  }
  out += "  n" + std::to_string(id) + " [label=\"" + std::string(x.atom().name()) + "\"];\n";
  std::size_t l = next;
  out += "  n" + std::to_string(id) + " -> n" + std::to_string(l) + " [label=\"L\"];\n";
  render_dot(x.left(), middle, next, out);
  if (middle) {
    std::size_t m = next++;
    out += "  n" + std::to_string(m) + " [label=\"U\", shape=box];\n";
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(m) + " [label=\"M\"];\n";
  }
  std::size_t r = next;
  out += "  n" + std::to_string(id) + " -> n" + std::to_string(r) + " [label=\"R\"];\n";
  render_dot(x.right(), middle, next, out);
}

nlohmann::ordered_json to_json(const EvalTree& x) {
  nlohmann::ordered_json j;
  if (x.is_leaf()) {
    j["leaf"] = std::string(leaf_name(x.leaf_kind()));
  } else {
    j["atom"] = std::string(x.atom().name());
    j["left"] = to_json(x.left());
    j["right"] = to_json(x.right());
  }
  return j;
}

EvalTree from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw PreconditionError("tree JSON: expected an object");
  if (j.contains("leaf")) {
    if (j.size() != 1 || !j["leaf"].is_string()) throw PreconditionError("tree JSON: malformed leaf");
    auto k = leaf_from_name(j["leaf"].get<std::string>());
    if (!k) throw PreconditionError("tree JSON: unknown leaf kind '" + j["leaf"].get<std::string>() + "'");
    return EvalTree::leaf(*k);
  }
  if (j.size() != 3 || !j.contains("atom") || !j.contains("left") || !j.contains("right") || !j["atom"].is_string())
    throw PreconditionError("tree JSON: node needs exactly atom, left and right");
  return EvalTree::node(Atom(j["atom"].get<std::string>()), from_json(j["left"]), from_json(j["right"]));
}

}  // namespace

std::string render(const EvalTree& x, TreeFormat format, RenderOptions opts) {
  std::string out;
  switch (format) {
    case TreeFormat::Ascii: render_ascii(x, 0, "", opts.show_middle_u, out); break;
    case TreeFormat::Dot: {
      out = "digraph evaltree {\n";
      std::size_t next = 0;
      render_dot(x, opts.show_middle_u, next, out);
      out += "}\n";
      break;
    }
    case TreeFormat::Json: out = to_json(x).dump(); break;
  }
  return out;
}

EvalTree tree_from_json(std::string_view json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError(std::string("tree JSON: ") + e.what());
  }
  return from_json(j);
}

}  // namespace fel
