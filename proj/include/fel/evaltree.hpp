#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "fel/atom.hpp"

namespace fel {

// D is the single placeholder of T-*-decompositions, D1/D2 the pair used by
// conjunction and disjunction decompositions.
enum class Leaf : std::uint8_t { T, F, U, D, D1, D2 };

std::string_view leaf_name(Leaf k) noexcept;
std::optional<Leaf> leaf_from_name(std::string_view name) noexcept;

class LeafSet {
 public:
  constexpr LeafSet() = default;
  constexpr LeafSet(std::initializer_list<Leaf> ks) {
    for (Leaf k : ks) bits_ |= bit(k);
  }
  static constexpr LeafSet from_bits(std::uint8_t b) { LeafSet s; s.bits_ = b; return s; }
  static constexpr LeafSet placeholders() { return {Leaf::D, Leaf::D1, Leaf::D2}; }

  constexpr bool contains(Leaf k) const { return bits_ & bit(k); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool intersects(LeafSet o) const { return bits_ & o.bits_; }
  constexpr bool subset_of(LeafSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr LeafSet operator|(LeafSet o) const { return from_bits(bits_ | o.bits_); }

  friend constexpr bool operator==(LeafSet, LeafSet) = default;

 private:
  static constexpr std::uint8_t bit(Leaf k) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k)); }
  std::uint8_t bits_ = 0;
};

struct TreeNode;

// Immutable binary evaluation tree. Subtrees may be physically shared; all
// observable behaviour (equality, hashing, rendering) is that of the plain
// expanded tree. In three-valued trees the middle branch of every node is the
// leaf U and is not stored.
class EvalTree {
 public:
  EvalTree();  // leaf T

  static EvalTree leaf(Leaf k);
  static EvalTree node(Atom a, EvalTree left, EvalTree right);

  bool is_leaf() const noexcept;
  Leaf leaf_kind() const;         // leaves only
  Atom atom() const;              // nodes only
  const EvalTree& left() const;   // nodes only
  const EvalTree& right() const;  // nodes only

  std::uint64_t hash() const noexcept;
  std::uint32_t depth() const noexcept;
  LeafSet leaf_kinds() const noexcept;
  // Saturates at UINT64_MAX.
  std::uint64_t leaf_count() const noexcept;
  // Bit (id % 64) is set for every atom id labelling a node; a clear bit
  // proves absence.
  std::uint64_t atom_mask() const noexcept;
  const TreeNode* identity() const noexcept { return node_.get(); }

  friend bool operator==(const EvalTree& a, const EvalTree& b);

 private:
  explicit EvalTree(std::shared_ptr<const TreeNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TreeNode> node_;
};

struct TreeNode {
  std::optional<Atom> atom;
  Leaf leaf = Leaf::T;
  std::optional<EvalTree> left, right;  // empty in leaves
  std::uint64_t hash = 0;
  std::uint64_t leaves = 1;
  std::uint64_t atom_mask = 0;
  std::uint32_t depth = 0;
  LeafSet kinds;
};

// Partial map from leaf kinds to replacement trees.
class LeafMap {
 public:
  LeafMap() = default;
  LeafMap& set(Leaf k, EvalTree t) {
    images_[static_cast<std::size_t>(k)] = std::move(t);
    domain_ = domain_ | LeafSet{k};
    return *this;
  }
  const std::optional<EvalTree>& operator[](Leaf k) const { return images_[static_cast<std::size_t>(k)]; }
  LeafSet domain() const { return domain_; }

 private:
  std::array<std::optional<EvalTree>, 6> images_;
  LeafSet domain_;
};

// Simultaneous leaf replacement.
EvalTree replace_leaves(const EvalTree& x, const LeafMap& map);
inline EvalTree replace_leaf(const EvalTree& x, Leaf k, const EvalTree& y) {
  return replace_leaves(x, LeafMap().set(k, y));
}

inline std::uint32_t depth(const EvalTree& x) { return x.depth(); }
inline LeafSet leaf_kinds(const EvalTree& x) { return x.leaf_kinds(); }

// Label sequence shared by all root-to-leaf paths, if there is one.
std::optional<AtomString> uniform_path_labels(const EvalTree& x);
bool has_repeated_atom_on_some_path(const EvalTree& x);

enum class TreeFormat { Ascii, Dot, Json };

struct RenderOptions {
  bool show_middle_u = false;  // ascii and dot only
};

std::string render(const EvalTree& x, TreeFormat format, RenderOptions opts = {});
EvalTree tree_from_json(std::string_view json);

}  // namespace fel

template <>
struct std::hash<fel::EvalTree> {
  std::size_t operator()(const fel::EvalTree& t) const noexcept { return t.hash(); }
};
