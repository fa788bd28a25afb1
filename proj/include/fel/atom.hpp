#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace fel {

// Interned atom identifier. Equality is by identity, ordering is byte-wise
// lexicographic on the name.
class Atom {
 public:
  explicit Atom(std::string_view name);

  static bool valid_name(std::string_view name) noexcept;

  std::string_view name() const noexcept { return *name_; }
  std::uint32_t id() const noexcept { return id_; }

  friend bool operator==(Atom a, Atom b) noexcept { return a.id_ == b.id_; }
  friend std::strong_ordering operator<=>(Atom a, Atom b) noexcept {
    if (a.id_ == b.id_) return std::strong_ordering::equal;
    return a.name() < b.name() ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  std::uint32_t id_;
  const std::string* name_;
};

// Finite sequence of atoms.
class AtomString {
 public:
  AtomString() = default;
  explicit AtomString(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  AtomString(std::initializer_list<Atom> atoms) : atoms_(atoms) {}

  // Comma-separated names; the empty string is the empty sequence.
  static AtomString parse(std::string_view text);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  Atom operator[](std::size_t i) const { return atoms_[i]; }
  auto begin() const noexcept { return atoms_.begin(); }
  auto end() const noexcept { return atoms_.end(); }

  bool contains(Atom a) const noexcept;
  bool repetition_free() const noexcept;
  bool ordered() const noexcept;  // repetition-free and strictly increasing

  AtomString tail() const;
  AtomString appended(Atom a) const;
  // First occurrences only, in order.
  AtomString dedup() const;
  bool is_permutation_of(const AtomString& other) const;

  std::string to_string() const;  // comma-separated

  friend bool operator==(const AtomString&, const AtomString&) = default;

 private:
  std::vector<Atom> atoms_;
};

}  // namespace fel

template <>
struct std::hash<fel::Atom> {
  std::size_t operator()(fel::Atom a) const noexcept { return a.id(); }
};
