#include "fel/atom.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "fel/error.hpp"

namespace fel {
namespace {

struct Interner {
  std::shared_mutex mu;
  std::deque<std::string> names;  // element addresses stay stable
  std::unordered_map<std::string_view, std::uint32_t> ids;
};

Interner& interner() {
  static Interner in;
  return in;
}

}  // namespace

bool Atom::valid_name(std::string_view name) noexcept {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Atom::Atom(std::string_view name) {
  if (!valid_name(name)) throw PreconditionError("invalid atom name '" + std::string(name) + "'");
  Interner& in = interner();
  {
    std::shared_lock lock(in.mu);
    if (auto it = in.ids.find(name); it != in.ids.end()) {
      id_ = it->second;
      name_ = &in.names[id_];
      return;
    }
  }
  std::unique_lock lock(in.mu);
  if (auto it = in.ids.find(name); it != in.ids.end()) {
    id_ = it->second;
  } else {
    id_ = static_cast<std::uint32_t>(in.names.size());
    in.names.emplace_back(name);
    in.ids.emplace(in.names.back(), id_);
  }
  name_ = &in.names[id_];
}

AtomString AtomString::parse(std::string_view text) {
  std::vector<Atom> atoms;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    atoms.emplace_back(item);
    pos = comma + 1;
    if (comma + 1 == text.size()) throw PreconditionError("trailing comma in atom list");
  }
  return AtomString(std::move(atoms));
}

bool AtomString::contains(Atom a) const noexcept {
  return std::find(atoms_.begin(), atoms_.end(), a) != atoms_.end();
}

bool AtomString::repetition_free() const noexcept {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    for (std::size_t j = i + 1; j < atoms_.size(); ++j)
      if (atoms_[i] == atoms_[j]) return false;
  return true;
}

bool AtomString::ordered() const noexcept {
  for (std::size_t i = 1; i < atoms_.size(); ++i)
    if (!(atoms_[i - 1] < atoms_[i])) return false;
  return true;
}

AtomString AtomString::tail() const {
  if (atoms_.empty()) return {};
  return AtomString(std::vector<Atom>(atoms_.begin() + 1, atoms_.end()));
}

AtomString AtomString::appended(Atom a) const {
  std::vector<Atom> v = atoms_;
  v.push_back(a);
  return AtomString(std::move(v));
}

AtomString AtomString::dedup() const {
  std::vector<Atom> v;
  for (Atom a : atoms_)
    if (std::find(v.begin(), v.end(), a) == v.end()) v.push_back(a);
  return AtomString(std::move(v));
}

bool AtomString::is_permutation_of(const AtomString& other) const {
  return std::is_permutation(atoms_.begin(), atoms_.end(), other.atoms_.begin(), other.atoms_.end());
}

std::string AtomString::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) out += ',';
    out += atoms_[i].name();
  }
  return out;
}

}  // namespace fel
