#include "ltag/grammar.hpp"

namespace ltag {

void Grammar::add(ElementaryTree tree) {
  std::string id = tree.id();
  auto [it, inserted] = trees_.emplace(id, std::move(tree));
  if (!inserted) throw TagError(ErrorKind::DuplicateId, "duplicate tree id '" + id + "'");
}

const ElementaryTree* Grammar::find(std::string_view id) const {
  auto it = trees_.find(id);
  return it == trees_.end() ? nullptr : &it->second;
}

const ElementaryTree& Grammar::at(std::string_view id) const {
  const ElementaryTree* t = find(id);
  if (!t) throw TagError(ErrorKind::UnknownTree, "unknown tree id '" + std::string(id) + "'");
  return *t;
}

std::set<LanguageTag> Grammar::languages() const {
  std::set<LanguageTag> out;
  for (const auto& [id, tree] : trees_) out.insert(tree.language());
  return out;
}

std::size_t Grammar::unanchored_count() const {
  std::size_t n = 0;
  for (const auto& [id, tree] : trees_) {
    if (count_kind(tree.root(), NodeKind::Anchor) == 0) ++n;
  }
  return n;
}

Grammar unite(const Grammar& a, const Grammar& b) {
  Grammar out = a;
  for (const auto& [id, tree] : b.trees()) out.add(tree);
  return out;
}

}  // namespace ltag
