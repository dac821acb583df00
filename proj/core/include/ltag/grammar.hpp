#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "ltag/tree.hpp"

namespace ltag {

/// A set of elementary trees keyed by id. Possibly the union of several
/// monolingual lexicons.
class Grammar {
 public:
  using TreeMap = std::map<std::string, ElementaryTree, std::less<>>;

  Grammar() = default;

  /// Throws TagError(DuplicateId) when the id is taken.
  void add(ElementaryTree tree);

  const ElementaryTree* find(std::string_view id) const;
  /// Throws TagError(UnknownTree).
  const ElementaryTree& at(std::string_view id) const;

  const TreeMap& trees() const noexcept { return trees_; }
  std::size_t size() const noexcept { return trees_.size(); }
  bool empty() const noexcept { return trees_.empty(); }

  std::set<LanguageTag> languages() const;
  /// Number of trees with no lexical anchor.
  std::size_t unanchored_count() const;

  friend bool operator==(const Grammar& a, const Grammar& b) { return a.trees_ == b.trees_; }

 private:
  TreeMap trees_;
};

/// Union of two grammars; ids must be disjoint.
Grammar unite(const Grammar& a, const Grammar& b);

}  // namespace ltag
