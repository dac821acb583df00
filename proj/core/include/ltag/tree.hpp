#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ltag/types.hpp"

namespace ltag {

enum class NodeKind { Internal, SubstitutionSlot, Foot, Anchor };

enum class TreeType { Initial, Auxiliary };

std::string_view to_string(NodeKind kind);
std::string_view to_string(TreeType type);

/// Which elementary-tree instance (and which of its nodes, in preorder) a
/// derived-tree node came from. Instance -1 means "not instantiated".
struct Origin {
  int instance = -1;
  int node = -1;
};

/// One node of an elementary or derived tree.
///
/// Anchor nodes carry the category of their parent (they are the lexical
/// daughter of a preterminal) plus the surface and language of the word.
struct Node {
  NodeKind kind = NodeKind::Internal;
  Category category;
  std::string surface;
  std::optional<LanguageTag> language;
  std::vector<Node> children;
  // Set once a node has received an adjunction; further adjunction is refused.
  bool adjunction_closed = false;
  Origin origin;

  static Node internal(Category category, std::vector<Node> children);
  static Node slot(Category category);
  static Node foot(Category category);
  static Node anchor(Category category, std::string surface,
                     std::optional<LanguageTag> language = std::nullopt);

  bool is_leaf() const noexcept { return children.empty(); }

  /// Structural equality: kind, category, surface, language and children.
  /// Origins and adjunction flags are bookkeeping and are ignored.
  friend bool operator==(const Node& a, const Node& b);
};

std::size_t count_nodes(const Node& root);
std::size_t count_kind(const Node& root, NodeKind kind);

/// Resolves a Gorn address; nullptr when it does not exist.
const Node* find_node(const Node& root, const NodeAddress& address);
Node* find_node(Node& root, const NodeAddress& address);

class ElementaryTree {
 public:
  /// Builds the tree as given; it is not validated here (see
  /// validate_elementary). Anchors are stamped with the tree language.
  ElementaryTree(std::string id, TreeType type, LanguageTag language, Node root);

  const std::string& id() const noexcept { return id_; }
  TreeType type() const noexcept { return type_; }
  bool is_auxiliary() const noexcept { return type_ == TreeType::Auxiliary; }
  const LanguageTag& language() const noexcept { return language_; }
  const Node& root() const noexcept { return root_; }

  bool anchored() const;
  /// The unique anchor, if there is exactly one.
  const Node* anchor() const;

  std::size_t node_count() const noexcept { return addresses_.size(); }
  /// Address of the node with the given preorder index.
  const NodeAddress& address_of(int preorder_index) const;

  /// Structural equality including id, type and language.
  friend bool operator==(const ElementaryTree& a, const ElementaryTree& b);

 private:
  std::string id_;
  TreeType type_;
  LanguageTag language_;
  Node root_;
  std::vector<NodeAddress> addresses_;
};

struct Violation {
  NodeAddress address;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every violated well-formedness rule; empty means the tree is valid.
std::vector<Violation> validate_elementary(const ElementaryTree& tree);

/// Intermediate or final result of composing elementary trees.
class DerivedTree {
 public:
  explicit DerivedTree(Node root) : root_(std::move(root)) {}

  const Node& root() const noexcept { return root_; }
  Node& root() noexcept { return root_; }

  /// No substitution slot and no foot left.
  bool is_complete() const;
  std::size_t node_count() const { return count_nodes(root_); }

  friend bool operator==(const DerivedTree& a, const DerivedTree& b) { return a.root_ == b.root_; }

 private:
  Node root_;
};

/// Copies an elementary tree into a derived tree, tagging every node with
/// the given instance number.
DerivedTree instantiate(const ElementaryTree& tree, int instance = 0);

}  // namespace ltag
