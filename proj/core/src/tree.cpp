#include "ltag/tree.hpp"

#include <functional>

namespace ltag {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Internal: return "internal";
    case NodeKind::SubstitutionSlot: return "slot";
    case NodeKind::Foot: return "foot";
    case NodeKind::Anchor: return "anchor";
  }
  return "?";
}

std::string_view to_string(TreeType type) {
  return type == TreeType::Initial ? "initial" : "auxiliary";
}

Node Node::internal(Category category, std::vector<Node> children) {
  Node n{NodeKind::Internal, std::move(category), {}, std::nullopt, {}, false, {}};
  n.children = std::move(children);
  return n;
}

Node Node::slot(Category category) {
  Node n{NodeKind::SubstitutionSlot, std::move(category), {}, std::nullopt, {}, false, {}};
  return n;
}

Node Node::foot(Category category) {
  Node n{NodeKind::Foot, std::move(category), {}, std::nullopt, {}, false, {}};
  return n;
}

Node Node::anchor(Category category, std::string surface, std::optional<LanguageTag> language) {
  if (surface.empty()) throw TagError(ErrorKind::InvalidValue, "empty anchor surface");
  for (char c : surface) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      throw TagError(ErrorKind::InvalidValue, "anchor surface contains whitespace");
    }
  }
  Node n{NodeKind::Anchor, std::move(category), {}, std::nullopt, {}, false, {}};
  n.surface = std::move(surface);
  n.language = std::move(language);
  return n;
}

bool operator==(const Node& a, const Node& b) {
  return a.kind == b.kind && a.category == b.category && a.surface == b.surface &&
         a.language == b.language && a.children == b.children;
}

std::size_t count_nodes(const Node& root) {
  std::size_t n = 1;
  for (const auto& c : root.children) n += count_nodes(c);
  return n;
}

std::size_t count_kind(const Node& root, NodeKind kind) {
  std::size_t n = root.kind == kind ? 1 : 0;
  for (const auto& c : root.children) n += count_kind(c, kind);
  return n;
}

const Node* find_node(const Node& root, const NodeAddress& address) {
  const Node* cur = &root;
  for (int index : address.path()) {
    if (index < 1 || static_cast<std::size_t>(index) > cur->children.size()) return nullptr;
    cur = &cur->children[static_cast<std::size_t>(index - 1)];
  }
  return cur;
}

Node* find_node(Node& root, const NodeAddress& address) {
  return const_cast<Node*>(find_node(static_cast<const Node&>(root), address));
}

ElementaryTree::ElementaryTree(std::string id, TreeType type, LanguageTag language, Node root)
    : id_(std::move(id)), type_(type), language_(std::move(language)), root_(std::move(root)) {
  if (id_.empty()) throw TagError(ErrorKind::InvalidValue, "empty tree id");
  int counter = 0;
  std::function<void(Node&, const NodeAddress&)> stamp = [&](Node& node, const NodeAddress& addr) {
    node.origin = Origin{-1, counter++};
    addresses_.push_back(addr);
    if (node.kind == NodeKind::Anchor) node.language = language_;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      stamp(node.children[i], addr.child(static_cast<int>(i + 1)));
    }
  };
  stamp(root_, NodeAddress::root());
}

bool ElementaryTree::anchored() const { return count_kind(root_, NodeKind::Anchor) == 1; }

const Node* ElementaryTree::anchor() const {
  const Node* found = nullptr;
  int seen = 0;
  std::function<void(const Node&)> walk = [&](const Node& n) {
    if (n.kind == NodeKind::Anchor) {
      found = &n;
      ++seen;
    }
    for (const auto& c : n.children) walk(c);
  };
  walk(root_);
  return seen == 1 ? found : nullptr;
}

const NodeAddress& ElementaryTree::address_of(int preorder_index) const {
  if (preorder_index < 0 || static_cast<std::size_t>(preorder_index) >= addresses_.size()) {
    throw TagError(ErrorKind::AddressUnresolvable,
                   "tree " + id_ + " has no node #" + std::to_string(preorder_index));
  }
  return addresses_[static_cast<std::size_t>(preorder_index)];
}

bool operator==(const ElementaryTree& a, const ElementaryTree& b) {
  return a.id_ == b.id_ && a.type_ == b.type_ && a.language_ == b.language_ && a.root_ == b.root_;
}

std::vector<Violation> validate_elementary(const ElementaryTree& tree) {
  std::vector<Violation> out;
  const Node& root = tree.root();

  if (root.kind != NodeKind::Internal) {
    out.push_back({NodeAddress::root(), "root must be an internal node"});
  }

  std::vector<NodeAddress> feet;
  std::vector<NodeAddress> anchors;
  std::size_t slots = 0;
  const Node* foot = nullptr;

  std::function<void(const Node&, const NodeAddress&)> walk = [&](const Node& n,
                                                                  const NodeAddress& addr) {
    switch (n.kind) {
      case NodeKind::Internal:
        if (n.children.empty()) out.push_back({addr, "internal node without children"});
        break;
      case NodeKind::SubstitutionSlot:
        ++slots;
        if (!n.children.empty()) out.push_back({addr, "substitution slot has children"});
        break;
      case NodeKind::Foot:
        feet.push_back(addr);
        foot = &n;
        if (!n.children.empty()) out.push_back({addr, "foot node has children"});
        break;
      case NodeKind::Anchor:
        anchors.push_back(addr);
        if (!n.children.empty()) out.push_back({addr, "anchor has children"});
        break;
    }
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      walk(n.children[i], addr.child(static_cast<int>(i + 1)));
    }
  };
  walk(root, NodeAddress::root());

  if (tree.is_auxiliary()) {
    if (feet.empty()) {
      out.push_back({NodeAddress::root(), "auxiliary tree lacks foot"});
    } else if (feet.size() > 1) {
      for (std::size_t i = 1; i < feet.size(); ++i) {
        out.push_back({feet[i], "auxiliary tree has more than one foot"});
      }
    } else if (foot->category != root.category) {
      out.push_back({feet.front(), "foot/root mismatch"});
    }
  } else {
    for (const auto& addr : feet) out.push_back({addr, "initial tree has a foot"});
  }

  if (anchors.size() > 1) {
    for (std::size_t i = 1; i < anchors.size(); ++i) {
      out.push_back({anchors[i], "more than one anchor"});
    }
  }
  if (anchors.empty() && slots == 0) {
    out.push_back({NodeAddress::root(), "unanchored tree without slots"});
  }
  return out;
}

bool DerivedTree::is_complete() const {
  return count_kind(root_, NodeKind::SubstitutionSlot) == 0 && count_kind(root_, NodeKind::Foot) == 0;
}

DerivedTree instantiate(const ElementaryTree& tree, int instance) {
  Node copy = tree.root();
  std::function<void(Node&)> tag = [&](Node& n) {
    n.origin.instance = instance;
    for (auto& c : n.children) tag(c);
  };
  tag(copy);
  return DerivedTree(std::move(copy));
}

}  // namespace ltag
