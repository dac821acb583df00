#include "ltag/operations.hpp"

namespace ltag {

namespace {

const Node& resolve(const Node& root, const NodeAddress& address) {
  const Node* n = find_node(root, address);
  if (!n) {
    throw TagError(ErrorKind::AddressUnresolvable, "address " + address.str() + " does not resolve");
  }
  return *n;
}

Node* find_foot(Node& n) {
  if (n.kind == NodeKind::Foot) return &n;
  for (auto& c : n.children) {
    if (Node* f = find_foot(c)) return f;
  }
  return nullptr;
}

void collect_frontier(const Node& n, std::vector<FrontierItem>& out) {
  if (n.kind != NodeKind::Internal) {
    out.push_back({n.kind, &n});
    return;
  }
  for (const auto& c : n.children) collect_frontier(c, out);
}

}  // namespace

DerivedTree substitute(const DerivedTree& host, const NodeAddress& address,
                       const DerivedTree& filler) {
  const Node& site = resolve(host.root(), address);
  if (site.kind != NodeKind::SubstitutionSlot) {
    throw TagError(ErrorKind::NotASlot,
                   "node at " + address.str() + " is not a substitution slot");
  }
  const Node& froot = filler.root();
  if (froot.kind == NodeKind::SubstitutionSlot || froot.kind == NodeKind::Foot) {
    throw TagError(ErrorKind::FillerNotInitial, "filler root must be internal or an anchor");
  }
  if (count_kind(froot, NodeKind::Foot) != 0) {
    throw TagError(ErrorKind::FillerNotInitial, "filler derives from an auxiliary tree");
  }
  if (froot.category != site.category) {
    throw TagError(ErrorKind::CategoryMismatch, "category mismatch: slot " + site.category.str() +
                                                    ", filler " + froot.category.str());
  }
  DerivedTree result = host;
  *find_node(result.root(), address) = froot;
  return result;
}

DerivedTree adjoin(const DerivedTree& host, const NodeAddress& address, const DerivedTree& aux) {
  const Node& site = resolve(host.root(), address);
  if (site.kind != NodeKind::Internal) {
    throw TagError(ErrorKind::InvalidAdjunctionSite,
                   "cannot adjoin at a " + std::string(to_string(site.kind)) + " node");
  }
  if (site.adjunction_closed) {
    throw TagError(ErrorKind::DuplicateAdjunction,
                   "node at " + address.str() + " already received an adjunction");
  }
  if (count_kind(aux.root(), NodeKind::Foot) != 1) {
    throw TagError(ErrorKind::AuxiliaryWithoutFoot,
                   "adjoined tree must contain exactly one foot");
  }
  if (aux.root().category != site.category) {
    throw TagError(ErrorKind::CategoryMismatch, "category mismatch: site " + site.category.str() +
                                                    ", auxiliary root " + aux.root().category.str());
  }

  Node excised = site;
  excised.adjunction_closed = true;
  Node planted = aux.root();
  Node* foot = find_foot(planted);
  if (foot->category != site.category) {
    throw TagError(ErrorKind::CategoryMismatch, "auxiliary foot category differs from site");
  }
  *foot = std::move(excised);

  DerivedTree result = host;
  *find_node(result.root(), address) = std::move(planted);
  return result;
}

TokenSequence yield_tokens(const DerivedTree& tree) {
  TokenSequence out;
  for (const auto& item : frontier(tree.root())) {
    if (item.kind != NodeKind::Anchor) {
      throw TagError(ErrorKind::IncompleteTree, "tree still has an open " +
                                                    std::string(to_string(item.kind)));
    }
    if (!item.node->language) {
      throw TagError(ErrorKind::IncompleteTree, "anchor '" + item.node->surface + "' has no language");
    }
    out.emplace_back(item.node->surface, *item.node->language);
  }
  return out;
}

std::vector<FrontierItem> frontier(const Node& root) {
  std::vector<FrontierItem> out;
  collect_frontier(root, out);
  return out;
}

}  // namespace ltag
