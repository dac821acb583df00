#pragma once

#include "ltag/tree.hpp"
#include "ltag/types.hpp"

namespace ltag {

/// Replaces the substitution slot at `address` with the filler's root.
///
/// The filler must derive from an initial tree (no foot) and its root
/// category must equal the slot's. Throws TagError otherwise.
DerivedTree substitute(const DerivedTree& host, const NodeAddress& address,
                       const DerivedTree& filler);

/// Adjoins `aux` at the internal node found at `address`.
///
/// The host subtree at the site is excised, `aux` takes its place, and the
/// excised subtree is re-attached where aux's foot was. The node that
/// received the adjunction is closed to further adjunction.
DerivedTree adjoin(const DerivedTree& host, const NodeAddress& address, const DerivedTree& aux);

/// Left-to-right anchors of a complete tree.
TokenSequence yield_tokens(const DerivedTree& tree);

/// Frontier element of a possibly incomplete tree.
struct FrontierItem {
  NodeKind kind;  // Anchor, SubstitutionSlot or Foot
  const Node* node;
};

/// Leaves of a tree in order: anchors, open slots and the foot, if any.
std::vector<FrontierItem> frontier(const Node& root);

}  // namespace ltag
