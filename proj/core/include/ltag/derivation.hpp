#pragma once

#include <string>
#include <vector>

#include "ltag/grammar.hpp"
#include "ltag/tree.hpp"

namespace ltag {

enum class Operation { Substitute, Adjoin };

std::string_view to_string(Operation op);  // "subst" / "adjoin"

struct Attachment;

/// Derivation tree: an elementary tree plus everything attached to it.
///
/// Attachment addresses are Gorn addresses into the elementary tree named by
/// `tree_id`, not into the derived tree.
struct Derivation {
  std::string tree_id;
  std::vector<Attachment> attachments;
};

struct Attachment {
  Operation operation;
  NodeAddress address;
  Derivation child;
};

/// Flat view of one derivation record.
struct DerivationStep {
  int index;  // preorder position; 0 is the root tree
  int host;   // index of the host step, -1 for the root
  std::string tree_id;
  Operation operation;  // meaningless for the root
  NodeAddress address;
  int depth;
};

/// Sorts attachments recursively by (address, operation, child tree id).
void canonicalize(Derivation& d);
Derivation canonical(Derivation d);

/// Canonical one-line form, e.g. `(hi_par (subst 1 (en_time)))`.
std::string to_sexpr(const Derivation& d);

/// One record per line, children indented by two spaces:
///   hi_par
///     en_time subst @1
std::string to_display(const Derivation& d);

std::vector<DerivationStep> flatten(const Derivation& d);
std::size_t tree_count(const Derivation& d);

bool operator==(const Derivation& a, const Derivation& b);
bool operator<(const Derivation& a, const Derivation& b);

/// Rebuilds the derived tree. Attachments are applied deepest address first
/// so that earlier operations never move a later operation's site.
DerivedTree replay(const Grammar& grammar, const Derivation& d);

}  // namespace ltag
