#include "ltag/derivation.hpp"

#include <algorithm>

#include "ltag/operations.hpp"

namespace ltag {

std::string_view to_string(Operation op) { return op == Operation::Substitute ? "subst" : "adjoin"; }

namespace {

bool attachment_less(const Attachment& a, const Attachment& b) {
  if (a.address != b.address) return a.address < b.address;
  if (a.operation != b.operation) return a.operation < b.operation;
  if (a.child.tree_id != b.child.tree_id) return a.child.tree_id < b.child.tree_id;
  return to_sexpr(a.child) < to_sexpr(b.child);
}

void write_sexpr(const Derivation& d, std::string& out) {
  out += '(';
  out += d.tree_id;
  for (const auto& a : d.attachments) {
    out += " (";
    out += to_string(a.operation);
    out += ' ';
    out += a.address.str();
    out += ' ';
    write_sexpr(a.child, out);
    out += ')';
  }
  out += ')';
}

void flatten_into(const Derivation& d, int host, Operation op, const NodeAddress& addr, int depth,
                  std::vector<DerivationStep>& out) {
  int index = static_cast<int>(out.size());
  out.push_back({index, host, d.tree_id, op, addr, depth});
  for (const auto& a : d.attachments) flatten_into(a.child, index, a.operation, a.address, depth + 1, out);
}

DerivedTree replay_node(const Grammar& grammar, const Derivation& d, int& next_instance) {
  const ElementaryTree& tree = grammar.at(d.tree_id);
  DerivedTree current = instantiate(tree, next_instance++);

  std::vector<const Attachment*> order;
  for (const auto& a : d.attachments) order.push_back(&a);
  std::stable_sort(order.begin(), order.end(),
                   [](const Attachment* a, const Attachment* b) { return b->address < a->address; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i]->address == order[i - 1]->address) {
      throw TagError(ErrorKind::DuplicateAdjunction, "two attachments at " +
                                                         order[i]->address.str() + " of " + d.tree_id);
    }
  }

  for (const Attachment* a : order) {
    const ElementaryTree& child_tree = grammar.at(a->child.tree_id);
    DerivedTree child = replay_node(grammar, a->child, next_instance);
    if (a->operation == Operation::Substitute) {
      if (child_tree.is_auxiliary()) {
        throw TagError(ErrorKind::FillerNotInitial,
                       "cannot substitute auxiliary tree " + child_tree.id());
      }
      current = substitute(current, a->address, child);
    } else {
      if (!child_tree.is_auxiliary()) {
        throw TagError(ErrorKind::AuxiliaryWithoutFoot,
                       "cannot adjoin initial tree " + child_tree.id());
      }
      current = adjoin(current, a->address, child);
    }
  }
  return current;
}

}  // namespace

void canonicalize(Derivation& d) {
  for (auto& a : d.attachments) canonicalize(a.child);
  std::sort(d.attachments.begin(), d.attachments.end(), attachment_less);
}

Derivation canonical(Derivation d) {
  canonicalize(d);
  return d;
}

std::string to_sexpr(const Derivation& d) {
  std::string out;
  write_sexpr(d, out);
  return out;
}

std::string to_display(const Derivation& d) {
  std::string out;
  for (const auto& step : flatten(d)) {
    out.append(static_cast<std::size_t>(step.depth) * 2, ' ');
    out += step.tree_id;
    if (step.host >= 0) {
      out += ' ';
      out += to_string(step.operation);
      out += " @";
      out += step.address.str();
    }
    out += '\n';
  }
  return out;
}

std::vector<DerivationStep> flatten(const Derivation& d) {
  std::vector<DerivationStep> out;
  flatten_into(d, -1, Operation::Substitute, NodeAddress::root(), 0, out);
  return out;
}

std::size_t tree_count(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& a : d.attachments) n += tree_count(a.child);
  return n;
}

bool operator==(const Derivation& a, const Derivation& b) {
  return to_sexpr(canonical(a)) == to_sexpr(canonical(b));
}

bool operator<(const Derivation& a, const Derivation& b) {
  return to_sexpr(canonical(a)) < to_sexpr(canonical(b));
}

DerivedTree replay(const Grammar& grammar, const Derivation& d) {
  int next_instance = 0;
  return replay_node(grammar, d, next_instance);
}

}  // namespace ltag
