#include "ltag/oracle.hpp"

#include <cstdint>
#include <map>
#include <optional>

#include "ltag/grammar_io.hpp"
#include "ltag/operations.hpp"

namespace ltag {

namespace detail {

struct TreeInfo {
  const ElementaryTree* tree;
  std::size_t weight;  // anchors + slots
};

}  // namespace detail

namespace {

struct Record {
  std::string tree_id;
  int host = -1;
  Operation operation = Operation::Substitute;
  NodeAddress address;
};

struct State {
  DerivedTree tree;
  std::vector<Record> records;
  std::size_t min_tokens = 0;  // anchors plus open slots; each slot yields >= 1 token
};

using detail::TreeInfo;

enum class Goal { Parse, Enumerate };

}  // namespace

namespace detail {

struct OracleIndex {
  std::map<std::string, std::vector<TreeInfo>> initial;
  std::map<std::string, std::vector<TreeInfo>> aux;
  std::size_t unanchored = 0;

  explicit OracleIndex(const Grammar& grammar) {
    for (const auto& [id, t] : grammar.trees()) {
      TreeInfo info{&t, count_kind(t.root(), NodeKind::Anchor) + count_kind(t.root(), NodeKind::SubstitutionSlot)};
      (t.is_auxiliary() ? aux : initial)[t.root().category.str()].push_back(info);
      if (!t.anchored()) ++unanchored;
    }
  }
};

}  // namespace detail

namespace {

class Search {
 public:
  Search(const Grammar& grammar, const detail::OracleIndex& index, Goal goal, const TokenSequence* tokens,
         std::size_t max_len)
      : grammar_(grammar), initial_(index.initial), aux_(index.aux), goal_(goal), tokens_(tokens),
        max_len_(max_len), tree_bound_((2 * index.unanchored + 3) * max_len + 1) {}

  void run(const Category& start) {
    auto found = initial_.find(start.str());
    if (found == initial_.end()) return;
    for (const TreeInfo& info : found->second) {
      if (info.weight > max_len_) continue;
      State s{instantiate(*info.tree, 0), {{info.tree->id(), -1, Operation::Substitute, NodeAddress::root()}},
              info.weight};
      explore(s);
    }
  }

  std::map<std::string, Derivation> derivations;
  std::set<TokenSequence> yields;

 private:
  struct Point {
    std::vector<int> path;
    const Node* node = nullptr;
  };

  // Frontier of a partial tree: anchors, open slots (at least one token
  // each) and gaps where a pending adjunction decision may still wrap
  // material around a subtree.
  struct Element {
    enum Kind { Word, Slot, Gap } kind;
    const Node* node;
  };

  struct Scan {
    Point slot;      // first open slot
    Point internal;  // first internal node still open to adjunction
    std::vector<Element> frontier;
    std::vector<int> path;
  };

  void scan(const Node& n, Scan& sc) const {
    switch (n.kind) {
      case NodeKind::Anchor:
        sc.frontier.push_back({Element::Word, &n});
        return;
      case NodeKind::SubstitutionSlot:
      case NodeKind::Foot:
        if (!sc.slot.node) sc.slot = {sc.path, &n};
        sc.frontier.push_back({Element::Slot, &n});
        return;
      case NodeKind::Internal: {
        // Nodes no auxiliary tree can target count as decided.
        const bool open = !n.adjunction_closed && aux_.count(n.category.str()) != 0;
        if (open) {
          if (!sc.internal.node) sc.internal = {sc.path, &n};
          gap(sc);
        }
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          sc.path.push_back(static_cast<int>(i + 1));
          scan(n.children[i], sc);
          sc.path.pop_back();
        }
        if (open) gap(sc);
        return;
      }
    }
  }

  static void gap(Scan& sc) {
    if (sc.frontier.empty() || sc.frontier.back().kind != Element::Gap) sc.frontier.push_back({Element::Gap, nullptr});
  }

  // Substitution and adjunction only add material at slots and around
  // undecided nodes, so the frontier has to match the input already.
  bool consistent(const Scan& sc) {
    if (goal_ == Goal::Enumerate) return true;
    const TokenSequence& t = *tokens_;
    const std::size_t n = t.size();
    // Bit p of `at`: the elements so far can cover exactly t[0..p).
    std::uint32_t at = 1;
    const std::uint32_t all = (n + 1 >= 32) ? ~0u : ((1u << (n + 1)) - 1);
    for (const Element& e : sc.frontier) {
      std::uint32_t next = 0;
      switch (e.kind) {
        case Element::Word:
          for (std::size_t p = 0; p < n; ++p) {
            if ((at >> p & 1u) && t[p].surface == e.node->surface && t[p].language == *e.node->language) {
              next |= 1u << (p + 1);
            }
          }
          break;
        case Element::Slot:
          // every position strictly after the lowest reachable one
          next = (at & -at) << 1;
          next = (next == 0) ? 0 : (all & ~(next - 1));
          break;
        case Element::Gap:
          next = at == 0 ? 0 : (all & ~((at & -at) - 1));
          break;
      }
      at = next & all;
      if (at == 0) return false;
    }
    return (at >> n & 1u) != 0;
  }

  void finish(const State& s) {
    TokenSequence y = yield_tokens(s.tree);
    if (goal_ == Goal::Enumerate) {
      if (!y.empty() && y.size() <= max_len_) yields.insert(std::move(y));
      return;
    }
    if (y != *tokens_) return;
    Derivation d = build(s.records, 0);
    canonicalize(d);
    derivations.emplace(to_sexpr(d), std::move(d));
  }

  Derivation build(const std::vector<Record>& records, int index) const {
    Derivation d{records[static_cast<std::size_t>(index)].tree_id, {}};
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].host == index) {
        d.attachments.push_back({records[i].operation, records[i].address, build(records, static_cast<int>(i))});
      }
    }
    return d;
  }

  Record record_for(const State& s, const Node& site, Operation op, const ElementaryTree& child) const {
    const Record& host = s.records[static_cast<std::size_t>(site.origin.instance)];
    const ElementaryTree& host_tree = grammar_.at(host.tree_id);
    return {child.id(), site.origin.instance, op, host_tree.address_of(site.origin.node)};
  }

  void explore(State& s) {
    Scan sc;
    scan(s.tree.root(), sc);
    if (!sc.slot.node && !sc.internal.node) {
      finish(s);
      return;
    }
    if (!consistent(sc)) return;
    const std::size_t n = s.records.size();

    if (sc.slot.node) {
      const Node& site = *sc.slot.node;
      if (site.kind == NodeKind::Foot) return;  // adjoin() never leaves one behind
      auto found = initial_.find(site.category.str());
      if (found == initial_.end()) return;
      Node& target = *find_node(s.tree.root(), NodeAddress(sc.slot.path));
      for (const TreeInfo& info : found->second) {
        const std::size_t weight = s.min_tokens - 1 + info.weight;
        if (weight > max_len_ || n + 1 > tree_bound_) continue;
        Record r = record_for(s, site, Operation::Substitute, *info.tree);
        DerivedTree filled =
            substitute(DerivedTree(target), NodeAddress::root(), instantiate(*info.tree, static_cast<int>(n)));
        descend(s, target, filled.root(), std::move(r), weight);
      }
      return;
    }

    const NodeAddress address(sc.internal.path);
    Node& site = *find_node(s.tree.root(), address);
    site.adjunction_closed = true;
    explore(s);
    site.adjunction_closed = false;

    auto found = aux_.find(site.category.str());
    if (found == aux_.end()) return;
    for (const TreeInfo& info : found->second) {
      const std::size_t weight = s.min_tokens + info.weight;
      if (weight > max_len_ || n + 1 > tree_bound_) continue;
      Record r = record_for(s, site, Operation::Adjoin, *info.tree);
      DerivedTree grown = adjoin(DerivedTree(site), NodeAddress::root(), instantiate(*info.tree, static_cast<int>(n)));
      descend(s, site, grown.root(), std::move(r), weight);
    }
  }

  /// Explores with `site` replaced by `subtree`, then puts everything back.
  void descend(State& s, Node& site, Node& subtree, Record r, std::size_t weight) {
    const std::size_t before = s.min_tokens;
    s.records.push_back(std::move(r));
    s.min_tokens = weight;
    std::swap(site, subtree);
    explore(s);
    std::swap(site, subtree);
    s.min_tokens = before;
    s.records.pop_back();
  }

  const Grammar& grammar_;
  const std::map<std::string, std::vector<TreeInfo>>& initial_;
  const std::map<std::string, std::vector<TreeInfo>>& aux_;
  Goal goal_;
  const TokenSequence* tokens_;
  std::size_t max_len_;
  std::size_t tree_bound_;
};

}  // namespace

Oracle::Oracle(Grammar grammar) : grammar_(std::move(grammar)) {
  ValidationReport report = validate_grammar(grammar_);
  if (!report.ok()) throw TagError(ErrorKind::InvalidGrammar, "invalid grammar:\n" + report.str());
  index_ = std::make_unique<detail::OracleIndex>(grammar_);
}

Oracle::~Oracle() = default;
Oracle::Oracle(Oracle&&) noexcept = default;
Oracle& Oracle::operator=(Oracle&&) noexcept = default;

std::vector<Derivation> Oracle::parse(const TokenSequence& tokens, const Category& start) const {
  if (tokens.empty()) throw TagError(ErrorKind::InvalidInput, "empty token sequence");
  if (tokens.size() > kOracleMaxTokens) {
    throw TagError(ErrorKind::InvalidInput,
                   "oracle_parse is limited to " + std::to_string(kOracleMaxTokens) + " tokens");
  }
  Search search(grammar_, *index_, Goal::Parse, &tokens, tokens.size());
  search.run(start);
  std::vector<Derivation> out;
  for (auto& [key, d] : search.derivations) out.push_back(std::move(d));
  return out;
}

std::set<TokenSequence> Oracle::enumerate_strings(const Category& start, std::size_t max_len) const {
  if (max_len == 0) return {};
  Search search(grammar_, *index_, Goal::Enumerate, nullptr, max_len);
  search.run(start);
  return std::move(search.yields);
}

std::vector<Derivation> oracle_parse(const Grammar& grammar, const TokenSequence& tokens,
                                     const Category& start) {
  return Oracle(grammar).parse(tokens, start);
}

std::set<TokenSequence> oracle_enumerate_strings(const Grammar& grammar, const Category& start,
                                                 std::size_t max_len) {
  return Oracle(grammar).enumerate_strings(start, max_len);
}

}  // namespace ltag
