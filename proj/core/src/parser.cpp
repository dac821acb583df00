#include "ltag/parser.hpp"

#include <algorithm>
#include <deque>
#include <span>
#include <functional>
#include <limits>
#include <unordered_map>

namespace ltag {

std::string_view to_string(ParseMode mode) {
  return mode == ParseMode::SingleStage ? "single" : "two-stage";
}

std::string_view to_string(Status s) { return s == Status::Derivable ? "derivable" : "underivable"; }

std::size_t auto_tree_bound(const Grammar& grammar, std::size_t token_count) {
  return (2 * grammar.unanchored_count() + 3) * token_count + 1;
}

namespace detail {

struct FlatNode {
  int tree = -1;
  int parent = -1;
  int child_index = -1;
  std::vector<int> children;
  NodeKind kind = NodeKind::Internal;
  int category = -1;
  int token = -1;  // interned (surface, language) for anchors
  NodeAddress address;
  bool spine = false;  // dominates the foot
  int local = -1;      // position within the tree's node block
};

struct FlatTree {
  std::string id;
  bool auxiliary = false;
  bool anchored = false;
  int root = -1;
  int foot = -1;
  int anchor = -1;
  int first = -1;
  std::vector<int> nodes;
};

struct CompiledGrammar {
  Grammar grammar;
  std::vector<FlatTree> trees;
  std::vector<FlatNode> nodes;
  std::map<std::string, int> category_ids;
  std::vector<std::string> category_names;
  std::vector<Token> token_values;
  std::map<Token, int> token_ids;
  std::vector<std::vector<int>> initial_by_cat;  // tree indices
  std::vector<std::vector<int>> aux_by_cat;      // tree indices
  std::vector<std::vector<int>> slots_by_cat;    // node indices
  std::vector<std::vector<int>> anchors_by_token;  // node indices
  std::size_t unanchored = 0;

  int intern_category(const std::string& name) {
    auto [it, inserted] = category_ids.emplace(name, static_cast<int>(category_names.size()));
    if (inserted) {
      category_names.push_back(name);
      initial_by_cat.emplace_back();
      aux_by_cat.emplace_back();
      slots_by_cat.emplace_back();
    }
    return it->second;
  }

  int intern_token(const Token& t) {
    auto [it, inserted] = token_ids.emplace(t, static_cast<int>(token_values.size()));
    if (inserted) {
      token_values.push_back(t);
      anchors_by_token.emplace_back();
    }
    return it->second;
  }

  int find_category(const Category& c) const {
    auto it = category_ids.find(c.str());
    return it == category_ids.end() ? -1 : it->second;
  }

  int find_token(const Token& t) const {
    auto it = token_ids.find(t);
    return it == token_ids.end() ? -1 : it->second;
  }

  explicit CompiledGrammar(Grammar g) : grammar(std::move(g)) {
    for (const auto& [id, tree] : grammar.trees()) {
      const int tree_index = static_cast<int>(trees.size());
      FlatTree ft;
      ft.id = id;
      ft.auxiliary = tree.is_auxiliary();
      std::function<int(const Node&, int, int, const NodeAddress&)> flatten =
          [&](const Node& n, int parent, int child_index, const NodeAddress& addr) {
            const int index = static_cast<int>(nodes.size());
            nodes.push_back({});
            FlatNode fn;
            fn.tree = tree_index;
            fn.parent = parent;
            fn.child_index = child_index;
            fn.kind = n.kind;
            fn.category = intern_category(n.category.str());
            fn.address = addr;
            if (n.kind == NodeKind::Anchor) {
              fn.token = intern_token(Token(n.surface, tree.language()));
              ft.anchor = index;
            }
            if (n.kind == NodeKind::Foot) ft.foot = index;
            for (std::size_t i = 0; i < n.children.size(); ++i) {
              fn.children.push_back(
                  flatten(n.children[i], index, static_cast<int>(i), addr.child(static_cast<int>(i + 1))));
            }
            ft.nodes.push_back(index);
            nodes[static_cast<std::size_t>(index)] = std::move(fn);
            return index;
          };
      ft.first = static_cast<int>(nodes.size());
      ft.root = flatten(tree.root(), -1, -1, NodeAddress::root());
      for (int n : ft.nodes) nodes[static_cast<std::size_t>(n)].local = n - ft.first;
      ft.anchored = ft.anchor >= 0;
      if (!ft.anchored) ++unanchored;
      if (ft.foot >= 0) {
        for (int cur = ft.foot; cur >= 0; cur = nodes[static_cast<std::size_t>(cur)].parent) {
          nodes[static_cast<std::size_t>(cur)].spine = true;
        }
      }
      trees.push_back(std::move(ft));
    }
    for (std::size_t t = 0; t < trees.size(); ++t) {
      const FlatTree& ft = trees[t];
      const int root_cat = nodes[static_cast<std::size_t>(ft.root)].category;
      (ft.auxiliary ? aux_by_cat : initial_by_cat)[static_cast<std::size_t>(root_cat)].push_back(
          static_cast<int>(t));
      for (int n : ft.nodes) {
        const FlatNode& fn = nodes[static_cast<std::size_t>(n)];
        if (fn.kind == NodeKind::SubstitutionSlot) slots_by_cat[static_cast<std::size_t>(fn.category)].push_back(n);
        if (fn.kind == NodeKind::Anchor) anchors_by_token[static_cast<std::size_t>(fn.token)].push_back(n);
      }
    }
  }

  const FlatNode& node(int i) const { return nodes[static_cast<std::size_t>(i)]; }
  const FlatTree& tree(int i) const { return trees[static_cast<std::size_t>(i)]; }
};

}  // namespace detail

namespace {

using detail::CompiledGrammar;
using detail::FlatNode;
using detail::FlatTree;

constexpr int kMaxTokens = 60;

/// One way of building an item; ways of an item form a linked list.
struct Way {
  enum Kind : std::uint8_t { Leaf, Subst, Children, NoAdjoin, Adjoin };
  Kind kind;
  int tree;       // Subst: filler tree; Adjoin: auxiliary tree
  int next;       // next way of the same item, -1 at the end
  int arg_begin;  // antecedent item ids in Chart::args_
  int arg_count;
};

struct Item {
  int node;
  int i, j, fl, fr;
  bool top;
  bool processed = false;
  int first_way = -1;
  int next_in_cell = -1;   // same (node, i, j)
  int next_by_start = -1;  // processed top items of the same node and start
  int next_by_end = -1;    // processed top items of the same node and end
  int next_in_group = -1;  // bottom items by (category, span), aux roots by (category, foot span)
};

/// Agenda-driven bottom-up TAG chart.
///
/// Items are (node, i, j, foot span, phase). A bottom item covers a node
/// before any adjunction at it; the matching top item covers it after the
/// adjunction decision. Foot items are predicted only over spans where some
/// node of the foot's category already has a bottom item.
class Chart {
 public:
  Chart(const CompiledGrammar& g, const std::vector<int>& tokens)
      : g_(g),
        tokens_(tokens),
        n_(static_cast<int>(tokens.size())),
        w_(n_ + 1),
        enabled_(g.trees.size(), false),
        block_(g.trees.size(), -1),
        bottoms_(g.category_names.size() * static_cast<std::size_t>(w_ * w_), -1),
        aux_roots_(g.category_names.size() * static_cast<std::size_t>(w_ * w_), -1) {}

  void enable(int tree) {
    const auto t = static_cast<std::size_t>(tree);
    if (enabled_[t]) return;
    enabled_[t] = true;
    const auto count = g_.trees[t].nodes.size();
    block_[t] = static_cast<int>(by_start_.size());
    by_start_.resize(by_start_.size() + count * static_cast<std::size_t>(w_), -1);
    by_end_.resize(by_end_.size() + count * static_cast<std::size_t>(w_), -1);
    cells_.resize(cells_.size() + count * static_cast<std::size_t>(w_ * w_), -1);
  }
  bool enabled(int tree) const { return enabled_[static_cast<std::size_t>(tree)]; }

  void seed_anchors() {
    for (int p = 0; p < n_; ++p) {
      const int tok = tokens_[static_cast<std::size_t>(p)];
      if (tok < 0) continue;
      for (int a : g_.anchors_by_token[static_cast<std::size_t>(tok)]) {
        if (enabled(g_.node(a).tree)) add(a, p, p + 1, -1, -1, true, Way::Leaf, -1, {});
      }
    }
  }

  /// Pairs items already in the chart with trees enabled after they were
  /// processed. Used when the second stage admits unanchored trees.
  void reseed_for(const std::vector<int>& new_trees) {
    std::vector<bool> is_new(g_.trees.size(), false);
    for (int t : new_trees) is_new[static_cast<std::size_t>(t)] = true;
    const std::size_t existing = items_.size();
    for (std::size_t id = 0; id < existing; ++id) {
      if (!items_[id].processed) continue;
      const int node = items_[id].node, i = items_[id].i, j = items_[id].j;
      const FlatNode& fn = g_.node(node);
      if (!items_[id].top) {
        for (int b : g_.aux_by_cat[static_cast<std::size_t>(fn.category)]) {
          if (is_new[static_cast<std::size_t>(b)]) predict_foot(b, i, j);
        }
      } else if (fn.parent < 0 && !g_.tree(fn.tree).auxiliary) {
        for (int s : g_.slots_by_cat[static_cast<std::size_t>(fn.category)]) {
          if (is_new[static_cast<std::size_t>(g_.node(s).tree)]) {
            const int arg = static_cast<int>(id);
            add(s, i, j, -1, -1, true, Way::Subst, fn.tree, {&arg, 1});
          }
        }
      }
    }
  }

  void run() {
    while (!agenda_.empty()) {
      const int id = agenda_.front();
      agenda_.pop_front();
      process(id);
    }
  }

  const std::vector<Item>& items() const { return items_; }
  const Item& item(int id) const { return items_[static_cast<std::size_t>(id)]; }
  const Way& way(int w) const { return ways_[static_cast<std::size_t>(w)]; }
  int arg(const Way& w, int k) const { return args_[static_cast<std::size_t>(w.arg_begin + k)]; }

  int find(int node, int i, int j, int fl, int fr, bool top) const {
    if (!enabled(g_.node(node).tree)) return -1;
    for (int id = cells_[cell(node, i, j)]; id >= 0; id = item(id).next_in_cell) {
      const Item& it = item(id);
      if (it.fl == fl && it.fr == fr && it.top == top) return id;
    }
    return -1;
  }

  int size() const { return n_; }

 private:
  // Row of `node` in the per-node arrays; blocks exist only for enabled trees.
  std::size_t row(int node) const {
    const FlatNode& fn = g_.node(node);
    return static_cast<std::size_t>(block_[static_cast<std::size_t>(fn.tree)] / w_ + fn.local);
  }
  std::size_t cell(int node, int i, int j) const {
    return (row(node) * static_cast<std::size_t>(w_) + static_cast<std::size_t>(i)) * static_cast<std::size_t>(w_) +
           static_cast<std::size_t>(j);
  }
  std::size_t node_pos(int node, int pos) const {
    return row(node) * static_cast<std::size_t>(w_) + static_cast<std::size_t>(pos);
  }
  std::size_t cat_span(int cat, int i, int j) const {
    return (static_cast<std::size_t>(cat) * static_cast<std::size_t>(w_) + static_cast<std::size_t>(i)) *
               static_cast<std::size_t>(w_) +
           static_cast<std::size_t>(j);
  }

  int add(int node, int i, int j, int fl, int fr, bool top, Way::Kind kind, int tree, std::span<const int> args) {
    int id = find(node, i, j, fl, fr, top);
    if (id >= 0 && kind == Way::Leaf) return id;
    if (id < 0) {
      id = static_cast<int>(items_.size());
      Item it{node, i, j, fl, fr, top};
      int& head = cells_[cell(node, i, j)];
      it.next_in_cell = head;
      head = id;
      items_.push_back(it);
      agenda_.push_back(id);
    }
    Item& it = items_[static_cast<std::size_t>(id)];
    const int w = static_cast<int>(ways_.size());
    ways_.push_back({kind, tree, it.first_way, static_cast<int>(args_.size()), static_cast<int>(args.size())});
    args_.insert(args_.end(), args.begin(), args.end());
    it.first_way = w;
    return id;
  }

  void predict_foot(int aux_tree, int i, int j) {
    add(g_.tree(aux_tree).foot, i, j, i, j, true, Way::Leaf, -1, {});
  }

  void process(int id) {
    Item& x = items_[static_cast<std::size_t>(id)];
    x.processed = true;
    const int node = x.node, i = x.i, j = x.j, fl = x.fl, fr = x.fr;
    const FlatNode& fn = g_.node(node);

    if (x.top) {
      int& s = by_start_[node_pos(node, i)];
      x.next_by_start = s;
      s = id;
      int& e = by_end_[node_pos(node, j)];
      x.next_by_end = e;
      e = id;
      if (fn.parent >= 0) {
        combine(fn.parent, fn.child_index, id);
        return;
      }
      if (!g_.tree(fn.tree).auxiliary) {
        for (int slot : g_.slots_by_cat[static_cast<std::size_t>(fn.category)]) {
          if (enabled(g_.node(slot).tree)) add(slot, i, j, -1, -1, true, Way::Subst, fn.tree, {&id, 1});
        }
        return;
      }
      int& head = aux_roots_[cat_span(fn.category, fl, fr)];
      x.next_in_group = head;
      head = id;
      for (int b = bottoms_[cat_span(fn.category, fl, fr)]; b >= 0; b = item(b).next_in_group) {
        const Item& bi = item(b);
        const int pair[2] = {id, b};
        add(bi.node, i, j, bi.fl, bi.fr, true, Way::Adjoin, fn.tree, pair);
      }
      return;
    }

    // Bottom item of an internal node.
    add(node, i, j, fl, fr, true, Way::NoAdjoin, -1, {&id, 1});
    {
      Item& self = items_[static_cast<std::size_t>(id)];
      int& head = bottoms_[cat_span(fn.category, i, j)];
      self.next_in_group = head;
      head = id;
    }
    for (int b : g_.aux_by_cat[static_cast<std::size_t>(fn.category)]) {
      if (enabled(b)) predict_foot(b, i, j);
    }
    for (int a = aux_roots_[cat_span(fn.category, i, j)]; a >= 0; a = item(a).next_in_group) {
      const Item& ai = item(a);
      const int pair[2] = {a, id};
      add(node, ai.i, ai.j, fl, fr, true, Way::Adjoin, g_.node(ai.node).tree, pair);
    }
  }

  /// Builds bottom items of `parent` from the new top item `trigger` of its
  /// child `slot` and already-processed top items of the other children.
  void combine(int parent, int slot, int trigger) {
    picked_.resize(g_.node(parent).children.size());
    picked_[static_cast<std::size_t>(slot)] = trigger;
    extend_left(parent, slot - 1, item(trigger).i, slot, picked_);
  }

  void extend_left(int parent, int c, int pos, int slot, std::vector<int>& picked) {
    if (c < 0) {
      extend_right(parent, slot + 1, item(picked[static_cast<std::size_t>(slot)]).j, pos, picked);
      return;
    }
    const int child = g_.node(parent).children[static_cast<std::size_t>(c)];
    for (int cand = by_end_[node_pos(child, pos)]; cand >= 0; cand = item(cand).next_by_end) {
      picked[static_cast<std::size_t>(c)] = cand;
      extend_left(parent, c - 1, item(cand).i, slot, picked);
    }
  }

  void extend_right(int parent, int c, int pos, int start, std::vector<int>& picked) {
    const FlatNode& pn = g_.node(parent);
    if (c == static_cast<int>(pn.children.size())) {
      int fl = -1, fr = -1;
      for (int p : picked) {
        const Item& ci = item(p);
        if (ci.fl >= 0) {
          fl = ci.fl;
          fr = ci.fr;
        }
      }
      add(parent, start, pos, fl, fr, false, Way::Children, -1, picked);
      return;
    }
    const int child = pn.children[static_cast<std::size_t>(c)];
    for (int cand = by_start_[node_pos(child, pos)]; cand >= 0; cand = item(cand).next_by_start) {
      picked[static_cast<std::size_t>(c)] = cand;
      extend_right(parent, c + 1, item(cand).j, start, picked);
    }
  }

  const CompiledGrammar& g_;
  const std::vector<int>& tokens_;
  int n_;
  int w_;
  std::vector<bool> enabled_;
  std::vector<int> block_;  // tree -> offset of its rows in by_start_, -1 when disabled
  std::vector<Item> items_;
  std::vector<Way> ways_;
  std::vector<int> args_;
  std::vector<int> cells_;      // (node, i, j) -> item chain
  std::vector<int> by_start_;   // (node, i) -> processed top items
  std::vector<int> by_end_;     // (node, j) -> processed top items
  std::vector<int> bottoms_;    // (category, i, j) -> processed bottom items
  std::vector<int> aux_roots_;  // (category, foot span) -> processed aux root items
  std::deque<int> agenda_;
  std::vector<int> picked_;  // children chosen so far by combine
};

std::vector<int> intern_input(const CompiledGrammar& g, const TokenSequence& tokens) {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(g.find_token(t));
  return out;
}

void check_input(const TokenSequence& tokens) {
  if (tokens.empty()) throw TagError(ErrorKind::InvalidInput, "empty token sequence");
  if (tokens.size() > static_cast<std::size_t>(kMaxTokens)) {
    throw TagError(ErrorKind::InvalidInput, "token sequence longer than " + std::to_string(kMaxTokens));
  }
}

struct BuiltChart {
  std::unique_ptr<Chart> chart;
  std::vector<int> tokens;
  ParseStats stats;
};

BuiltChart build_chart(const CompiledGrammar& g, const TokenSequence& tokens, const ParseConfig& cfg) {
  check_input(tokens);
  BuiltChart out;
  out.tokens = intern_input(g, tokens);
  out.chart = std::make_unique<Chart>(g, out.tokens);
  Chart& chart = *out.chart;

  std::vector<bool> present(g.token_values.size(), false);
  for (int t : out.tokens) {
    if (t >= 0) present[static_cast<std::size_t>(t)] = true;
  }
  // Lexical selection: anchored trees whose anchor occurs in the input.
  for (std::size_t t = 0; t < g.trees.size(); ++t) {
    const FlatTree& ft = g.trees[t];
    if (ft.anchored && present[static_cast<std::size_t>(g.node(ft.anchor).token)]) chart.enable(static_cast<int>(t));
  }

  if (cfg.mode == ParseMode::SingleStage) {
    for (std::size_t t = 0; t < g.trees.size(); ++t) {
      if (!g.trees[t].anchored) chart.enable(static_cast<int>(t));
    }
    chart.seed_anchors();
    chart.run();
    out.stats.items = chart.items().size();
    return out;
  }

  // Stage 1: anchored trees only.
  chart.seed_anchors();
  chart.run();
  out.stats.stage1_items = chart.items().size();

  // Licensing: categories of every node of a tree that took part in a
  // stage-1 analysis, plus the start category; closed under the nodes of
  // admitted unanchored trees.
  std::vector<bool> licensed(g.category_names.size(), false);
  const int start = g.find_category(cfg.start);
  if (start >= 0) licensed[static_cast<std::size_t>(start)] = true;
  std::vector<bool> used_tree(g.trees.size(), false);
  for (const auto& it : chart.items()) used_tree[static_cast<std::size_t>(g.node(it.node).tree)] = true;
  auto license_tree = [&](int t) {
    for (int n : g.tree(t).nodes) {
      const FlatNode& fn = g.node(n);
      if (fn.kind != NodeKind::Anchor) licensed[static_cast<std::size_t>(fn.category)] = true;
    }
  };
  for (std::size_t t = 0; t < g.trees.size(); ++t) {
    if (used_tree[t]) license_tree(static_cast<int>(t));
  }
  std::vector<int> admitted;
  bool changed = true;
  std::vector<bool> is_admitted(g.trees.size(), false);
  while (changed) {
    changed = false;
    for (std::size_t t = 0; t < g.trees.size(); ++t) {
      const FlatTree& ft = g.trees[t];
      if (ft.anchored || is_admitted[t]) continue;
      if (!licensed[static_cast<std::size_t>(g.node(ft.root).category)]) continue;
      is_admitted[t] = true;
      admitted.push_back(static_cast<int>(t));
      license_tree(static_cast<int>(t));
      changed = true;
    }
  }

  // Stage 2: introduce the licensed unanchored trees into the same chart.
  for (int t : admitted) chart.enable(t);
  chart.reseed_for(admitted);
  chart.run();
  out.stats.items = chart.items().size();
  out.stats.licensed_unanchored = admitted.size();
  return out;
}

std::size_t tree_bound(const CompiledGrammar& g, const TokenSequence& tokens, const ParseConfig& cfg) {
  return cfg.max_trees ? *cfg.max_trees : (2 * g.unanchored + 3) * tokens.size() + 1;
}

/// Expands chart back-pointers into derivation fragments.
class Extractor {
 public:
  struct Fragment {
    std::vector<Attachment> attachments;
    std::size_t trees = 0;  // trees attached inside this fragment
  };

  Extractor(const CompiledGrammar& g, const Chart& chart, std::size_t bound)
      : g_(g), chart_(chart), bound_(bound), memo_(chart.items().size()), done_(chart.items().size(), false) {}

  // The root tree counts against the bound too, so fragments may hold at
  // most bound - 1 attached trees.
  const std::vector<Fragment>& expand(int id) {
    const auto slot = static_cast<std::size_t>(id);
    if (done_[slot]) return memo_[slot];
    std::vector<Fragment> out;
    const Item& it = chart_.item(id);
    const std::size_t limit = bound_ - 1;
    for (int wi = it.first_way; wi >= 0; wi = chart_.way(wi).next) {
      const Way& w = chart_.way(wi);
      switch (w.kind) {
        case Way::Leaf:
          out.push_back({});
          break;
        case Way::NoAdjoin: {
          const auto& sub = expand(chart_.arg(w, 0));
          out.insert(out.end(), sub.begin(), sub.end());
          break;
        }
        case Way::Subst: {
          const auto& sub = expand(chart_.arg(w, 0));
          for (const auto& f : sub) {
            if (f.trees + 1 > limit) {
              truncated_ = true;
              continue;
            }
            Fragment r;
            r.trees = f.trees + 1;
            r.attachments.push_back({Operation::Substitute, g_.node(it.node).address,
                                     Derivation{g_.tree(w.tree).id, f.attachments}});
            out.push_back(std::move(r));
          }
          break;
        }
        case Way::Children: {
          std::vector<Fragment> acc{{}};
          for (int k = 0; k < w.arg_count; ++k) {
            const auto& sub = expand(chart_.arg(w, k));
            std::vector<Fragment> next;
            for (const auto& a : acc) {
              for (const auto& b : sub) {
                if (a.trees + b.trees > limit) {
                  truncated_ = true;
                  continue;
                }
                Fragment r = a;
                r.trees += b.trees;
                r.attachments.insert(r.attachments.end(), b.attachments.begin(), b.attachments.end());
                next.push_back(std::move(r));
              }
            }
            acc = std::move(next);
          }
          out.insert(out.end(), std::make_move_iterator(acc.begin()), std::make_move_iterator(acc.end()));
          break;
        }
        case Way::Adjoin: {
          const auto& aux = expand(chart_.arg(w, 0));
          const auto& inner = expand(chart_.arg(w, 1));
          for (const auto& a : aux) {
            for (const auto& b : inner) {
              if (a.trees + b.trees + 1 > limit) {
                truncated_ = true;
                continue;
              }
              Fragment r = b;
              r.trees = a.trees + b.trees + 1;
              r.attachments.push_back({Operation::Adjoin, g_.node(it.node).address,
                                       Derivation{g_.tree(w.tree).id, a.attachments}});
              out.push_back(std::move(r));
            }
          }
          break;
        }
      }
    }
    done_[slot] = true;
    memo_[slot] = std::move(out);
    return memo_[slot];
  }

  bool truncated() const { return truncated_; }

 private:
  const CompiledGrammar& g_;
  const Chart& chart_;
  std::size_t bound_;
  bool truncated_ = false;
  std::vector<std::vector<Fragment>> memo_;
  std::vector<bool> done_;
};

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

/// Same recursion as Extractor, but over counts indexed by tree number:
/// poly[k] is the number of fragments with k attached trees. Polynomials
/// are trimmed to their degree and cut at the tree bound.
// Derivation counts per item as polynomials in the number of attached
// trees, truncated at the tree bound. Polynomials live in one arena.
class Counter {
 public:
  Counter(const Chart& chart, std::size_t bound)
      : chart_(chart), cap_(bound), memo_(chart.items().size()) {}

  std::span<const std::uint64_t> count(int id) {
    ensure(id);
    const Span& sp = memo_[static_cast<std::size_t>(id)];
    return {data_.data() + sp.begin, sp.size};
  }

 private:
  struct Span {
    std::size_t begin = 0;
    std::size_t size = 0;
    bool done = false;
  };

  void ensure(int id) {
    if (memo_[static_cast<std::size_t>(id)].done) return;
    const Item& it = chart_.item(id);
    for (int wi = it.first_way; wi >= 0; wi = chart_.way(wi).next) {
      const Way& w = chart_.way(wi);
      for (int k = 0; k < w.arg_count; ++k) ensure(chart_.arg(w, k));
    }
    // Every argument is memoized now, so the scratch buffers are free.
    out_.clear();
    for (int wi = it.first_way; wi >= 0; wi = chart_.way(wi).next) {
      const Way& w = chart_.way(wi);
      switch (w.kind) {
        case Way::Leaf:
          acc_.assign(1, 1);
          accumulate(0);
          break;
        case Way::NoAdjoin:
        case Way::Subst:
        case Way::Children:
        case Way::Adjoin:
          acc_.assign(1, 1);
          for (int k = 0; k < w.arg_count; ++k) convolve(chart_.arg(w, k));
          accumulate(w.kind == Way::Subst || w.kind == Way::Adjoin ? 1 : 0);
          break;
      }
    }
    Span& sp = memo_[static_cast<std::size_t>(id)];
    sp.begin = data_.size();
    sp.size = out_.size();
    sp.done = true;
    data_.insert(data_.end(), out_.begin(), out_.end());
  }

  void accumulate(std::size_t shift) {
    for (std::size_t k = 0; k < acc_.size() && k + shift < cap_; ++k) {
      if (out_.size() <= k + shift) out_.resize(k + shift + 1, 0);
      out_[k + shift] = sat_add(out_[k + shift], acc_[k]);
    }
  }

  // acc_ *= memoized polynomial of item `id`
  void convolve(int id) {
    const Span& sp = memo_[static_cast<std::size_t>(id)];
    if (acc_.empty() || sp.size == 0) {
      acc_.clear();
      return;
    }
    const std::uint64_t* b = data_.data() + sp.begin;
    tmp_.assign(std::min(acc_.size() + sp.size - 1, cap_), 0);
    for (std::size_t x = 0; x < acc_.size(); ++x) {
      if (!acc_[x]) continue;
      for (std::size_t y = 0; y < sp.size && x + y < tmp_.size(); ++y) {
        if (b[y]) tmp_[x + y] = sat_add(tmp_[x + y], sat_mul(acc_[x], b[y]));
      }
    }
    acc_.swap(tmp_);
  }

  const Chart& chart_;
  std::size_t cap_;  // index k < cap_: at most bound - 1 attached trees
  std::vector<Span> memo_;
  std::vector<std::uint64_t> data_, out_, acc_, tmp_;
};

std::vector<int> root_items(const CompiledGrammar& g, const Chart& chart, const Category& start) {
  std::vector<int> out;
  const int cat = g.find_category(start);
  if (cat < 0) return out;
  for (int t : g.initial_by_cat[static_cast<std::size_t>(cat)]) {
    int id = chart.find(g.tree(t).root, 0, chart.size(), -1, -1, true);
    if (id >= 0) out.push_back(id);
  }
  return out;
}

}  // namespace

Parser::Parser(Grammar grammar) {
  ValidationReport report = validate_grammar(grammar);
  if (!report.ok()) {
    throw TagError(ErrorKind::InvalidGrammar, "invalid grammar:\n" + report.str());
  }
  compiled_ = std::make_shared<const detail::CompiledGrammar>(std::move(grammar));
}

Parser::~Parser() = default;
Parser::Parser(const Parser&) = default;
Parser& Parser::operator=(const Parser&) = default;
Parser::Parser(Parser&&) noexcept = default;
Parser& Parser::operator=(Parser&&) noexcept = default;

const Grammar& Parser::grammar() const { return compiled_->grammar; }

ParseResult Parser::parse(const TokenSequence& tokens, const ParseConfig& config) const {
  const CompiledGrammar& g = *compiled_;
  BuiltChart built = build_chart(g, tokens, config);
  const std::size_t bound = tree_bound(g, tokens, config);

  ParseResult result;
  result.stats = built.stats;
  if (bound == 0) {
    result.search_exhausted = false;
    return result;
  }
  Extractor extractor(g, *built.chart, bound);
  std::map<std::string, Derivation> unique;
  for (int id : root_items(g, *built.chart, config.start)) {
    const std::string& tree_id = g.tree(g.node(built.chart->item(id).node).tree).id;
    for (const auto& f : extractor.expand(id)) {
      Derivation d{tree_id, f.attachments};
      canonicalize(d);
      std::string key = to_sexpr(d);
      unique.emplace(std::move(key), std::move(d));
    }
  }
  result.search_exhausted = !extractor.truncated();
  result.derivations.reserve(unique.size());
  for (auto& [key, d] : unique) result.derivations.push_back(std::move(d));
  return result;
}

std::uint64_t Parser::count(const TokenSequence& tokens, const ParseConfig& config) const {
  const CompiledGrammar& g = *compiled_;
  BuiltChart built = build_chart(g, tokens, config);
  const std::size_t bound = tree_bound(g, tokens, config);
  if (bound == 0) return 0;
  Counter counter(*built.chart, bound);
  std::uint64_t total = 0;
  for (int id : root_items(g, *built.chart, config.start)) {
    const auto& poly = counter.count(id);
    for (std::uint64_t c : poly) total = sat_add(total, c);
  }
  return total;
}

Verdict Parser::judge(const TokenSequence& tokens, const ParseConfig& config) const {
  ParseResult r = parse(tokens, config);
  Verdict v;
  v.derivation_count = r.derivations.size();
  v.status = r.derivations.empty() ? Status::Underivable : Status::Derivable;
  v.search_exhausted = r.search_exhausted;
  const std::size_t keep = std::min(config.max_derivations, r.derivations.size());
  v.witnesses.assign(std::make_move_iterator(r.derivations.begin()),
                     std::make_move_iterator(r.derivations.begin() + static_cast<std::ptrdiff_t>(keep)));
  return v;
}

namespace {

/// Yields as interned-token vectors; kGap marks the foot position.
constexpr int kGap = -1;
using Yield = std::vector<int>;
using YieldSet = std::set<Yield>;
constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max() / 4;

Yield splice(const Yield& outer, const Yield& inner) {
  Yield out;
  out.reserve(outer.size() + inner.size());
  for (int t : outer) {
    if (t == kGap) {
      out.insert(out.end(), inner.begin(), inner.end());
    } else {
      out.push_back(t);
    }
  }
  return out;
}

/// Lower bounds used to skip work the length limit rules out: the fewest
/// tokens a node's subtree can yield, and the fewest tokens a complete
/// derivation from `start` must place outside a node. A foot counts as one
/// token because whatever it receives dominates an anchor.
struct LengthBounds {
  std::vector<std::size_t> inside;   // per node
  std::vector<std::size_t> outside;  // per node; kUnreachable if unusable

  LengthBounds(const CompiledGrammar& g, int start) {
    const std::size_t cats = g.category_names.size();
    inside.assign(g.nodes.size(), kUnreachable);
    std::vector<std::size_t> initial_min(cats, kUnreachable);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const FlatTree& t : g.trees) {
        for (auto it = t.nodes.begin(); it != t.nodes.end(); ++it) {  // children precede parents
          const FlatNode& fn = g.node(*it);
          std::size_t v = 0;
          switch (fn.kind) {
            case NodeKind::Anchor:
            case NodeKind::Foot:
              v = 1;
              break;
            case NodeKind::SubstitutionSlot:
              v = initial_min[static_cast<std::size_t>(fn.category)];
              break;
            case NodeKind::Internal:
              for (int c : fn.children) v = std::min(kUnreachable, v + inside[static_cast<std::size_t>(c)]);
              break;
          }
          if (v < inside[static_cast<std::size_t>(*it)]) {
            inside[static_cast<std::size_t>(*it)] = v;
            changed = true;
          }
        }
        if (!t.auxiliary) {
          const int cat = g.node(t.root).category;
          std::size_t& m = initial_min[static_cast<std::size_t>(cat)];
          m = std::min(m, inside[static_cast<std::size_t>(t.root)]);
        }
      }
    }

    outside.assign(g.nodes.size(), kUnreachable);
    changed = true;
    while (changed) {
      changed = false;
      for (const FlatTree& t : g.trees) {
        const int cat = g.node(t.root).category;
        std::size_t root = kUnreachable;
        if (!t.auxiliary) {
          if (cat == start) root = 0;
          for (int s : g.slots_by_cat[static_cast<std::size_t>(cat)]) root = std::min(root, outside[static_cast<std::size_t>(s)]);
        } else {
          for (std::size_t n = 0; n < g.nodes.size(); ++n) {
            const FlatNode& fn = g.nodes[n];
            if (fn.kind == NodeKind::Internal && fn.category == cat) root = std::min(root, outside[n]);
          }
        }
        changed |= relax(g, t.root, root);
        for (auto it = t.nodes.rbegin(); it != t.nodes.rend(); ++it) {  // parents precede children
          const FlatNode& fn = g.node(*it);
          if (fn.parent < 0) continue;
          const std::size_t above = outside[static_cast<std::size_t>(fn.parent)];
          if (above >= kUnreachable) continue;
          std::size_t v = above;
          for (int sib : g.node(fn.parent).children) {
            if (sib != *it) v += inside[static_cast<std::size_t>(sib)];
          }
          changed |= relax(g, *it, v);
        }
      }
    }
  }

  bool relax(const CompiledGrammar&, int node, std::size_t v) {
    if (v < outside[static_cast<std::size_t>(node)]) {
      outside[static_cast<std::size_t>(node)] = v;
      return true;
    }
    return false;
  }
};

/// Generates yields bottom-up by length: every set for length L is closed
/// before L + 1 is started. Yields of trees sharing a root category are
/// pooled per category, so interchangeable trees cost nothing extra.
class Generator {
 public:
  Generator(const CompiledGrammar& g, int start, std::size_t max_len)
      : g_(g), max_len_(max_len), bounds_(g, start),
        top_(g.nodes.size(), std::vector<YieldSet>(max_len + 1)),
        bottom_(g.nodes.size(), std::vector<YieldSet>(max_len + 1)),
        initial_pool_(g.category_names.size(), std::vector<YieldSet>(max_len + 1)),
        aux_pool_(g.category_names.size(), std::vector<YieldSet>(max_len + 1)) {}

  void run() {
    for (std::size_t len = 0; len <= max_len_; ++len) {
      std::vector<int> active;
      for (std::size_t n = 0; n < g_.nodes.size(); ++n) {
        if (bounds_.outside[n] + len <= max_len_ && bounds_.inside[n] <= len + 1) active.push_back(static_cast<int>(n));
      }
      bool changed = true;
      while (changed) {
        changed = false;
        for (int n : active) changed |= step(n, len);
      }
    }
  }

  const YieldSet& initial_pool(int cat, std::size_t len) const {
    return initial_pool_[static_cast<std::size_t>(cat)][len];
  }

 private:
  static bool insert_all(YieldSet& into, const YieldSet& from) {
    std::size_t before = into.size();
    into.insert(from.begin(), from.end());
    return into.size() != before;
  }

  bool step(int n, std::size_t len) {
    const FlatNode& fn = g_.node(n);
    auto& top = top_[static_cast<std::size_t>(n)][len];
    const std::size_t cat = static_cast<std::size_t>(fn.category);
    bool changed = false;
    switch (fn.kind) {
      case NodeKind::Anchor:
        if (len == 1) changed |= top.insert({fn.token}).second;
        return changed;
      case NodeKind::Foot:
        if (len == 0) changed |= top.insert({kGap}).second;
        return changed;
      case NodeKind::SubstitutionSlot:
        return insert_all(top, initial_pool_[cat][len]);
      case NodeKind::Internal:
        break;
    }

    auto& bottom = bottom_[static_cast<std::size_t>(n)][len];
    std::function<void(std::size_t, std::size_t, Yield&)> rec = [&](std::size_t c, std::size_t used,
                                                                    Yield& acc) {
      if (c == fn.children.size()) {
        if (used == len) changed |= bottom.insert(acc).second;
        return;
      }
      const int child = fn.children[c];
      for (std::size_t l = 0; used + l <= len; ++l) {
        for (const auto& y : top_[static_cast<std::size_t>(child)][l]) {
          const std::size_t mark = acc.size();
          acc.insert(acc.end(), y.begin(), y.end());
          rec(c + 1, used + l, acc);
          acc.resize(mark);
        }
      }
    };
    Yield acc;
    rec(0, 0, acc);

    changed |= insert_all(top, bottom);
    for (std::size_t a = 1; a <= len; ++a) {
      for (const auto& outer : aux_pool_[cat][a]) {
        for (const auto& inner : bottom_[static_cast<std::size_t>(n)][len - a]) {
          changed |= top.insert(splice(outer, inner)).second;
        }
      }
    }
    if (fn.parent < 0) {
      auto& pool = (g_.tree(fn.tree).auxiliary ? aux_pool_ : initial_pool_)[cat][len];
      changed |= insert_all(pool, top);
    }
    return changed;
  }

  const CompiledGrammar& g_;
  std::size_t max_len_;
  LengthBounds bounds_;
  std::vector<std::vector<YieldSet>> top_;
  std::vector<std::vector<YieldSet>> bottom_;
  std::vector<std::vector<YieldSet>> initial_pool_;  // [category][len]
  std::vector<std::vector<YieldSet>> aux_pool_;      // [category][len]
};

}  // namespace

std::set<TokenSequence> Parser::enumerate_strings(const Category& start, std::size_t max_len) const {
  const CompiledGrammar& g = *compiled_;
  std::set<TokenSequence> out;
  const int cat = g.find_category(start);
  if (cat < 0 || max_len == 0) return out;
  Generator gen(g, cat, max_len);
  gen.run();
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (const auto& y : gen.initial_pool(cat, len)) {
      TokenSequence seq;
      seq.reserve(y.size());
      for (int tok : y) seq.push_back(g.token_values[static_cast<std::size_t>(tok)]);
      out.insert(std::move(seq));
    }
  }
  return out;
}

std::vector<Derivation> parse(const Grammar& grammar, const TokenSequence& tokens,
                              const ParseConfig& config) {
  return Parser(grammar).parse(tokens, config).derivations;
}

Verdict judge(const Grammar& grammar, const TokenSequence& tokens, const ParseConfig& config) {
  return Parser(grammar).judge(tokens, config);
}

std::vector<Derivation> two_stage_parse(const Grammar& grammar, const TokenSequence& tokens,
                                        ParseConfig config) {
  config.mode = ParseMode::TwoStage;
  return Parser(grammar).parse(tokens, config).derivations;
}

std::set<TokenSequence> enumerate_strings(const Grammar& grammar, const Category& start,
                                          std::size_t max_len) {
  return Parser(grammar).enumerate_strings(start, max_len);
}

}  // namespace ltag
