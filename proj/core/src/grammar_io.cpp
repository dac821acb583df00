#include "ltag/grammar_io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace ltag {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

/// Splits text into lines without the trailing newline (and without '\r').
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    pos = nl + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool is_comment_or_blank(std::string_view line) {
  std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

/// Cursor over one line; columns are 1-based byte offsets.
class LineCursor {
 public:
  LineCursor(std::string_view line, std::size_t line_no, std::size_t offset = 0)
      : line_(line), line_no_(line_no), pos_(offset) {}

  void skip_space() {
    while (pos_ < line_.size() && is_space(line_[pos_])) ++pos_;
  }
  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return line_[pos_]; }
  std::size_t column() const { return pos_ + 1; }
  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

  /// Reads up to whitespace or a parenthesis.
  std::string_view word() {
    std::size_t start = pos_;
    while (pos_ < line_.size() && !is_space(line_[pos_]) && line_[pos_] != '(' && line_[pos_] != ')') {
      ++pos_;
    }
    return line_.substr(start, pos_ - start);
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(column(), message); }
  [[noreturn]] void fail_at(std::size_t col, const std::string& message) const {
    throw ParseError(line_no_, col, message);
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_;
};

Category category_at(LineCursor& cur, std::string_view text, std::size_t col) {
  if (!Category::is_valid(text)) cur.fail_at(col, "invalid category '" + std::string(text) + "'");
  return Category(std::string(text));
}

Node parse_node(LineCursor& cur, const Category* parent) {
  cur.skip_space();
  if (cur.at_end()) cur.fail("unexpected end of tree expression");
  std::size_t col = cur.column();
  char c = cur.peek();
  if (c == '(') {
    cur.advance();
    cur.skip_space();
    std::size_t cat_col = cur.column();
    std::string_view label = cur.word();
    if (label.empty()) cur.fail("expected a category after '('");
    Category cat = category_at(cur, label, cat_col);
    std::vector<Node> children;
    for (;;) {
      cur.skip_space();
      if (cur.at_end()) cur.fail_at(col, "unbalanced '('");
      if (cur.peek() == ')') {
        cur.advance();
        break;
      }
      children.push_back(parse_node(cur, &cat));
    }
    return Node::internal(std::move(cat), std::move(children));
  }
  if (c == ')') cur.fail("unexpected ')'");
  if (c == '#') {
    cur.advance();
    std::string_view surface = cur.word();
    if (surface.empty()) cur.fail_at(col, "empty anchor");
    if (!parent) cur.fail_at(col, "root must be an internal node");
    return Node::anchor(*parent, std::string(surface));
  }
  std::string_view atom = cur.word();
  if (atom.size() >= 2 && (atom.back() == '^' || atom.back() == '*')) {
    Category cat = category_at(cur, atom.substr(0, atom.size() - 1), col);
    return atom.back() == '^' ? Node::slot(std::move(cat)) : Node::foot(std::move(cat));
  }
  cur.fail_at(col, "leaf '" + std::string(atom) + "' must be CAT^, CAT* or #surface");
}

Node parse_expression_in(LineCursor& cur) {
  Node root = parse_node(cur, nullptr);
  cur.skip_space();
  if (!cur.at_end() && cur.peek() != '#') cur.fail("trailing text after tree expression");
  return root;
}

struct ParsedLine {
  std::size_t line_no;
  ElementaryTree tree;
};

ParsedLine parse_tree_line(std::string_view line, std::size_t line_no) {
  LineCursor cur(line, line_no);
  cur.skip_space();
  std::size_t kw_col = cur.column();
  std::string_view kw = cur.word();
  if (kw != "tree") cur.fail_at(kw_col, "expected 'tree'");

  cur.skip_space();
  std::size_t id_col = cur.column();
  std::string_view id = cur.word();
  if (id.empty() || id.front() == '#') cur.fail_at(id_col, "expected a tree id");

  cur.skip_space();
  std::size_t lang_col = cur.column();
  std::string_view lang = cur.word();
  if (!LanguageTag::is_valid(lang)) cur.fail_at(lang_col, "invalid language tag '" + std::string(lang) + "'");

  cur.skip_space();
  std::size_t type_col = cur.column();
  std::string_view type = cur.word();
  TreeType tree_type;
  if (type == "initial") {
    tree_type = TreeType::Initial;
  } else if (type == "auxiliary") {
    tree_type = TreeType::Auxiliary;
  } else {
    cur.fail_at(type_col, "expected 'initial' or 'auxiliary'");
  }

  Node root = parse_expression_in(cur);
  return {line_no, ElementaryTree(std::string(id), tree_type, LanguageTag(std::string(lang)),
                                  std::move(root))};
}

/// Categories rooted by unanchored initial trees, with edges to the slot
/// categories of those trees. Returns one cycle (as a category path) or empty.
std::vector<std::string> find_unanchored_cycle(const Grammar& grammar) {
  std::map<std::string, std::set<std::string>> edges;
  for (const auto& [id, tree] : grammar.trees()) {
    if (tree.is_auxiliary() || count_kind(tree.root(), NodeKind::Anchor) != 0) continue;
    edges[tree.root().category.str()];
  }
  for (const auto& [id, tree] : grammar.trees()) {
    if (tree.is_auxiliary() || count_kind(tree.root(), NodeKind::Anchor) != 0) continue;
    std::function<void(const Node&)> walk = [&](const Node& n) {
      if (n.kind == NodeKind::SubstitutionSlot && edges.count(n.category.str())) {
        edges[tree.root().category.str()].insert(n.category.str());
      }
      for (const auto& c : n.children) walk(c);
    };
    walk(tree.root());
  }

  std::map<std::string, int> state;  // 0 unseen, 1 on stack, 2 done
  std::vector<std::string> stack;
  std::vector<std::string> cycle;
  std::function<bool(const std::string&)> dfs = [&](const std::string& v) {
    state[v] = 1;
    stack.push_back(v);
    for (const auto& w : edges[v]) {
      if (state[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle.assign(it, stack.end());
        cycle.push_back(w);
        return true;
      }
      if (state[w] == 0 && dfs(w)) return true;
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };
  for (const auto& [v, _] : edges) {
    if (state[v] == 0 && dfs(v)) return cycle;
  }
  return {};
}

std::string join_path(const std::vector<std::string>& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += " -> ";
    out += path[i];
  }
  return out;
}

void write_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Internal:
      out += '(';
      out += n.category.str();
      for (const auto& c : n.children) {
        out += ' ';
        write_node(c, out);
      }
      out += ')';
      break;
    case NodeKind::SubstitutionSlot:
      out += n.category.str();
      out += '^';
      break;
    case NodeKind::Foot:
      out += n.category.str();
      out += '*';
      break;
    case NodeKind::Anchor:
      out += '#';
      out += n.surface;
      break;
  }
}

}  // namespace

Grammar parse_grammar(std::string_view text, Validation mode) {
  Grammar grammar;
  std::map<std::string, std::size_t> line_of;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_comment_or_blank(lines[i])) continue;
    ParsedLine parsed = parse_tree_line(lines[i], i + 1);
    const std::string id = parsed.tree.id();
    if (grammar.find(id)) {
      throw ParseError(parsed.line_no, 1, "duplicate tree id '" + id + "'");
    }
    if (mode == Validation::Strict) {
      auto violations = validate_elementary(parsed.tree);
      if (!violations.empty()) {
        const auto& v = violations.front();
        throw ParseError(parsed.line_no, 1,
                         "tree " + id + ": " + v.message + " at " + v.address.str());
      }
    }
    line_of[id] = parsed.line_no;
    grammar.add(std::move(parsed.tree));
  }
  if (mode == Validation::Strict) {
    auto cycle = find_unanchored_cycle(grammar);
    if (!cycle.empty()) {
      std::size_t line = 1;
      for (const auto& [id, tree] : grammar.trees()) {
        if (tree.root().category.str() == cycle.front() && !tree.anchored()) {
          line = line_of[id];
          break;
        }
      }
      throw ParseError(line, 1, "unanchored-label cycle: " + join_path(cycle));
    }
  }
  return grammar;
}

std::string serialize_node(const Node& node) {
  std::string out;
  write_node(node, out);
  return out;
}

std::string serialize_tree(const ElementaryTree& tree) {
  return "tree " + tree.id() + " " + tree.language().str() + " " +
         std::string(to_string(tree.type())) + " " + serialize_node(tree.root());
}

std::string serialize_grammar(const Grammar& grammar) {
  std::string out;
  for (const auto& [id, tree] : grammar.trees()) {
    out += serialize_tree(tree);
    out += '\n';
  }
  return out;
}

Node parse_tree_expression(std::string_view text) {
  LineCursor cur(text, 1);
  return parse_expression_in(cur);
}

bool ValidationReport::ok() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(), [](const Finding& f) {
    return f.severity == Severity::Error;
  }));
}

std::size_t ValidationReport::warning_count() const { return findings.size() - error_count(); }

std::string ValidationReport::str() const {
  std::string out;
  for (const auto& f : findings) {
    out += f.severity == Severity::Error ? "error" : "warning";
    out += ": ";
    if (!f.tree_id.empty()) out += f.tree_id + " @" + f.address.str() + ": ";
    out += f.message;
    out += '\n';
  }
  return out;
}

ValidationReport validate_grammar(const Grammar& grammar) {
  ValidationReport report;
  for (const auto& [id, tree] : grammar.trees()) {
    for (auto& v : validate_elementary(tree)) {
      report.findings.push_back({Severity::Error, id, v.address, v.message});
    }
  }

  auto cycle = find_unanchored_cycle(grammar);
  if (!cycle.empty()) {
    report.findings.push_back(
        {Severity::Error, "", NodeAddress::root(), "unanchored-label cycle: " + join_path(cycle)});
  }

  std::set<Category> rooted;
  for (const auto& [id, tree] : grammar.trees()) {
    if (!tree.is_auxiliary()) rooted.insert(tree.root().category);
  }
  for (const auto& [id, tree] : grammar.trees()) {
    std::function<void(const Node&, const NodeAddress&)> walk = [&](const Node& n,
                                                                    const NodeAddress& addr) {
      if (n.kind == NodeKind::SubstitutionSlot && !rooted.count(n.category)) {
        report.findings.push_back({Severity::Warning, id, addr,
                                   "unfillable slot: no initial tree rooted " + n.category.str()});
      }
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        walk(n.children[i], addr.child(static_cast<int>(i + 1)));
      }
    };
    walk(tree.root(), NodeAddress::root());
  }
  return report;
}

std::string_view to_string(Expectation e) {
  return e == Expectation::Derivable ? "derivable" : "underivable";
}

TokenSequence parse_token_string(std::string_view text) {
  TokenSequence out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (is_space(text[pos]) || text[pos] == '\n')) ++pos;
    if (pos >= text.size()) break;
    std::size_t start = pos;
    while (pos < text.size() && !is_space(text[pos]) && text[pos] != '\n') ++pos;
    std::string_view item = text.substr(start, pos - start);
    std::size_t colon = item.rfind(':');
    std::size_t col = start + 1;
    if (colon == std::string_view::npos) {
      throw ParseError(1, col, "missing language tag in '" + std::string(item) + "'");
    }
    std::string_view surface = item.substr(0, colon);
    std::string_view lang = item.substr(colon + 1);
    if (surface.empty()) throw ParseError(1, col, "empty surface in '" + std::string(item) + "'");
    if (lang.empty()) throw ParseError(1, col, "empty language tag in '" + std::string(item) + "'");
    if (!LanguageTag::is_valid(lang)) {
      throw ParseError(1, col + colon + 1, "invalid language tag '" + std::string(lang) + "'");
    }
    out.emplace_back(std::string(surface), LanguageTag(std::string(lang)));
  }
  return out;
}

std::vector<CorpusItem> parse_corpus(std::string_view text) {
  std::vector<CorpusItem> items;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    const std::size_t line_no = i + 1;
    if (is_comment_or_blank(line)) continue;

    std::vector<std::string_view> fields;
    std::vector<std::size_t> columns;
    std::size_t pos = 0;
    for (;;) {
      std::size_t tab = line.find('\t', pos);
      columns.push_back(pos + 1);
      if (tab == std::string_view::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, tab - pos));
      pos = tab + 1;
    }
    if (fields.size() != 5) {
      throw ParseError(line_no, 1, "expected 5 tab-separated fields, found " +
                                       std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(line_no, 1, "empty item id");

    Expectation expected;
    if (fields[1] == "derivable") {
      expected = Expectation::Derivable;
    } else if (fields[1] == "underivable") {
      expected = Expectation::Underivable;
    } else {
      throw ParseError(line_no, columns[1], "expected value must be 'derivable' or 'underivable'");
    }

    if (!Category::is_valid(fields[2])) {
      throw ParseError(line_no, columns[2], "invalid start category '" + std::string(fields[2]) + "'");
    }

    TokenSequence tokens;
    try {
      tokens = parse_token_string(fields[3]);
    } catch (const ParseError& e) {
      throw ParseError(line_no, columns[3] + e.column() - 1, e.detail());
    }
    if (tokens.empty()) throw ParseError(line_no, columns[3], "empty token sequence");

    items.push_back({std::string(fields[0]), expected, Category(std::string(fields[2])),
                     std::move(tokens), std::string(fields[4])});
  }
  return items;
}

namespace {

Derivation parse_derivation_node(LineCursor& cur) {
  cur.skip_space();
  if (cur.at_end() || cur.peek() != '(') cur.fail("expected '('");
  cur.advance();
  cur.skip_space();
  std::string_view id = cur.word();
  if (id.empty()) cur.fail("expected a tree id");
  Derivation d{std::string(id), {}};
  for (;;) {
    cur.skip_space();
    if (cur.at_end()) cur.fail("unbalanced '('");
    if (cur.peek() == ')') {
      cur.advance();
      return d;
    }
    if (cur.peek() != '(') cur.fail("expected '(' or ')'");
    cur.advance();
    cur.skip_space();
    std::string_view op = cur.word();
    Operation operation;
    if (op == "subst") {
      operation = Operation::Substitute;
    } else if (op == "adjoin") {
      operation = Operation::Adjoin;
    } else {
      cur.fail("expected 'subst' or 'adjoin'");
    }
    cur.skip_space();
    std::size_t addr_col = cur.column();
    std::string_view addr = cur.word();
    NodeAddress address;
    try {
      address = NodeAddress::parse(addr);
    } catch (const TagError& e) {
      cur.fail_at(addr_col, e.what());
    }
    Derivation child = parse_derivation_node(cur);
    cur.skip_space();
    if (cur.at_end() || cur.peek() != ')') cur.fail("expected ')'");
    cur.advance();
    d.attachments.push_back({operation, std::move(address), std::move(child)});
  }
}

}  // namespace

Derivation parse_derivation(std::string_view text) {
  LineCursor cur(text, 1);
  Derivation d = parse_derivation_node(cur);
  cur.skip_space();
  if (!cur.at_end()) cur.fail("trailing text after derivation");
  return d;
}

std::string_view to_string(AdjectiveOrder order) {
  return order == AdjectiveOrder::AdjN ? "adj-n" : "n-adj";
}

LanguageOrders parse_language_manifest(std::string_view text) {
  LanguageOrders out;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_comment_or_blank(lines[i])) continue;
    std::string_view line = lines[i];
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      throw ParseError(i + 1, 1, "expected 2 tab-separated fields");
    }
    std::string_view tag = line.substr(0, tab);
    std::string_view order = line.substr(tab + 1);
    if (!LanguageTag::is_valid(tag)) throw ParseError(i + 1, 1, "invalid language tag");
    AdjectiveOrder value;
    if (order == "adj-n") {
      value = AdjectiveOrder::AdjN;
    } else if (order == "n-adj") {
      value = AdjectiveOrder::NAdj;
    } else {
      throw ParseError(i + 1, tab + 2, "order class must be 'adj-n' or 'n-adj'");
    }
    if (!out.emplace(LanguageTag(std::string(tag)), value).second) {
      throw ParseError(i + 1, 1, "language listed twice");
    }
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TagError(ErrorKind::InvalidInput, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Grammar load_grammar(const std::filesystem::path& path, Validation mode) {
  std::string text = read_text_file(path);
  try {
    return parse_grammar(text, mode);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path.string() + ": " + e.detail());
  }
}

}  // namespace ltag
