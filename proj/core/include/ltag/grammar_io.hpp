#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ltag/derivation.hpp"
#include "ltag/grammar.hpp"

namespace ltag {

// Grammar files are line oriented:
//
//   tree <id> <lang> <initial|auxiliary> <s-expression>
//
// `(CAT child...)` is an internal node, `CAT^` a substitution slot, `CAT*`
// the foot and `#surface` the lexical anchor. A line whose first non-blank
// character is `#` is a comment, as is anything after a `#` that follows
// the closing parenthesis of a tree.

enum class Validation {
  Strict,      // reject trees or grammars that fail validation
  SyntaxOnly,  // only reject malformed text and duplicate ids
};

Grammar parse_grammar(std::string_view text, Validation mode = Validation::Strict);

/// Canonical text: trees sorted by id, one per line, single spaces.
std::string serialize_grammar(const Grammar& grammar);
std::string serialize_tree(const ElementaryTree& tree);
std::string serialize_node(const Node& node);

/// Parses one s-expression, e.g. "(PP (P #on) DP^)".
Node parse_tree_expression(std::string_view text);

enum class Severity { Error, Warning };

struct Finding {
  Severity severity;
  std::string tree_id;  // empty for grammar-wide findings
  NodeAddress address;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool ok() const;  // no errors; warnings allowed
  std::size_t error_count() const;
  std::size_t warning_count() const;
  std::string str() const;
};

/// Per-tree violations, unanchored-label cycles (errors) and slots no
/// initial tree can fill (warnings).
ValidationReport validate_grammar(const Grammar& grammar);

enum class Expectation { Derivable, Underivable };

std::string_view to_string(Expectation e);

struct CorpusItem {
  std::string id;
  Expectation expected;
  Category start;
  TokenSequence tokens;
  std::string note;
};

/// Five tab-separated fields: id, expected, start category, tokens, note.
std::vector<CorpusItem> parse_corpus(std::string_view text);

/// Whitespace-separated `surface:lang` items; the last colon splits.
TokenSequence parse_token_string(std::string_view text);

/// Inverse of to_sexpr().
Derivation parse_derivation(std::string_view text);

enum class AdjectiveOrder { AdjN, NAdj };

std::string_view to_string(AdjectiveOrder order);

using LanguageOrders = std::map<LanguageTag, AdjectiveOrder>;

/// `languages.tsv`: tag<TAB>adj-n|n-adj per line.
LanguageOrders parse_language_manifest(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
Grammar load_grammar(const std::filesystem::path& path, Validation mode = Validation::Strict);

}  // namespace ltag
