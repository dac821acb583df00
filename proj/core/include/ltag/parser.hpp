#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "ltag/derivation.hpp"
#include "ltag/grammar.hpp"
#include "ltag/grammar_io.hpp"

namespace ltag {

enum class ParseMode {
  SingleStage,
  // Anchored trees first; unanchored trees are then admitted only where a
  // node of the first-stage analyses (or of an admitted tree) licenses them.
  TwoStage,
};

std::string_view to_string(ParseMode mode);

struct ParseConfig {
  Category start{"S"};
  std::size_t max_derivations = 100;
  /// Upper bound on elementary trees per derivation. Unset means the
  /// automatic bound (2U + 3) * n + 1.
  std::optional<std::size_t> max_trees;
  ParseMode mode = ParseMode::SingleStage;
};

/// (2U + 3) * n + 1 with U the number of unanchored trees.
std::size_t auto_tree_bound(const Grammar& grammar, std::size_t token_count);

enum class Status { Derivable, Underivable };

std::string_view to_string(Status s);

struct ParseStats {
  std::size_t stage1_items = 0;  // two-stage only
  std::size_t items = 0;
  std::size_t licensed_unanchored = 0;  // two-stage only
};

struct ParseResult {
  /// Canonicalized, deduplicated, sorted by canonical s-expression.
  std::vector<Derivation> derivations;
  /// False when the tree bound cut off at least one analysis.
  bool search_exhausted = true;
  ParseStats stats;
};

struct Verdict {
  Status status = Status::Underivable;
  std::vector<Derivation> witnesses;  // at most max_derivations
  std::size_t derivation_count = 0;
  bool search_exhausted = true;
};

namespace detail {
struct CompiledGrammar;
}

/// Chart parser over one grammar. The grammar is validated and compiled
/// once; every query is a pure function of (grammar, tokens, config).
class Parser {
 public:
  /// Throws TagError(InvalidGrammar) when validation reports errors.
  explicit Parser(Grammar grammar);
  ~Parser();
  Parser(const Parser&);
  Parser& operator=(const Parser&);
  Parser(Parser&&) noexcept;
  Parser& operator=(Parser&&) noexcept;

  const Grammar& grammar() const;

  ParseResult parse(const TokenSequence& tokens, const ParseConfig& config = {}) const;

  /// Number of derivations parse() would return, without building them.
  std::uint64_t count(const TokenSequence& tokens, const ParseConfig& config = {}) const;

  Verdict judge(const TokenSequence& tokens, const ParseConfig& config = {}) const;

  /// Every yield of length <= max_len of a complete derivation rooted in
  /// an initial tree of category `start`.
  std::set<TokenSequence> enumerate_strings(const Category& start, std::size_t max_len) const;

 private:
  std::shared_ptr<const detail::CompiledGrammar> compiled_;
};

std::vector<Derivation> parse(const Grammar& grammar, const TokenSequence& tokens,
                              const ParseConfig& config = {});
Verdict judge(const Grammar& grammar, const TokenSequence& tokens, const ParseConfig& config = {});
std::vector<Derivation> two_stage_parse(const Grammar& grammar, const TokenSequence& tokens,
                                        ParseConfig config = {});
std::set<TokenSequence> enumerate_strings(const Grammar& grammar, const Category& start,
                                          std::size_t max_len);

}  // namespace ltag
