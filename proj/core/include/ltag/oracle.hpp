#pragma once

#include <memory>
#include <set>
#include <vector>

#include "ltag/derivation.hpp"
#include "ltag/grammar.hpp"

namespace ltag {

inline constexpr std::size_t kOracleMaxTokens = 8;

namespace detail {
struct OracleIndex;
}

/// Brute-force reference parser.
///
/// Grows derived trees top-down with substitute() and adjoin(): open slots
/// are filled leftmost first, then each internal node in preorder either
/// takes no adjunction or one auxiliary tree. No chart and no memoization;
/// meant for cross-checking at desk scale only.
class Oracle {
 public:
  /// Throws TagError(InvalidGrammar) when validation reports errors.
  explicit Oracle(Grammar grammar);
  ~Oracle();
  Oracle(Oracle&&) noexcept;
  Oracle& operator=(Oracle&&) noexcept;

  /// Throws TagError(InvalidInput) on empty input or above kOracleMaxTokens.
  std::vector<Derivation> parse(const TokenSequence& tokens, const Category& start) const;
  std::set<TokenSequence> enumerate_strings(const Category& start, std::size_t max_len) const;

 private:
  Grammar grammar_;
  std::unique_ptr<detail::OracleIndex> index_;
};

std::vector<Derivation> oracle_parse(const Grammar& grammar, const TokenSequence& tokens,
                                     const Category& start);

/// Every complete yield of length <= max_len by the same blind search.
std::set<TokenSequence> oracle_enumerate_strings(const Grammar& grammar, const Category& start,
                                                 std::size_t max_len);

}  // namespace ltag
