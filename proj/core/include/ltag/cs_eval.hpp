#pragma once

#include <string>
#include <vector>

#include "ltag/grammar.hpp"
#include "ltag/grammar_io.hpp"
#include "ltag/parser.hpp"

namespace ltag {

// Rival analyses of adnominal adjectives.
enum class Variant {
  ModifierTrees,    // unanchored NP auxiliaries, as shipped
  AdjectiveHeaded,  // each adjective anchors its own NP auxiliary
  NounHeaded,       // each noun anchors an NP with an AdjP slot
};

inline constexpr Variant kAllVariants[] = {Variant::ModifierTrees, Variant::AdjectiveHeaded,
                                           Variant::NounHeaded};

std::string_view to_string(Variant v);

/// Unanchored auxiliary trees rooted in NP.
bool is_np_modifier(const ElementaryTree& tree);

/// Rewrites the adjective fragment of `grammar` per the variant; everything
/// else is copied unchanged. Adjective placement follows `orders`.
/// Throws TagError(MissingFragment) when the grammar lacks the NP modifier
/// trees or the AdjP/NP initials the variant is built from, or when a
/// language has no declared order.
Grammar build_variant(const Grammar& grammar, Variant v, const LanguageOrders& orders);

struct ReportRow {
  std::string id;
  Expectation expected;
  Status observed;
  bool pass;
  std::size_t witness_count;
  bool search_exhausted;
};

struct Report {
  std::vector<ReportRow> rows;

  std::size_t total() const { return rows.size(); }
  std::size_t passed() const;
  std::size_t failed() const { return total() - passed(); }
  bool all_passed() const { return passed() == total(); }
};

/// Judges every item with its own start category; other settings come from
/// `config`. Parse errors are rethrown with the item id prefixed.
Report run_corpus(const Parser& parser, const std::vector<CorpusItem>& corpus, const ParseConfig& config = {});
Report run_corpus(const Grammar& grammar, const std::vector<CorpusItem>& corpus, const ParseConfig& config = {});

std::string report_tsv(const Report& report);
std::string report_table(const Report& report);

struct Comparison {
  std::vector<std::string> ids;
  std::vector<Expectation> expected;
  // verdicts[v][i]: item i under kAllVariants[v]
  std::vector<std::vector<Status>> verdicts;

  /// Variants whose verdicts equal the expectation on every item.
  std::vector<Variant> matching() const;
  const std::vector<Status>& of(Variant v) const;
};

Comparison compare_variants(const Grammar& grammar, const LanguageOrders& orders,
                            const std::vector<CorpusItem>& corpus, const ParseConfig& config = {});

std::string comparison_tsv(const Comparison& comparison);
std::string comparison_table(const Comparison& comparison);
/// One line naming the variants that match all attested data.
std::string comparison_summary(const Comparison& comparison);

}  // namespace ltag
