#include <gtest/gtest.h>

#include "ltag/grammar_io.hpp"
#include "support/test_support.hpp"

using namespace ltag;
using namespace ltag::testing;

namespace {

struct Position {
  std::size_t line;
  std::size_t column;
  std::string detail;
};

Position grammar_error(const std::string& text) {
  try {
    parse_grammar(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column(), e.detail()};
  }
  ADD_FAILURE() << "accepted: " << text;
  return {0, 0, ""};
}

Position corpus_error(const std::string& text) {
  try {
    parse_corpus(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column(), e.detail()};
  }
  ADD_FAILURE() << "accepted: " << text;
  return {0, 0, ""};
}

std::size_t count(const ValidationReport& r, Severity s) {
  return static_cast<std::size_t>(
      std::count_if(r.findings.begin(), r.findings.end(), [&](const Finding& f) { return f.severity == s; }));
}

}  // namespace

TEST(ParseGrammar, EnglishPreposition) {
  Grammar g = parse_grammar("tree en_on en initial (PP (P #on) DP^)");
  ASSERT_EQ(g.size(), 1u);
  const ElementaryTree& t = g.at("en_on");
  EXPECT_EQ(t.type(), TreeType::Initial);
  ASSERT_NE(t.anchor(), nullptr);
  EXPECT_EQ(t.anchor()->surface, "on");
  EXPECT_EQ(t.anchor()->category, Category("P"));
  EXPECT_EQ(*t.anchor()->language, LanguageTag("en"));
}

TEST(ParseGrammar, ModifierTree) {
  Grammar g = parse_grammar("tree en_adjmod en auxiliary (NP AdjP^ NP*)");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.at("en_adjmod").is_auxiliary());
  EXPECT_FALSE(g.at("en_adjmod").anchored());
  EXPECT_EQ(g.unanchored_count(), 1u);
}

TEST(ParseGrammar, AuxiliaryWithoutFoot) {
  Position p = grammar_error("tree bad xx auxiliary (NP AdjP^)");
  EXPECT_EQ(p.line, 1u);
  EXPECT_NE(p.detail.find("auxiliary tree lacks foot"), std::string::npos);
}

TEST(ParseGrammar, SyntaxErrorsCarryPositions) {
  const std::string head = "tree a en initial ";
  auto expect = [](const Position& p, std::size_t line, std::size_t col, const std::string& what) {
    EXPECT_EQ(p.line, line) << what;
    EXPECT_EQ(p.column, col) << what;
    EXPECT_NE(p.detail.find(what), std::string::npos) << p.detail;
  };
  expect(grammar_error(head + "(PP (P #on) DP^"), 1, 19, "unbalanced");
  expect(grammar_error(head + "(PP (P #on) DP^))"), 1, 35, "trailing text");
  expect(grammar_error(head + "(PP (P #on) dp^)"), 1, 31, "invalid category");
  expect(grammar_error(head + "(PP (P #) DP^)"), 1, 26, "empty anchor");
  expect(grammar_error("tree a en sideways (PP (P #on) DP^)"), 1, 11, "expected 'initial' or 'auxiliary'");
  expect(grammar_error("tre a en initial (PP (P #on) DP^)"), 1, 1, "expected 'tree'");
  expect(grammar_error("# c\n\n" + head + "(PP (P #on) DP^)\ntree b EN initial (PP (P #on) DP^)"), 4, 8,
         "invalid language tag");
}

TEST(ParseGrammar, DuplicateIdReportsSecondLine) {
  Position p = grammar_error("tree a en initial (NP (N #x))\n\ntree a en initial (NP (N #y))");
  EXPECT_EQ(p.line, 3u);
  EXPECT_NE(p.detail.find("duplicate tree id 'a'"), std::string::npos);
}

TEST(ParseGrammar, CommentsAndBlankLines) {
  Grammar g = parse_grammar(
      "# English prepositions\n"
      "\n"
      "   # indented comment\n"
      "tree en_on en initial (PP (P #on) DP^)   # trailing remark\n");
  EXPECT_EQ(g.size(), 1u);
}

TEST(ParseGrammar, MultiwordAnchorIsOneToken) {
  Grammar g = parse_grammar("tree hi_aataa_hai hi initial (S DP^ (VP PP^ PP^ (V #aataa_hai)))");
  EXPECT_EQ(g.at("hi_aataa_hai").anchor()->surface, "aataa_hai");
}

TEST(ParseGrammar, UnanchoredCycleIsAnError) {
  Position p = grammar_error("tree x en initial (X Y^)\ntree y en initial (Y X^)");
  EXPECT_NE(p.detail.find("unanchored-label cycle"), std::string::npos);

  Grammar loose = parse_grammar("tree x en initial (X Y^)\ntree y en initial (Y X^)", Validation::SyntaxOnly);
  ValidationReport r = validate_grammar(loose);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.error_count(), 1u);
  EXPECT_NE(r.str().find("X -> Y -> X"), std::string::npos);
}

TEST(ParseGrammar, AnchoredTreesBreakCycles) {
  EXPECT_NO_THROW(parse_grammar("tree x en initial (X (A #a) Y^)\ntree y en initial (Y X^)"));
}

TEST(ValidateGrammar, ShippedSampleIsClean) {
  ValidationReport r = validate_grammar(sample_grammar());
  EXPECT_TRUE(r.findings.empty()) << r.str();
}

TEST(ValidateGrammar, UnfillableSlotIsAWarning) {
  Grammar g = parse_grammar("tree q en initial (PP (P #on) QP^)");
  ValidationReport r = validate_grammar(g);
  EXPECT_TRUE(r.ok());
  ASSERT_EQ(count(r, Severity::Warning), 1u);
  EXPECT_EQ(r.findings.front().tree_id, "q");
  EXPECT_EQ(r.findings.front().address, NodeAddress::parse("2"));
  EXPECT_NE(r.findings.front().message.find("unfillable slot"), std::string::npos);
}

TEST(ValidateGrammar, UnionOfValidGrammarsCanCycle) {
  Grammar a = parse_grammar("tree x en initial (X Y^)\ntree ya en initial (Y (A #a))");
  Grammar b = parse_grammar("tree y hi initial (Y X^)\ntree xb hi initial (X (B #b))");
  EXPECT_TRUE(validate_grammar(a).ok());
  EXPECT_TRUE(validate_grammar(b).ok());
  EXPECT_FALSE(validate_grammar(unite(a, b)).ok());

  Grammar c = parse_grammar("tree z hi initial (Z X^)\ntree xc hi initial (X (B #b))");
  EXPECT_TRUE(validate_grammar(unite(a, c)).ok());
  EXPECT_THROW(unite(a, a), TagError);
}

TEST(Serialize, ShippedFilesAreCanonical) {
  for (const char* lang : {"en", "hi", "es", "it", "ga", "fr"}) {
    const std::string text = read_text_file(data_dir() / "grammars" / (std::string(lang) + ".tag"));
    EXPECT_EQ(serialize_grammar(parse_grammar(text)), text) << lang;
  }
}

TEST(Serialize, AdjectiveFragment) {
  Grammar g = parse_grammar(
      "tree fr_adjmod fr auxiliary (NP   NP*   AdjP^)\n"
      "tree en_smart en initial (AdjP (Adj #smart))\n"
      "tree en_adjmod en auxiliary (NP AdjP^ NP*)\n"
      "tree fr_exceptionnel fr initial (AdjP (Adj #exceptionnel))\n");
  EXPECT_EQ(serialize_grammar(g),
            "tree en_adjmod en auxiliary (NP AdjP^ NP*)\n"
            "tree en_smart en initial (AdjP (Adj #smart))\n"
            "tree fr_adjmod fr auxiliary (NP NP* AdjP^)\n"
            "tree fr_exceptionnel fr initial (AdjP (Adj #exceptionnel))\n");
}

TEST(Serialize, EmptyGrammar) {
  EXPECT_EQ(serialize_grammar(Grammar{}), "");
  EXPECT_TRUE(parse_grammar("").empty());
}

TEST(Serialize, RandomGrammarsRoundTrip) {
  TreeFactory f(3);
  for (int round = 0; round < 300; ++round) {
    Grammar g;
    const int n = 1 + f.pick(6);
    for (int i = 0; i < n; ++i) {
      const bool aux = f.pick(2) == 0;
      DerivedTree t = aux ? f.auxiliary(f.category()) : f.initial(f.category());
      g.add(ElementaryTree("t" + std::to_string(round) + "_" + std::to_string(i),
                           aux ? TreeType::Auxiliary : TreeType::Initial, LanguageTag("xx"), t.root()));
    }
    const std::string text = serialize_grammar(g);
    Grammar back = parse_grammar(text, Validation::SyntaxOnly);
    EXPECT_EQ(back, g);
    EXPECT_EQ(serialize_grammar(back), text);
  }
}

TEST(ParseCorpus, PaperLines) {
  auto items = parse_corpus(
      "ex3b\tderivable\tS\the:en always:en comes:en to:en the:en office:en time:en par:hi\tPandit\n"
      "ex7\tunderivable\tS\the:en always:en office:en to:en time:en on:en comes:en\tJoshi fn7\n");
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0].id, "ex3b");
  EXPECT_EQ(items[0].expected, Expectation::Derivable);
  EXPECT_EQ(items[0].start, Category("S"));
  EXPECT_EQ(items[0].tokens.size(), 8u);
  EXPECT_EQ(items[0].tokens.back(), Token("par", LanguageTag("hi")));
  EXPECT_EQ(items[0].note, "Pandit");
  EXPECT_EQ(items[1].expected, Expectation::Underivable);
  EXPECT_EQ(items[1].note, "Joshi fn7");
}

TEST(ParseCorpus, ShippedCorpus) {
  auto items = paper_corpus();
  std::vector<std::string> ids;
  for (const auto& i : items) ids.push_back(i.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"ex3a", "ex3b", "ex4a", "ex4b", "ex7", "ex8a", "ex8b", "ex8c", "ex8d"}));
}

TEST(ParseCorpus, Errors) {
  Position arity = corpus_error("# header\nx\tderivable\n");
  EXPECT_EQ(arity.line, 2u);
  EXPECT_NE(arity.detail.find("found 2"), std::string::npos);

  Position expected = corpus_error("a\tmaybe\tS\tx:en\tn");
  EXPECT_EQ(expected.line, 1u);
  EXPECT_EQ(expected.column, 3u);

  Position token = corpus_error("# h\na\tderivable\tS\tx:en y\tn");
  EXPECT_EQ(token.line, 2u);
  EXPECT_EQ(token.column, 20u);
  EXPECT_NE(token.detail.find("missing language tag"), std::string::npos);

  EXPECT_NE(corpus_error("a\tderivable\tS\t\tn").detail.find("empty token sequence"), std::string::npos);
  EXPECT_NE(corpus_error("a\tderivable\ts\tx:en\tn").detail.find("invalid start category"), std::string::npos);
}

TEST(ParseTokens, Examples) {
  EXPECT_EQ(parse_token_string("blanquito:es friends:en"),
            (TokenSequence{Token("blanquito", LanguageTag("es")), Token("friends", LanguageTag("en"))}));
  EXPECT_TRUE(parse_token_string("").empty());
  EXPECT_TRUE(parse_token_string("  \t ").empty());
  try {
    parse_token_string("par");
    ADD_FAILURE();
  } catch (const ParseError& e) {
    EXPECT_NE(e.detail().find("missing language tag"), std::string::npos);
  }
}

TEST(ParseTokens, LastColonSplits) {
  EXPECT_EQ(parse_token_string("a:b:en"), (TokenSequence{Token("a:b", LanguageTag("en"))}));
  EXPECT_THROW(parse_token_string(":en"), ParseError);
  EXPECT_THROW(parse_token_string("par:"), ParseError);
  EXPECT_THROW(parse_token_string("par:HI"), ParseError);
}

TEST(ParseDerivation, RoundTrip) {
  const std::string text = "(en_comes (subst 1 (en_he)) (adjoin 2 (en_always)) (subst 2.2 (en_to (subst 2 (en_time)))))";
  EXPECT_EQ(to_sexpr(parse_derivation(text)), text);
  EXPECT_THROW(parse_derivation("(en_comes (glue 1 (en_he)))"), TagError);
  EXPECT_THROW(parse_derivation("(en_comes"), TagError);
}

TEST(LanguageManifest, ShippedOrders) {
  LanguageOrders o = sample_orders();
  EXPECT_EQ(o.at(LanguageTag("en")), AdjectiveOrder::AdjN);
  EXPECT_EQ(o.at(LanguageTag("hi")), AdjectiveOrder::AdjN);
  for (const char* l : {"es", "it", "ga", "fr"}) EXPECT_EQ(o.at(LanguageTag(l)), AdjectiveOrder::NAdj) << l;
  EXPECT_THROW(parse_language_manifest("en\tsideways\n"), ParseError);
  EXPECT_THROW(parse_language_manifest("en\tadj-n\nen\tn-adj\n"), ParseError);
}
