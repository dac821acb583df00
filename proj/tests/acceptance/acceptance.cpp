// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ltag/cs_eval.hpp"
#include "ltag/oracle.hpp"
#include "ltag/parser.hpp"
#include "support/test_support.hpp"

using namespace ltag;
using namespace ltag::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void fail(const std::string& why) {
    pass = false;
    if (failures.size() < 5) failures.push_back(why);
  }
};

using Check = std::function<void(Outcome&)>;

void corpus_reproduction(Outcome& o) {
  Report r = run_corpus(sample_grammar(), paper_corpus());
  for (const auto& row : r.rows) {
    if (!row.pass) o.fail(row.id + " observed " + std::string(to_string(row.observed)));
  }
  if (r.total() != 9) o.fail("expected 9 corpus items, found " + std::to_string(r.total()));
  o.detail << r.passed() << "/" << r.total() << " items";
}

void head_hypothesis_contrast(Outcome& o) {
  std::vector<CorpusItem> items;
  for (auto& item : paper_corpus()) {
    if (item.id.rfind("ex8", 0) == 0) items.push_back(item);
  }
  Comparison c = compare_variants(sample_grammar(), sample_orders(), items);
  const std::map<Variant, std::set<std::string>> expected{
      {Variant::ModifierTrees, {"ex8a", "ex8b", "ex8c", "ex8d"}},
      {Variant::AdjectiveHeaded, {"ex8b", "ex8d"}},
      {Variant::NounHeaded, {"ex8a", "ex8c"}},
  };
  for (const auto& [variant, want] : expected) {
    std::set<std::string> got;
    const auto& column = c.of(variant);
    for (std::size_t i = 0; i < c.ids.size(); ++i) {
      if (column[i] == Status::Derivable) got.insert(c.ids[i]);
    }
    std::string names;
    for (const auto& id : got) names += (names.empty() ? "" : ",") + id;
    o.detail << to_string(variant) << "={" << names << "} ";
    if (got != want) o.fail(std::string(to_string(variant)) + " derives {" + names + "}");
  }
}

TokenSequence random_sequence(std::mt19937_64& rng, const std::vector<Token>& lex, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len), pick(0, lex.size() - 1);
  TokenSequence s;
  for (std::size_t n = len(rng); n > 0; --n) s.push_back(lex[pick(rng)]);
  return s;
}

void oracle_equivalence(Outcome& o) {
  const Grammar g = sample_grammar();
  const Parser parser(g);
  const Oracle oracle(g);
  const std::vector<Token> lex = lexicon(g);
  const auto classes = token_classes(g);
  std::mt19937_64 rng(20240613);
  std::size_t checked = 0, derivable = 0, derivations = 0;

  auto compare = [&](const TokenSequence& s, const Category& start) {
    ParseConfig cfg;
    cfg.start = start;
    auto mine = sexprs(parser.parse(s, cfg).derivations);
    auto theirs = sexprs(oracle.parse(s, start));
    ++checked;
    if (!mine.empty()) ++derivable;
    derivations += mine.size();
    if (mine != theirs) {
      o.fail(start.str() + " [" + to_string(s) + "] parse " + std::to_string(mine.size()) + " vs oracle " +
             std::to_string(theirs.size()));
    }
  };

  for (const char* name : {"NP", "PP"}) {
    const Category start(name);
    const std::set<Token> reach = reachable_tokens(g, start);
    std::vector<const std::vector<Token>*> alphabet;
    for (const auto& cls : classes) {
      if (reach.count(cls.front())) alphabet.push_back(&cls);
    }
    // Every class pattern up to length 6; each position gets a random
    // member of its class.
    std::size_t patterns = 0;
    for (std::size_t len = 1; len <= 6; ++len) {
      std::vector<std::size_t> digits(len, 0);
      while (true) {
        TokenSequence s;
        for (std::size_t d : digits) {
          const auto& cls = *alphabet[d];
          s.push_back(cls[std::uniform_int_distribution<std::size_t>(0, cls.size() - 1)(rng)]);
        }
        compare(s, start);
        ++patterns;
        std::size_t k = 0;
        while (k < len && ++digits[k] == alphabet.size()) digits[k++] = 0;
        if (k == len) break;
      }
    }
    for (int i = 0; i < 1000; ++i) compare(random_sequence(rng, lex, 6), start);
    o.detail << name << ": " << alphabet.size() << " classes, " << patterns << " patterns + 1000 random; ";
  }

  const Category s_cat("S");
  for (int i = 0; i < 1000; ++i) compare(random_sequence(rng, lex, 6), s_cat);
  const auto clauses = parser.enumerate_strings(s_cat, 6);
  for (const auto& s : clauses) compare(s, s_cat);
  o.detail << "S: 1000 random + " << clauses.size() << " derivable; " << checked << " sequences, " << derivable
           << " derivable, " << derivations << " derivations";
}

void two_stage_equivalence(Outcome& o) {
  const Grammar g = sample_grammar();
  const Parser parser(g);
  ParseConfig single, two;
  two.mode = ParseMode::TwoStage;
  std::size_t checked = 0;
  for (const auto& item : paper_corpus()) {
    single.start = two.start = item.start;
    Verdict a = parser.judge(item.tokens, single), b = parser.judge(item.tokens, two);
    ++checked;
    if (a.status != b.status || a.derivation_count != b.derivation_count ||
        sexprs(a.witnesses) != sexprs(b.witnesses)) {
      o.fail(item.id + " differs between modes");
    }
  }
  for (auto [name, len] : {std::pair{"NP", 5}, std::pair{"PP", 4}}) {
    single.start = two.start = Category(name);
    for (const auto& s : parser.enumerate_strings(Category(name), static_cast<std::size_t>(len))) {
      ++checked;
      const std::uint64_t a = parser.count(s, single), b = parser.count(s, two);
      if (a != b || a == 0) {
        o.fail(std::string(name) + " [" + to_string(s) + "] single " + std::to_string(a) + " two-stage " +
               std::to_string(b));
      }
    }
  }
  o.detail << checked << " inputs";
}

void head_order_projection(Outcome& o) {
  const Parser parser(load_languages({"en", "hi"}));
  const Token on("on", LanguageTag("en")), par("par", LanguageTag("hi"));
  std::size_t with_on = 0, with_par = 0;
  const auto strings = parser.enumerate_strings(Category("PP"), 3);
  for (const auto& s : strings) {
    const auto has = [&](const Token& t) { return std::find(s.begin(), s.end(), t) != s.end(); };
    if (has(on)) {
      ++with_on;
      if (!(s.front() == on)) o.fail("on not initial: " + to_string(s));
    }
    if (has(par)) {
      ++with_par;
      if (!(s.back() == par)) o.fail("par not final: " + to_string(s));
    }
  }
  if (with_on == 0 || with_par == 0) o.fail("no string contains on:en or par:hi");
  o.detail << strings.size() << " strings, " << with_on << " with on:en, " << with_par << " with par:hi";
}

void union_monotonicity(Outcome& o) {
  const auto en = Parser(load_languages({"en"})).enumerate_strings(Category("S"), 6);
  const auto hi = Parser(load_languages({"hi"})).enumerate_strings(Category("S"), 6);
  const auto both = Parser(load_languages({"en", "hi"})).enumerate_strings(Category("S"), 6);
  for (const auto* part : {&en, &hi}) {
    for (const auto& s : *part) {
      if (!both.count(s)) o.fail("missing from union: " + to_string(s));
    }
  }
  if (en.empty() || hi.empty()) o.fail("a monolingual language is empty");
  o.detail << "|EN|=" << en.size() << " |HI|=" << hi.size() << " |EN+HI|=" << both.size();
}

void format_round_trip(Outcome& o) {
  for (const char* lang : {"en", "hi", "es", "it", "ga", "fr"}) {
    const std::string text = read_text_file(data_dir() / "grammars" / (std::string(lang) + ".tag"));
    const Grammar g = parse_grammar(text);
    const std::string canonical = serialize_grammar(g);
    if (!(parse_grammar(canonical) == g)) o.fail(std::string(lang) + ": parse(serialize(g)) != g");
    if (serialize_grammar(parse_grammar(canonical)) != canonical) o.fail(std::string(lang) + ": not idempotent");
    if (canonical != text) o.fail(std::string(lang) + ": shipped file is not canonical");
  }
  o.detail << "6 grammars";
}

void tree_algebra(Outcome& o) {
  TreeFactory f(7);
  const std::size_t rounds = 10000;
  std::size_t substitutions = 0, adjunctions = 0, replays = 0;
  for (std::size_t round = 0; round < rounds || substitutions < rounds; ++round) {
    // Substitution arithmetic and locality.
    DerivedTree host = f.initial(f.category());
    std::vector<NodeAddress> slots;
    addresses_of(host.root(), NodeAddress::root(), NodeKind::SubstitutionSlot, false, slots);
    if (!slots.empty()) {
      const NodeAddress at = slots[static_cast<std::size_t>(f.pick(static_cast<int>(slots.size())))];
      DerivedTree filler = f.initial(find_node(host.root(), at)->category);
      DerivedTree out = substitute(host, at, filler);
      ++substitutions;
      if (out.node_count() != host.node_count() + filler.node_count() - 1) o.fail("substitution node count");
      if (!(*find_node(out.root(), at) == filler.root())) o.fail("substitution did not place filler");
      DerivedTree blanked = out;
      *find_node(blanked.root(), at) = *find_node(host.root(), at);
      if (!(blanked == host)) o.fail("substitution touched nodes outside its site");
    }

    // Adjunction yield splice and locality.
    std::vector<NodeAddress> sites;
    addresses_of(host.root(), NodeAddress::root(), NodeKind::Internal, true, sites);
    const NodeAddress at = sites[static_cast<std::size_t>(f.pick(static_cast<int>(sites.size())))];
    const Node& site = *find_node(host.root(), at);
    DerivedTree aux = f.auxiliary(site.category);
    DerivedTree out = adjoin(host, at, aux);
    ++adjunctions;
    std::vector<std::string> expected;
    for (const auto& s : leaf_symbols(aux.root())) {
      if (s == site.category.str() + "*") {
        auto inner = leaf_symbols(site);
        expected.insert(expected.end(), inner.begin(), inner.end());
      } else {
        expected.push_back(s);
      }
    }
    if (leaf_symbols(*find_node(out.root(), at)) != expected) o.fail("adjunction yield is not a splice");
    if (out.node_count() != host.node_count() + aux.node_count() - 1) o.fail("adjunction node count");
    DerivedTree blanked = out;
    Node restored = site;
    *find_node(blanked.root(), at) = restored;
    if (!(blanked == host)) o.fail("adjunction touched nodes outside its site");
  }

  // Replay round trip: derivations grown at random replay to the tree built
  // step by step, and survive the s-expression format.
  const Grammar g = sample_grammar();
  const Parser parser(g);
  std::mt19937_64 rng(11);
  std::vector<const ElementaryTree*> trees;
  for (const auto& [id, t] : g.trees()) trees.push_back(&t);
  for (std::size_t round = 0; round < rounds; ++round) {
    std::vector<const ElementaryTree*> starts;
    for (auto* t : trees) {
      if (!t->is_auxiliary()) starts.push_back(t);
    }
    const ElementaryTree& root = *starts[rng() % starts.size()];
    // Grow: fill every slot; adjoin at random open nodes up to a budget.
    std::function<Derivation(const ElementaryTree&, int)> grow = [&](const ElementaryTree& t, int budget) {
      Derivation d{t.id(), {}};
      for (std::size_t k = 0; k < t.node_count(); ++k) {
        const NodeAddress& addr = t.address_of(static_cast<int>(k));
        const Node& n = *find_node(t.root(), addr);
        std::vector<const ElementaryTree*> fits;
        if (n.kind == NodeKind::SubstitutionSlot) {
          for (auto* c : trees) {
            if (!c->is_auxiliary() && c->root().category == n.category && c->anchored()) fits.push_back(c);
          }
          d.attachments.push_back({Operation::Substitute, addr, grow(*fits[rng() % fits.size()], budget - 1)});
        } else if (n.kind == NodeKind::Internal && budget > 0 && rng() % 4 == 0) {
          for (auto* c : trees) {
            if (c->is_auxiliary() && c->root().category == n.category) fits.push_back(c);
          }
          if (!fits.empty()) {
            d.attachments.push_back({Operation::Adjoin, addr, grow(*fits[rng() % fits.size()], budget - 1)});
          }
        }
      }
      return d;
    };
    Derivation d = grow(root, 3);
    DerivedTree derived = replay(g, d);
    ++replays;
    if (!derived.is_complete()) o.fail("replay left an open leaf");
    if (!(replay(g, parse_derivation(to_sexpr(d))) == derived)) o.fail("s-expression round trip changed replay");
    const TokenSequence y = yield_tokens(derived);
    if (round % 10 == 0 && y.size() <= 12) {
      ParseConfig cfg;
      cfg.start = root.root().category;
      if (!sexprs(parser.parse(y, cfg).derivations).count(to_sexpr(canonical(d)))) {
        o.fail("parser misses replayed derivation " + to_sexpr(d));
      }
    }
  }
  o.detail << substitutions << " substitutions, " << adjunctions << " adjunctions, " << replays << " replays";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria{
      {"1 paper corpus reproduction", corpus_reproduction},
      {"2 head-hypothesis contrast", head_hypothesis_contrast},
      {"3 oracle equivalence", oracle_equivalence},
      {"4 two-stage equivalence", two_stage_equivalence},
      {"5 head-order projection", head_order_projection},
      {"6 union monotonicity", union_monotonicity},
      {"7 format round trip", format_round_trip},
      {"8 tree-algebra properties", tree_algebra},
  };
  bool all = true;
  const auto begin = std::chrono::steady_clock::now();
  for (const auto& [name, check] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail.str() << " ["
              << std::fixed << std::setprecision(2) << secs << "s]\n";
    for (const auto& why : o.failures) std::cout << "      " << why << '\n';
    all &= o.pass;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  std::cout << "total " << std::fixed << std::setprecision(2) << total << "s\n";
  return all ? 0 : 1;
}
