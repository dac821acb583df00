#include "ltag/cs_eval.hpp"

#include <algorithm>
#include <sstream>

namespace ltag {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::ModifierTrees:
      return "modifier-trees";
    case Variant::AdjectiveHeaded:
      return "adjective-headed";
    case Variant::NounHeaded:
      return "noun-headed";
  }
  return "?";
}

bool is_np_modifier(const ElementaryTree& tree) {
  return tree.is_auxiliary() && !tree.anchored() && tree.root().category == Category("NP");
}

namespace {

AdjectiveOrder order_of(const LanguageOrders& orders, const LanguageTag& lang) {
  auto it = orders.find(lang);
  if (it == orders.end()) {
    throw TagError(ErrorKind::MissingFragment, "no adjective order declared for language " + lang.str());
  }
  return it->second;
}

bool anchored_initial(const ElementaryTree& t, const char* category) {
  return !t.is_auxiliary() && t.anchored() && t.root().category == Category(category);
}

}  // namespace

Grammar build_variant(const Grammar& grammar, Variant v, const LanguageOrders& orders) {
  if (v == Variant::ModifierTrees) return grammar;

  const Category np("NP");
  const Category adjp("AdjP");
  const char* base = v == Variant::AdjectiveHeaded ? "AdjP" : "NP";
  bool has_modifier = false;
  bool has_base = false;
  for (const auto& [id, t] : grammar.trees()) {
    has_modifier |= is_np_modifier(t);
    has_base |= anchored_initial(t, base);
  }
  if (!has_modifier) throw TagError(ErrorKind::MissingFragment, "grammar has no unanchored NP modifier tree");
  if (!has_base) {
    throw TagError(ErrorKind::MissingFragment, std::string("grammar has no anchored ") + base + " initial tree");
  }

  Grammar out;
  for (const auto& [id, t] : grammar.trees()) {
    if (is_np_modifier(t)) continue;
    out.add(t);
    if (!anchored_initial(t, base)) continue;
    const bool adj_first = order_of(orders, t.language()) == AdjectiveOrder::AdjN;
    if (v == Variant::AdjectiveHeaded) {
      std::vector<Node> kids{t.root(), Node::foot(np)};
      if (!adj_first) std::swap(kids[0], kids[1]);
      out.add(ElementaryTree(id + "_adjhead", TreeType::Auxiliary, t.language(), Node::internal(np, std::move(kids))));
    } else {
      std::vector<Node> kids = t.root().children;
      kids.insert(adj_first ? kids.begin() : kids.end(), Node::slot(adjp));
      out.add(ElementaryTree(id + "_adjslot", TreeType::Initial, t.language(), Node::internal(np, std::move(kids))));
    }
  }
  return out;
}

std::size_t Report::passed() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; }));
}

Report run_corpus(const Parser& parser, const std::vector<CorpusItem>& corpus, const ParseConfig& config) {
  Report report;
  for (const auto& item : corpus) {
    ParseConfig cfg = config;
    cfg.start = item.start;
    Verdict verdict;
    try {
      verdict = parser.judge(item.tokens, cfg);
    } catch (const TagError& e) {
      throw TagError(e.kind(), item.id + ": " + e.what());
    }
    const bool derivable = verdict.status == Status::Derivable;
    report.rows.push_back({item.id, item.expected, verdict.status,
                           derivable == (item.expected == Expectation::Derivable), verdict.derivation_count,
                           verdict.search_exhausted});
  }
  return report;
}

Report run_corpus(const Grammar& grammar, const std::vector<CorpusItem>& corpus, const ParseConfig& config) {
  return run_corpus(Parser(grammar), corpus, config);
}

std::string report_tsv(const Report& report) {
  std::ostringstream out;
  out << "id\texpected\tobserved\tpass\twitness_count\n";
  for (const auto& r : report.rows) {
    out << r.id << '\t' << to_string(r.expected) << '\t' << to_string(r.observed) << '\t'
        << (r.pass ? "pass" : "fail") << '\t' << r.witness_count << '\n';
  }
  return out.str();
}

namespace {

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line.append(widths[c] - row[c].size() + 2, ' ');
    }
    out += line + '\n';
  }
  return out;
}

}  // namespace

std::string report_table(const Report& report) {
  std::vector<std::vector<std::string>> rows{{"id", "expected", "observed", "result", "witnesses"}};
  for (const auto& r : report.rows) {
    rows.push_back({r.id, std::string(to_string(r.expected)), std::string(to_string(r.observed)),
                    r.pass ? "PASS" : "FAIL", std::to_string(r.witness_count)});
  }
  return render_table(rows) + std::to_string(report.passed()) + "/" + std::to_string(report.total()) +
         " passed\n";
}

std::vector<Variant> Comparison::matching() const {
  std::vector<Variant> out;
  for (std::size_t v = 0; v < verdicts.size(); ++v) {
    bool all = true;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      all &= (verdicts[v][i] == Status::Derivable) == (expected[i] == Expectation::Derivable);
    }
    if (all) out.push_back(kAllVariants[v]);
  }
  return out;
}

const std::vector<Status>& Comparison::of(Variant v) const {
  return verdicts.at(static_cast<std::size_t>(v));
}

Comparison compare_variants(const Grammar& grammar, const LanguageOrders& orders,
                            const std::vector<CorpusItem>& corpus, const ParseConfig& config) {
  Comparison out;
  for (const auto& item : corpus) {
    out.ids.push_back(item.id);
    out.expected.push_back(item.expected);
  }
  for (Variant v : kAllVariants) {
    Report r = run_corpus(build_variant(grammar, v, orders), corpus, config);
    std::vector<Status> column;
    for (const auto& row : r.rows) column.push_back(row.observed);
    out.verdicts.push_back(std::move(column));
  }
  return out;
}

std::string comparison_tsv(const Comparison& c) {
  std::ostringstream out;
  out << "id\texpected";
  for (Variant v : kAllVariants) out << '\t' << to_string(v);
  out << '\n';
  for (std::size_t i = 0; i < c.ids.size(); ++i) {
    out << c.ids[i] << '\t' << to_string(c.expected[i]);
    for (const auto& column : c.verdicts) out << '\t' << to_string(column[i]);
    out << '\n';
  }
  return out.str();
}

std::string comparison_table(const Comparison& c) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"id", "expected"};
  for (Variant v : kAllVariants) header.emplace_back(to_string(v));
  rows.push_back(std::move(header));
  for (std::size_t i = 0; i < c.ids.size(); ++i) {
    std::vector<std::string> row{c.ids[i], std::string(to_string(c.expected[i]))};
    for (const auto& column : c.verdicts) row.emplace_back(to_string(column[i]));
    rows.push_back(std::move(row));
  }
  return render_table(rows);
}

std::string comparison_summary(const Comparison& c) {
  std::vector<Variant> m = c.matching();
  if (m.empty()) return "no variant matches all attested data\n";
  std::string names;
  for (Variant v : m) {
    if (!names.empty()) names += ", ";
    names += to_string(v);
  }
  return "matches all attested data: " + names + "\n";
}

}  // namespace ltag
