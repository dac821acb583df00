#include "ltag/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>
#include <sstream>

#include "ltag/cs_eval.hpp"
#include "ltag/grammar_io.hpp"
#include "ltag/parser.hpp"

namespace ltag::cli {

namespace {

constexpr int kError = 2;

struct Options {
  std::vector<std::string> grammars;
  std::string start = "S";
  std::string tokens;
  bool tokens_given = false;
  std::string mode = "single";
  std::size_t max_derivations = 100;
  std::size_t max_len = 0;
  std::string corpus;
  std::string languages;
  bool sexpr = false;
  bool tsv = false;
};

Grammar load_all(const std::vector<std::string>& paths, Validation mode) {
  Grammar g;
  for (const auto& p : paths) {
    try {
      g = unite(g, load_grammar(p, mode));
    } catch (const TagError& e) {
      throw TagError(e.kind(), p + ":" + e.what());
    }
  }
  return g;
}

ParseConfig make_config(const Options& o) {
  ParseConfig cfg;
  cfg.start = Category(o.start);
  cfg.max_derivations = o.max_derivations;
  cfg.mode = o.mode == "two-stage" ? ParseMode::TwoStage : ParseMode::SingleStage;
  return cfg;
}

std::string render_derivation(const Derivation& d, bool sexpr) {
  return sexpr ? to_sexpr(d) + "\n" : to_display(d);
}

int cmd_judge(const Options& o, std::ostream& out) {
  TokenSequence tokens = parse_token_string(o.tokens);
  if (tokens.empty()) throw TagError(ErrorKind::InvalidInput, "empty token sequence");
  Parser parser(load_all(o.grammars, Validation::Strict));
  Verdict v = parser.judge(tokens, make_config(o));
  const bool derivable = v.status == Status::Derivable;
  if (o.tsv) {
    out << "status\tderivation_count\tsearch_exhausted\twitness\n";
    if (v.witnesses.empty()) {
      out << to_string(v.status) << '\t' << v.derivation_count << '\t' << (v.search_exhausted ? "true" : "false")
          << "\t\n";
    }
    for (const auto& w : v.witnesses) {
      out << to_string(v.status) << '\t' << v.derivation_count << '\t' << (v.search_exhausted ? "true" : "false")
          << '\t' << to_sexpr(w) << '\n';
    }
  } else {
    out << (derivable ? "DERIVABLE" : "UNDERIVABLE");
    if (derivable) out << " (" << v.derivation_count << (v.derivation_count == 1 ? " derivation)" : " derivations)");
    out << '\n';
    if (!v.search_exhausted) out << "note: tree bound reached; search not exhausted\n";
    for (const auto& w : v.witnesses) out << render_derivation(w, o.sexpr);
  }
  return derivable ? 0 : 1;
}

int cmd_parse(const Options& o, std::ostream& out) {
  TokenSequence tokens = parse_token_string(o.tokens);
  if (tokens.empty()) throw TagError(ErrorKind::InvalidInput, "empty token sequence");
  Parser parser(load_all(o.grammars, Validation::Strict));
  ParseConfig cfg = make_config(o);
  ParseResult r = parser.parse(tokens, cfg);
  const std::size_t shown = std::min(r.derivations.size(), cfg.max_derivations);
  if (o.tsv) {
    out << "index\tderivation\n";
    for (std::size_t i = 0; i < shown; ++i) out << i + 1 << '\t' << to_sexpr(r.derivations[i]) << '\n';
    return 0;
  }
  out << r.derivations.size() << (r.derivations.size() == 1 ? " derivation" : " derivations");
  if (shown < r.derivations.size()) out << ", showing " << shown;
  out << '\n';
  if (!r.search_exhausted) out << "note: tree bound reached; search not exhausted\n";
  for (std::size_t i = 0; i < shown; ++i) {
    if (!o.sexpr) out << "[" << i + 1 << "]\n";
    out << render_derivation(r.derivations[i], o.sexpr);
  }
  return 0;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  Parser parser(load_all(o.grammars, Validation::Strict));
  std::set<TokenSequence> strings = parser.enumerate_strings(Category(o.start), o.max_len);
  if (o.tsv) out << "length\ttokens\n";
  for (const auto& s : strings) {
    if (o.tsv) out << s.size() << '\t';
    out << to_string(s) << '\n';
  }
  if (!o.tsv) out << strings.size() << (strings.size() == 1 ? " string\n" : " strings\n");
  return 0;
}

std::vector<CorpusItem> load_corpus(const std::string& path) {
  try {
    return parse_corpus(read_text_file(path));
  } catch (const TagError& e) {
    throw TagError(e.kind(), path + ":" + e.what());
  }
}

int cmd_corpus(const Options& o, std::ostream& out) {
  Parser parser(load_all(o.grammars, Validation::Strict));
  Report report = run_corpus(parser, load_corpus(o.corpus), make_config(o));
  out << (o.tsv ? report_tsv(report) : report_table(report));
  return report.all_passed() ? 0 : 1;
}

int cmd_variants(const Options& o, std::ostream& out) {
  Grammar g = load_all(o.grammars, Validation::Strict);
  std::filesystem::path manifest =
      o.languages.empty() ? std::filesystem::path(o.grammars.front()).parent_path() / "languages.tsv"
                          : std::filesystem::path(o.languages);
  LanguageOrders orders = parse_language_manifest(read_text_file(manifest));
  Comparison c = compare_variants(g, orders, load_corpus(o.corpus), make_config(o));
  if (o.tsv) {
    out << comparison_tsv(c);
  } else {
    out << comparison_table(c) << comparison_summary(c);
  }
  return 0;
}

int cmd_validate(const Options& o, std::ostream& out) {
  ValidationReport report = validate_grammar(load_all(o.grammars, Validation::SyntaxOnly));
  if (report.findings.empty()) {
    out << "ok\n";
  } else {
    out << report.str();
    if (report.str().back() != '\n') out << '\n';
  }
  return report.ok() ? 0 : 1;
}

// Usage of the innermost subcommand reached so far.
std::string help_for(const CLI::App& app) {
  const auto subs = app.get_subcommands();
  return subs.empty() ? app.help() : subs.front()->help();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Lexicalized tree-adjoining grammar judgments", "ltag"};
  app.require_subcommand(1);

  auto add_grammars = [&](CLI::App* sub) {
    sub->add_option("-g,--grammar", o.grammars, "grammar file (repeat to unite)")->required()->check(CLI::ExistingFile);
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "single or two-stage")->check(CLI::IsMember({"single", "two-stage"}));
  };

  CLI::App* judge = app.add_subcommand("judge", "decide derivability of a token string");
  CLI::App* parse = app.add_subcommand("parse", "list derivations of a token string");
  for (CLI::App* sub : {judge, parse}) {
    add_grammars(sub);
    sub->add_option("-s,--start", o.start, "start category");
    sub->add_option("-t,--tokens", o.tokens, "tokens as surface:lang ...")->required();
    add_mode(sub);
    sub->add_option("--max-derivations", o.max_derivations, "derivations to print")->check(CLI::PositiveNumber);
    sub->add_flag("--sexpr", o.sexpr, "print derivations as s-expressions");
    sub->add_flag("--tsv", o.tsv, "tab-separated output");
  }

  CLI::App* enumerate = app.add_subcommand("enumerate", "list every yield up to a length");
  add_grammars(enumerate);
  enumerate->add_option("-s,--start", o.start, "start category");
  enumerate->add_option("-n,--max-len", o.max_len, "maximum length")->required();
  enumerate->add_flag("--tsv", o.tsv, "tab-separated output");

  CLI::App* corpus = app.add_subcommand("corpus", "judge every item of a corpus file");
  add_grammars(corpus);
  corpus->add_option("-c,--corpus", o.corpus, "corpus TSV")->required()->check(CLI::ExistingFile);
  add_mode(corpus);
  corpus->add_flag("--tsv", o.tsv, "tab-separated output");

  CLI::App* variants = app.add_subcommand("variants", "compare adjective analyses on a corpus");
  add_grammars(variants);
  variants->add_option("-c,--corpus", o.corpus, "corpus TSV")->required()->check(CLI::ExistingFile);
  variants->add_option("--languages", o.languages, "adjective order manifest")->check(CLI::ExistingFile);
  variants->add_flag("--tsv", o.tsv, "tab-separated output");

  CLI::App* validate = app.add_subcommand("validate", "check grammar files");
  add_grammars(validate);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << help_for(app);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << help_for(app);
    return kError;
  }

  try {
    if (judge->parsed()) return cmd_judge(o, out);
    if (parse->parsed()) return cmd_parse(o, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (corpus->parsed()) return cmd_corpus(o, out);
    if (variants->parsed()) return cmd_variants(o, out);
    if (validate->parsed()) return cmd_validate(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace ltag::cli
