#include <benchmark/benchmark.h>

#include <filesystem>

#include "ltag/cs_eval.hpp"
#include "ltag/oracle.hpp"
#include "ltag/parser.hpp"

using namespace ltag;

namespace {

const std::filesystem::path kData = LTAG_DATA_DIR;

const Grammar& sample() {
  static const Grammar g = [] {
    Grammar out;
    for (const char* l : {"en", "hi", "es", "it", "ga", "fr"}) {
      out = unite(out, load_grammar(kData / "grammars" / (std::string(l) + ".tag")));
    }
    return out;
  }();
  return g;
}

const std::vector<CorpusItem>& corpus() {
  static const auto items = parse_corpus(read_text_file(kData / "corpus" / "paper.tsv"));
  return items;
}

ParseConfig config_for(const CorpusItem& item, ParseMode mode) {
  ParseConfig c;
  c.start = item.start;
  c.mode = mode;
  return c;
}

}  // namespace

static void BM_ParseCorpusItem(benchmark::State& state) {
  const Parser parser(sample());
  const CorpusItem& item = corpus()[static_cast<std::size_t>(state.range(0))];
  const ParseConfig cfg = config_for(item, state.range(1) ? ParseMode::TwoStage : ParseMode::SingleStage);
  for (auto _ : state) benchmark::DoNotOptimize(parser.parse(item.tokens, cfg));
  state.SetLabel(item.id + (state.range(1) ? " two-stage" : " single"));
}
BENCHMARK(BM_ParseCorpusItem)->ArgsProduct({benchmark::CreateDenseRange(0, 8, 1), {0, 1}});

static void BM_CountCorpusItem(benchmark::State& state) {
  const Parser parser(sample());
  const CorpusItem& item = corpus()[static_cast<std::size_t>(state.range(0))];
  const ParseConfig cfg = config_for(item, ParseMode::SingleStage);
  for (auto _ : state) benchmark::DoNotOptimize(parser.count(item.tokens, cfg));
  state.SetLabel(item.id);
}
BENCHMARK(BM_CountCorpusItem)->DenseRange(0, 8, 1);

static void BM_OracleCorpusItem(benchmark::State& state) {
  const Oracle oracle(sample());
  const CorpusItem& item = corpus()[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(oracle.parse(item.tokens, item.start));
  state.SetLabel(item.id);
}
BENCHMARK(BM_OracleCorpusItem)->DenseRange(0, 8, 1);

static void BM_Enumerate(benchmark::State& state, const char* cat) {
  const Parser parser(sample());
  std::size_t n = 0;
  for (auto _ : state) {
    auto strings = parser.enumerate_strings(Category(cat), static_cast<std::size_t>(state.range(0)));
    n = strings.size();
    benchmark::DoNotOptimize(strings);
  }
  state.counters["strings"] = static_cast<double>(n);
}
BENCHMARK_CAPTURE(BM_Enumerate, NP, "NP")->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Enumerate, PP, "PP")->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Enumerate, S, "S")->DenseRange(4, 6, 1)->Unit(benchmark::kMillisecond);

static void BM_OracleEnumerate(benchmark::State& state) {
  const Oracle oracle(sample());
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.enumerate_strings(Category("PP"), static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_OracleEnumerate)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

static void BM_CompareVariants(benchmark::State& state) {
  const LanguageOrders orders = parse_language_manifest(read_text_file(kData / "grammars" / "languages.tsv"));
  for (auto _ : state) benchmark::DoNotOptimize(compare_variants(sample(), orders, corpus()));
}
BENCHMARK(BM_CompareVariants)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
