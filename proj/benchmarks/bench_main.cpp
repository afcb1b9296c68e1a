#include <random>

#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "picolit/index.hpp"
#include "picolit/relations.hpp"
#include "picolit/sankey.hpp"

namespace {

using namespace picolit;

std::vector<Document> synthetic_docs(std::size_t n)
{
    std::mt19937 rng(1);
    static const char* words[] = {"covid", "mask", "trial", "patients", "hydroxychloroquine", "outcome",
                                  "mortality", "children", "vaccine", "transmission", "diabetes", "risk"};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(words) - 1);
    std::vector<Document> docs;
    for (std::size_t i = 0; i < n; ++i) {
        Document d{testkit::doc_name(i), words[pick(rng)], ""};
        for (int w = 0; w < 120; ++w) {
            d.abstract += words[pick(rng)];
            d.abstract += ' ';
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

void BM_IndexBuild(benchmark::State& state)
{
    const auto corpus = testkit::make_corpus(synthetic_docs(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(InvertedIndex::build(corpus));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IndexBuild)->Arg(1000)->Arg(5000);

void BM_Search(benchmark::State& state)
{
    const auto corpus = testkit::make_corpus(synthetic_docs(5000));
    const auto index = InvertedIndex::build(corpus);
    const auto scorer = state.range(0) == 0 ? Scorer::bm25 : Scorer::tfidf;
    for (auto _ : state) {
        benchmark::DoNotOptimize(index.search("hydroxychloroquine mortality in children", 1000, scorer));
    }
}
BENCHMARK(BM_Search)->Arg(0)->Arg(1);

void BM_BuildRelations(benchmark::State& state)
{
    std::mt19937 rng(2);
    auto fx = testkit::random_annotated_fixture(rng, static_cast<std::size_t>(state.range(0)));
    const auto corpus = testkit::make_corpus(fx.docs);
    const auto store = testkit::make_store(fx, corpus);
    std::vector<std::string> ids;
    for (const auto& d : fx.docs) {
        ids.push_back(d.doc_id);
    }
    for (auto _ : state) {
        auto rel = build_relations(ids, store, corpus);
        benchmark::DoNotOptimize(to_sankey(rel));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ids.size()));
}
BENCHMARK(BM_BuildRelations)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
