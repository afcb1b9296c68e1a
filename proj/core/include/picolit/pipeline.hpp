#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "picolit/metrics.hpp"
#include "picolit/relations.hpp"
#include "picolit/report.hpp"
#include "picolit/sankey.hpp"
#include "picolit/store.hpp"
#include "picolit/trec.hpp"

namespace picolit {

struct SearchParams {
    std::string query;
    std::size_t k = kDefaultHitCap;
    Scorer scorer = Scorer::bm25;
    std::size_t granularity = kDefaultGranularity;
    Scope scope = Scope::title_abstract;
};

/// Retrieval plus the relational view derived from it.
struct SearchResult {
    SearchParams params;
    std::vector<ScoredHit> hits;
    std::vector<Relation> relations;
    std::vector<std::string> retained;  // doc_id order
    SankeyGraph sankey;

    std::optional<double> retained_fraction() const;
};

/// search -> build_relations over the hits -> filter_hits -> to_sankey.
SearchResult search_and_relate(const Store& store, const SearchParams& params);

/// Query-side concept annotations, keyed by topic id. JSONL rows
/// {"number": "...", "P": [tree numbers], "I": [...], "O": [...]}, truncated
/// at `granularity` on load.
std::map<std::string, QueryConcepts> load_query_concepts(const std::filesystem::path& path, std::size_t granularity);
std::map<std::string, QueryConcepts> load_query_concepts(std::istream& in, std::size_t granularity);

/// Runs every topic's question through search_and_relate and evaluates the raw
/// hits and the retained documents against the qrels.
/// Throws std::invalid_argument when `topics` is empty.
EvalReport run_evaluation(const Store& store, const TopicSet& topics, const Qrels& qrels, const EvalParams& params,
                          const std::map<std::string, QueryConcepts>* query_concepts = nullptr);

}  // namespace picolit
