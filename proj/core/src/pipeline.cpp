#include "picolit/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace picolit {

std::optional<double> SearchResult::retained_fraction() const
{
    if (hits.empty()) {
        return std::nullopt;
    }
    return static_cast<double>(retained.size()) / static_cast<double>(hits.size());
}

SearchResult search_and_relate(const Store& store, const SearchParams& params)
{
    SearchResult result;
    result.params = params;
    result.hits = store.index.search(params.query, params.k, params.scorer);
    std::vector<std::string> ids;
    ids.reserve(result.hits.size());
    for (const auto& hit : result.hits) {
        ids.push_back(hit.doc_id);
    }
    result.relations = build_relations(ids, store.annotations, store.corpus, params.granularity, params.scope);
    result.retained = filter_hits(result.hits, result.relations);
    result.sankey = to_sankey(result.relations);
    return result;
}

std::map<std::string, QueryConcepts> load_query_concepts(const std::filesystem::path& path, std::size_t granularity)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return load_query_concepts(in, granularity);
}

std::map<std::string, QueryConcepts> load_query_concepts(std::istream& in, std::size_t granularity)
{
    std::map<std::string, QueryConcepts> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            throw ParseError("query concepts: invalid JSON", line_no);
        }
        auto id_it = record.find("number");
        if (id_it == record.end()) {
            id_it = record.find("topic_id");
        }
        std::string topic;
        if (id_it != record.end() && id_it->is_string()) {
            topic = id_it->get<std::string>();
        } else if (id_it != record.end() && id_it->is_number_integer()) {
            topic = std::to_string(id_it->get<long long>());
        } else {
            throw ParseError("query concepts: missing topic number", line_no);
        }
        QueryConcepts concepts;
        for (auto role : kPicoTypes) {
            auto it = record.find(std::string(to_string(role)));
            if (it == record.end() || it->is_null()) {
                continue;
            }
            if (!it->is_array()) {
                throw ParseError("query concepts: role list must be an array", line_no);
            }
            for (const auto& code : *it) {
                if (!code.is_string()) {
                    throw ParseError("query concepts: tree numbers must be strings", line_no);
                }
                try {
                    concepts[static_cast<std::size_t>(role)].insert(
                        truncate(parse_tree_number(code.get<std::string>()), granularity));
                } catch (const ParseError& e) {
                    throw ParseError(e.what(), line_no);
                }
            }
        }
        if (!out.emplace(topic, std::move(concepts)).second) {
            throw ParseError("query concepts: topic " + topic + " repeated", line_no);
        }
    }
    return out;
}

EvalReport run_evaluation(const Store& store, const TopicSet& topics, const Qrels& qrels, const EvalParams& params,
                          const std::map<std::string, QueryConcepts>* query_concepts)
{
    if (topics.topics.empty()) {
        throw std::invalid_argument("no topics to evaluate");
    }
    std::vector<const Topic*> ordered;
    for (const auto& t : topics.topics) {
        ordered.push_back(&t);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const Topic* a, const Topic* b) { return topic_less(a->topic_id, b->topic_id); });

    EvalReport report;
    report.params = params;
    std::vector<QueryEval> raw, filtered;
    std::vector<TopicRelations> pooled;
    std::vector<std::optional<double>> fractions;
    std::vector<std::array<std::optional<RoleFit>, 3>> fits;

    for (const auto* topic : ordered) {
        SearchParams sp{topic->question, params.k, params.scorer, params.granularity, params.scope};
        auto result = search_and_relate(store, sp);

        std::vector<std::string> hit_ids;
        hit_ids.reserve(result.hits.size());
        for (const auto& h : result.hits) {
            hit_ids.push_back(h.doc_id);
        }
        raw.push_back(evaluate_query(hit_ids, topic->topic_id, qrels));
        filtered.push_back(evaluate_query(result.retained, topic->topic_id, qrels));

        TopicRun run;
        run.topic_id = topic->topic_id;
        run.question = topic->question;
        run.n_hits = result.hits.size();
        run.n_retained = result.retained.size();
        run.retained_fraction = result.retained_fraction();
        run.grouping = grouping_stats(result.relations);
        if (query_concepts != nullptr) {
            if (auto it = query_concepts->find(topic->topic_id); it != query_concepts->end()) {
                run.fit = query_fit(it->second, result.sankey);
                fits.push_back(*run.fit);
            }
        }
        fractions.push_back(run.retained_fraction);
        report.topics.push_back(std::move(run));

        auto entries = run_from_hits(topic->topic_id, result.hits, params.run_tag);
        report.raw_run.insert(report.raw_run.end(), entries.begin(), entries.end());
        pooled.push_back(TopicRelations{topic->topic_id, std::move(result.relations)});
    }

    report.comparison = compare_views(raw, filtered);
    report.retained_fraction = summarize(std::span<const std::optional<double>>(fractions));
    try {
        report.relation_precision = relation_precision_correlation(pooled, qrels, params.relation_precision);
    } catch (const std::invalid_argument&) {
        report.relation_precision.reset();
    }
    if (query_concepts != nullptr) {
        report.fit_summary = fit_summary(fits);
    }
    return report;
}

}  // namespace picolit
