#include "picolit/service.hpp"

#include <charconv>
#include <mutex>

#include <nlohmann/json.hpp>

namespace picolit {

namespace {

ServiceError bad_request(const std::string& message)
{
    return ServiceError(400, "bad_request", message);
}

std::size_t parse_count(const ParamMap& params, const std::string& key, std::size_t fallback)
{
    auto it = params.find(key);
    if (it == params.end() || it->second.empty()) {
        return fallback;
    }
    std::size_t value = 0;
    const auto& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw bad_request("parameter '" + key + "' must be a non-negative integer");
    }
    return value;
}

template <typename T>
T param_or(const nlohmann::json& body, const char* key, T fallback)
{
    auto it = body.find(key);
    if (it == body.end() || it->is_null()) {
        return fallback;
    }
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw bad_request(std::string("field '") + key + "' has the wrong type");
    }
}

nlohmann::json optional_number(const std::optional<double>& v)
{
    return v ? nlohmann::json(round6(*v)) : nlohmann::json(nullptr);
}

}  // namespace

SearchParams parse_search_params(const ParamMap& params)
{
    SearchParams out;
    auto q = params.find("q");
    if (q == params.end() || q->second.empty()) {
        throw bad_request("missing query parameter 'q'");
    }
    out.query = q->second;
    out.k = parse_count(params, "k", kDefaultHitCap);
    if (out.k > kDefaultHitCap) {
        throw bad_request("k must be at most " + std::to_string(kDefaultHitCap));
    }
    if (auto it = params.find("scorer"); it != params.end() && !it->second.empty()) {
        auto scorer = parse_scorer(it->second);
        if (!scorer) {
            throw bad_request("scorer must be bm25 or tfidf");
        }
        out.scorer = *scorer;
    }
    out.granularity = parse_count(params, "granularity", kDefaultGranularity);
    if (out.granularity == 0) {
        throw bad_request("granularity must be >= 1");
    }
    if (auto it = params.find("scope"); it != params.end() && !it->second.empty()) {
        auto scope = parse_scope(it->second);
        if (!scope) {
            throw bad_request("scope must be title+abstract or abstract-only");
        }
        out.scope = *scope;
    }
    return out;
}

EvalRequest parse_eval_request(const nlohmann::json& body)
{
    if (!body.is_object()) {
        throw bad_request("eval body must be a JSON object");
    }
    EvalRequest req;
    auto topics = param_or<std::string>(body, "topics_path", "");
    auto qrels = param_or<std::string>(body, "qrels_path", "");
    if (topics.empty() || qrels.empty()) {
        throw bad_request("topics_path and qrels_path are required");
    }
    req.topics_path = topics;
    req.qrels_path = qrels;
    if (auto qc = param_or<std::string>(body, "query_concepts_path", ""); !qc.empty()) {
        req.query_concepts_path = qc;
    }
    if (auto out = param_or<std::string>(body, "out_dir", ""); !out.empty()) {
        req.out_dir = out;
    }

    // Reuse the search parameter validation for the shared fields.
    ParamMap shared{{"q", "-"}};
    shared["scorer"] = param_or<std::string>(body, "scorer", "");
    shared["scope"] = param_or<std::string>(body, "scope", "");
    shared["granularity"] = std::to_string(param_or<std::size_t>(body, "granularity", kDefaultGranularity));
    shared["k"] = std::to_string(param_or<std::size_t>(body, "k", kDefaultHitCap));
    auto sp = parse_search_params(shared);
    req.params.scorer = sp.scorer;
    req.params.scope = sp.scope;
    req.params.granularity = sp.granularity;
    req.params.k = sp.k;
    req.params.run_tag = param_or<std::string>(body, "run_tag", req.params.run_tag);
    auto denom = param_or<std::string>(body, "relation_precision", "all_retrieved");
    if (denom == "all_retrieved") {
        req.params.relation_precision = PrecisionDenominator::all_retrieved;
    } else if (denom == "judged_only") {
        req.params.relation_precision = PrecisionDenominator::judged_only;
    } else {
        throw bad_request("relation_precision must be all_retrieved or judged_only");
    }
    return req;
}

nlohmann::json to_json(const SearchResult& r)
{
    nlohmann::json hits = nlohmann::json::array();
    for (const auto& h : r.hits) {
        hits.push_back({{"doc_id", h.doc_id}, {"score", round6(h.score)}, {"rank", h.rank}});
    }
    return {{"query", r.params.query},
            {"scorer", to_string(r.params.scorer)},
            {"k", r.params.k},
            {"granularity", r.params.granularity},
            {"scope", to_string(r.params.scope)},
            {"hits", std::move(hits)},
            {"retained_doc_ids", r.retained},
            {"sankey", to_json(r.sankey)},
            {"stats",
             {{"n_hits", r.hits.size()},
              {"n_retained", r.retained.size()},
              {"retained_fraction", optional_number(r.retained_fraction())}}}};
}

nlohmann::json to_json(const RelationDocsPage& page)
{
    nlohmann::json docs = nlohmann::json::array();
    for (const auto& d : page.docs) {
        nlohmann::json entry = {{"doc_id", d.doc_id}, {"title", d.title}};
        if (d.judgment) {
            entry["judgment"] = to_string(*d.judgment);
        }
        docs.push_back(std::move(entry));
    }
    nlohmann::json out = {{"source", page.source},
                          {"target", page.target},
                          {"total", page.total},
                          {"offset", page.offset},
                          {"limit", page.limit},
                          {"docs", std::move(docs)}};
    out["topic_id"] = page.topic_id ? nlohmann::json(*page.topic_id) : nlohmann::json(nullptr);
    return out;
}

nlohmann::json error_json(const ServiceError& error)
{
    return {{"code", error.code()}, {"message", error.what()}};
}

void Service::load(const std::filesystem::path& store_dir)
{
    m_loading = true;
    std::unique_lock lock(m_mutex);
    m_store.reset();
    try {
        m_store = std::make_shared<const Store>(Store::open(store_dir));
    } catch (...) {
        m_loading = false;
        throw;
    }
    m_loading = false;
}

void Service::load_judgments(const std::filesystem::path& topics_path, const std::filesystem::path& qrels_path)
{
    auto judgments = std::make_shared<Judgments>();
    judgments->topics = parse_topics(topics_path);
    judgments->qrels = parse_qrels(qrels_path);
    std::unique_lock lock(m_mutex);
    m_judgments = std::move(judgments);
}

bool Service::ready() const
{
    if (m_loading) {
        return false;
    }
    std::shared_lock lock(m_mutex);
    return m_store != nullptr;
}

std::shared_ptr<const Store> Service::snapshot() const
{
    if (m_loading) {
        throw ServiceError(503, "unavailable", "store is loading");
    }
    std::shared_lock lock(m_mutex);
    if (!m_store) {
        throw ServiceError(503, "unavailable", "no store loaded");
    }
    return m_store;
}

SearchResult Service::search(const SearchParams& params) const
{
    auto store = snapshot();
    return search_and_relate(*store, params);
}

RelationDocsPage Service::relation_docs(const SearchParams& params, const std::string& source,
                                        const std::string& target, std::size_t offset, std::size_t limit,
                                        const std::optional<std::string>& topic_id) const
{
    auto store = snapshot();
    std::shared_ptr<const Judgments> judgments;
    {
        std::shared_lock lock(m_mutex);
        judgments = m_judgments;
    }
    auto result = search_and_relate(*store, params);
    auto docs = relation_documents(result.sankey, source, target);
    if (!docs) {
        throw ServiceError(404, "not_found", "no link " + source + " -> " + target);
    }

    RelationDocsPage page;
    page.source = source;
    page.target = target;
    page.total = docs->size();
    page.offset = offset;
    page.limit = limit;
    if (topic_id) {
        page.topic_id = topic_id;
    } else if (judgments) {
        for (const auto& t : judgments->topics.topics) {
            if (t.question == params.query) {
                page.topic_id = t.topic_id;
                break;
            }
        }
    }
    for (std::size_t i = offset; i < docs->size() && i - offset < limit; ++i) {
        const auto& id = (*docs)[i];
        RelationDoc d;
        d.doc_id = id;
        if (const auto* doc = store->corpus.find(id)) {
            d.title = doc->title;
        }
        if (judgments && page.topic_id) {
            d.judgment = judgments->qrels.classify(*page.topic_id, id);
        }
        page.docs.push_back(std::move(d));
    }
    return page;
}

EvalReport Service::eval(const EvalRequest& request) const
{
    auto store = snapshot();
    TopicSet topics;
    Qrels qrels;
    std::map<std::string, QueryConcepts> concepts;
    try {
        topics = parse_topics(request.topics_path);
        qrels = parse_qrels(request.qrels_path);
        if (request.query_concepts_path) {
            concepts = load_query_concepts(*request.query_concepts_path, request.params.granularity);
        }
    } catch (const Error& e) {
        throw ServiceError(400, "bad_input", e.what());
    }
    if (topics.topics.empty()) {
        throw ServiceError(400, "bad_input", "topic list is empty");
    }
    auto report = run_evaluation(*store, topics, qrels, request.params,
                                 request.query_concepts_path ? &concepts : nullptr);
    if (request.out_dir) {
        write_eval_report(*request.out_dir, report);
    }
    return report;
}

std::vector<Topic> Service::topics() const
{
    std::shared_lock lock(m_mutex);
    if (!m_judgments) {
        return {};
    }
    return m_judgments->topics.topics;
}

}  // namespace picolit
