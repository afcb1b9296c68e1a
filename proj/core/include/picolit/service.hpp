#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "picolit/error.hpp"
#include "picolit/pipeline.hpp"

namespace picolit {

/// Request failure carrying an HTTP status and a short machine code.
class ServiceError : public Error {
  public:
    ServiceError(int status, std::string code, const std::string& message)
        : Error(message), m_status(status), m_code(std::move(code))
    {}

    int status() const noexcept { return m_status; }
    const std::string& code() const noexcept { return m_code; }

  private:
    int m_status;
    std::string m_code;
};

inline constexpr std::size_t kDefaultPageLimit = 100;

struct RelationDoc {
    std::string doc_id;
    std::string title;
    std::optional<Relevance> judgment;  // only when a topic is bound and qrels are loaded
};

struct RelationDocsPage {
    std::string source;
    std::string target;
    std::optional<std::string> topic_id;
    std::size_t total = 0;
    std::size_t offset = 0;
    std::size_t limit = kDefaultPageLimit;
    std::vector<RelationDoc> docs;
};

struct EvalRequest {
    std::filesystem::path topics_path;
    std::filesystem::path qrels_path;
    std::optional<std::filesystem::path> query_concepts_path;
    std::optional<std::filesystem::path> out_dir;
    EvalParams params;
};

/// Query-string style parameters shared by the CLI and HTTP front ends.
using ParamMap = std::map<std::string, std::string>;

/// q (required), k, scorer, granularity, scope. Throws ServiceError(400).
SearchParams parse_search_params(const ParamMap& params);
/// {topics_path, qrels_path, scorer, granularity, scope, k, query_concepts_path,
/// out_dir, run_tag, relation_precision}. Throws ServiceError(400).
EvalRequest parse_eval_request(const nlohmann::json& body);

nlohmann::json to_json(const SearchResult& result);
nlohmann::json to_json(const RelationDocsPage& page);
nlohmann::json error_json(const ServiceError& error);

/// Request handlers over a loaded store. Handlers take an immutable snapshot,
/// so concurrent requests never observe a half-loaded store; while load() runs
/// they fail with 503.
class Service {
  public:
    /// Exclusive (re)load of the store directory.
    void load(const std::filesystem::path& store_dir);
    /// Topics and qrels used to attach judgments to relation documents.
    void load_judgments(const std::filesystem::path& topics_path, const std::filesystem::path& qrels_path);
    bool ready() const;

    SearchResult search(const SearchParams& params) const;
    /// Documents of the source -> target link for the search described by
    /// `params`. The topic is `topic_id` when given, otherwise the topic whose
    /// question equals the query text.
    RelationDocsPage relation_docs(const SearchParams& params, const std::string& source, const std::string& target,
                                   std::size_t offset = 0, std::size_t limit = kDefaultPageLimit,
                                   const std::optional<std::string>& topic_id = std::nullopt) const;
    /// Runs the evaluation and, when out_dir is set, writes the report files.
    EvalReport eval(const EvalRequest& request) const;
    std::vector<Topic> topics() const;

  private:
    struct Judgments {
        TopicSet topics;
        Qrels qrels;
    };

    std::shared_ptr<const Store> snapshot() const;

    mutable std::shared_mutex m_mutex;
    std::shared_ptr<const Store> m_store;
    std::shared_ptr<const Judgments> m_judgments;
    std::atomic<bool> m_loading{false};
};

}  // namespace picolit
