#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "picolit/error.hpp"
#include "picolit/index.hpp"

namespace picolit {

/// How a retrieved document counts for a topic. Judgments 1 (partially
/// relevant) and 2 (relevant) are relevant, 0 is irrelevant, no entry is
/// unjudged.
enum class Relevance { relevant, irrelevant, unjudged };

std::string_view to_string(Relevance r) noexcept;

/// TREC relevance judgments, at most one per (topic, doc), values 0..2.
class Qrels {
  public:
    /// False when (topic, doc) is already judged or the judgment is out of range.
    bool add(const std::string& topic_id, const std::string& doc_id, int judgment);

    std::optional<int> judgment(const std::string& topic_id, const std::string& doc_id) const;
    Relevance classify(const std::string& topic_id, const std::string& doc_id) const;
    bool is_relevant(const std::string& topic_id, const std::string& doc_id) const
    {
        return classify(topic_id, doc_id) == Relevance::relevant;
    }
    bool has_topic(const std::string& topic_id) const;
    std::size_t size() const noexcept { return m_judgments.size(); }

    /// Lines refused while parsing.
    std::vector<Rejection> rejected;

  private:
    std::map<std::pair<std::string, std::string>, int> m_judgments;
};

/// Whitespace-separated "topic iteration doc_id judgment" lines. Malformed
/// lines, out-of-range judgments and repeated (topic, doc) pairs are recorded
/// in Qrels::rejected.
Qrels parse_qrels(const std::filesystem::path& path);
Qrels parse_qrels(std::istream& in);

struct Topic {
    std::string topic_id;
    std::string query;
    std::string question;  // the text searched
    std::string narrative;

    friend bool operator==(const Topic&, const Topic&) = default;
};

struct TopicSet {
    std::vector<Topic> topics;
    /// line_no is the JSONL line, or the 1-based topic element position for XML.
    std::vector<Rejection> rejected;

    const Topic* find(const std::string& topic_id) const;
};

/// TREC topics XML (<topic number="N"> with query/question/narrative
/// children) or JSONL with keys number, query, question, narrative. The
/// format is detected from the first non-blank character.
TopicSet parse_topics(const std::filesystem::path& path);
TopicSet parse_topics(std::istream& in);

struct RunEntry {
    std::string topic_id;
    std::string doc_id;
    std::size_t rank = 0;
    double score = 0.0;
    std::string run_tag;

    friend bool operator==(const RunEntry&, const RunEntry&) = default;
};

/// Per topic: ranks exactly 1..n, no repeated doc, at most 1000 entries.
/// Throws ParseError naming the offending topic.
void validate_run(std::span<const RunEntry> entries);

/// "topic Q0 doc rank score tag", score with 6 decimals.
void write_run(std::ostream& out, std::span<const RunEntry> entries);
void write_run(const std::filesystem::path& path, std::span<const RunEntry> entries);
std::vector<RunEntry> read_run(std::istream& in);
std::vector<RunEntry> read_run(const std::filesystem::path& path);

std::vector<RunEntry> run_from_hits(const std::string& topic_id, std::span<const ScoredHit> hits,
                                    const std::string& run_tag);

/// Orders topic ids numerically when both are integers, else lexically.
bool topic_less(const std::string& a, const std::string& b);

}  // namespace picolit
