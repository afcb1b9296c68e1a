#include "picolit/trec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

#include "picolit/format.hpp"

namespace picolit {

namespace {

std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return in;
}

std::vector<std::string> fields_of(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string f;
    while (in >> f) {
        out.push_back(f);
    }
    return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s)
{
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return value;
}

std::string trim(std::string s)
{
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

TopicSet parse_topics_xml(std::istream& in)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError(std::string("malformed topics XML: ") + e.what());
    }
    TopicSet out;
    auto root = tree.get_child_optional("topics");
    if (!root) {
        throw ParseError("topics XML has no <topics> root");
    }
    std::size_t position = 0;
    for (const auto& [name, node] : *root) {
        if (name != "topic") {
            continue;
        }
        ++position;
        Topic t;
        t.topic_id = trim(node.get<std::string>("<xmlattr>.number", ""));
        t.query = trim(node.get<std::string>("query", ""));
        t.question = trim(node.get<std::string>("question", ""));
        t.narrative = trim(node.get<std::string>("narrative", ""));
        if (t.topic_id.empty()) {
            out.rejected.push_back({position, "missing_number"});
        } else if (t.question.empty()) {
            out.rejected.push_back({position, "missing_question"});
        } else {
            out.topics.push_back(std::move(t));
        }
    }
    return out;
}

TopicSet parse_topics_jsonl(std::istream& in)
{
    TopicSet out;
    std::string line;
    std::size_t line_no = 0;
    auto text = [](const nlohmann::json& obj, const char* key) -> std::string {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) {
            return {};
        }
        if (it->is_string()) {
            return trim(it->get<std::string>());
        }
        if (it->is_number_integer()) {
            return std::to_string(it->get<long long>());
        }
        throw ParseError("schema");
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        auto record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            out.rejected.push_back({line_no, "json"});
            continue;
        }
        Topic t;
        try {
            t.topic_id = text(record, "number");
            t.query = text(record, "query");
            t.question = text(record, "question");
            t.narrative = text(record, "narrative");
        } catch (const ParseError&) {
            out.rejected.push_back({line_no, "schema"});
            continue;
        }
        if (t.topic_id.empty()) {
            out.rejected.push_back({line_no, "missing_number"});
        } else if (t.question.empty()) {
            out.rejected.push_back({line_no, "missing_question"});
        } else {
            out.topics.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(Relevance r) noexcept
{
    switch (r) {
    case Relevance::relevant:
        return "relevant";
    case Relevance::irrelevant:
        return "irrelevant";
    case Relevance::unjudged:
        return "unjudged";
    }
    return "unjudged";
}

bool Qrels::add(const std::string& topic_id, const std::string& doc_id, int judgment)
{
    if (judgment < 0 || judgment > 2) {
        return false;
    }
    return m_judgments.emplace(std::pair{topic_id, doc_id}, judgment).second;
}

std::optional<int> Qrels::judgment(const std::string& topic_id, const std::string& doc_id) const
{
    auto it = m_judgments.find(std::pair{topic_id, doc_id});
    if (it == m_judgments.end()) {
        return std::nullopt;
    }
    return it->second;
}

Relevance Qrels::classify(const std::string& topic_id, const std::string& doc_id) const
{
    auto j = judgment(topic_id, doc_id);
    if (!j) {
        return Relevance::unjudged;
    }
    return *j >= 1 ? Relevance::relevant : Relevance::irrelevant;
}

bool Qrels::has_topic(const std::string& topic_id) const
{
    auto it = m_judgments.lower_bound(std::pair{topic_id, std::string{}});
    return it != m_judgments.end() && it->first.first == topic_id;
}

Qrels parse_qrels(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return parse_qrels(in);
}

Qrels parse_qrels(std::istream& in)
{
    Qrels qrels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto f = fields_of(line);
        if (f.empty()) {
            continue;
        }
        if (f.size() != 4) {
            qrels.rejected.push_back({line_no, "fields"});
            continue;
        }
        auto judgment = parse_number<int>(f[3]);
        if (!judgment) {
            qrels.rejected.push_back({line_no, "judgment"});
            continue;
        }
        if (*judgment < 0 || *judgment > 2) {
            qrels.rejected.push_back({line_no, "judgment_range"});
            continue;
        }
        if (!qrels.add(f[0], f[2], *judgment)) {
            qrels.rejected.push_back({line_no, "duplicate"});
        }
    }
    return qrels;
}

const Topic* TopicSet::find(const std::string& topic_id) const
{
    auto it = std::find_if(topics.begin(), topics.end(), [&](const Topic& t) { return t.topic_id == topic_id; });
    return it == topics.end() ? nullptr : &*it;
}

TopicSet parse_topics(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return parse_topics(in);
}

TopicSet parse_topics(std::istream& in)
{
    char c = 0;
    while (in.get(c)) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            in.unget();
            break;
        }
    }
    if (!in) {
        return {};
    }
    return c == '<' ? parse_topics_xml(in) : parse_topics_jsonl(in);
}

void validate_run(std::span<const RunEntry> entries)
{
    std::map<std::string, std::vector<const RunEntry*>> by_topic;
    for (const auto& e : entries) {
        by_topic[e.topic_id].push_back(&e);
    }
    for (auto& [topic, list] : by_topic) {
        if (list.size() > kDefaultHitCap) {
            throw ParseError("topic " + topic + ": more than " + std::to_string(kDefaultHitCap) + " entries");
        }
        std::set<std::string> docs;
        std::vector<std::size_t> ranks;
        ranks.reserve(list.size());
        for (const auto* e : list) {
            if (!docs.insert(e->doc_id).second) {
                throw ParseError("topic " + topic + ": duplicate document " + e->doc_id);
            }
            ranks.push_back(e->rank);
        }
        std::sort(ranks.begin(), ranks.end());
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            if (ranks[i] != i + 1) {
                throw ParseError("topic " + topic + ": ranks are not contiguous from 1");
            }
        }
    }
}

void write_run(std::ostream& out, std::span<const RunEntry> entries)
{
    validate_run(entries);
    for (const auto& e : entries) {
        out << e.topic_id << " Q0 " << e.doc_id << ' ' << e.rank << ' ' << format_fixed6(e.score) << ' '
            << e.run_tag << '\n';
    }
}

void write_run(const std::filesystem::path& path, std::span<const RunEntry> entries)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    write_run(out, entries);
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

std::vector<RunEntry> read_run(std::istream& in)
{
    std::vector<RunEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto f = fields_of(line);
        if (f.empty()) {
            continue;
        }
        if (f.size() != 6) {
            throw ParseError("run line needs 6 fields, got " + std::to_string(f.size()), line_no);
        }
        auto rank = parse_number<std::size_t>(f[3]);
        if (!rank) {
            throw ParseError("bad rank '" + f[3] + "'", line_no);
        }
        double score = 0.0;
        try {
            std::size_t used = 0;
            score = std::stod(f[4], &used);
            if (used != f[4].size()) {
                throw std::invalid_argument(f[4]);
            }
        } catch (const std::logic_error&) {
            throw ParseError("bad score '" + f[4] + "'", line_no);
        }
        entries.push_back(RunEntry{f[0], f[2], *rank, score, f[5]});
    }
    validate_run(entries);
    return entries;
}

std::vector<RunEntry> read_run(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_run(in);
}

std::vector<RunEntry> run_from_hits(const std::string& topic_id, std::span<const ScoredHit> hits,
                                    const std::string& run_tag)
{
    std::vector<RunEntry> out;
    out.reserve(hits.size());
    for (const auto& h : hits) {
        out.push_back(RunEntry{topic_id, h.doc_id, h.rank, h.score, run_tag});
    }
    return out;
}

bool topic_less(const std::string& a, const std::string& b)
{
    auto na = parse_number<long long>(a);
    auto nb = parse_number<long long>(b);
    if (na && nb) {
        return *na != *nb ? *na < *nb : a < b;
    }
    if (na || nb) {
        return na.has_value();
    }
    return a < b;
}

}  // namespace picolit
