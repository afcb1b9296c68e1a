#include "picolit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace picolit {

namespace {

bool is_blank(std::string_view s)
{
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

// JSON export requires well-formed UTF-8.
bool is_valid_utf8(std::string_view s)
{
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        std::size_t extra = 0;
        if (c < 0x80) {
            ++i;
            continue;
        }
        if ((c >> 5) == 0x6 && c >= 0xC2) {
            extra = 1;
        } else if ((c >> 4) == 0xE) {
            extra = 2;
        } else if ((c >> 3) == 0x1E && c <= 0xF4) {
            extra = 3;
        } else {
            return false;
        }
        if (i + extra >= s.size()) {
            return false;
        }
        for (std::size_t k = 1; k <= extra; ++k) {
            if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) {
                return false;
            }
        }
        i += extra + 1;
    }
    return true;
}

std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return in;
}

// Reads one RFC 4180 record. Quoted fields may contain commas, doubled quotes
// and newlines. Returns false at end of input. `lines` is advanced by the
// number of physical lines consumed.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields, std::size_t& lines)
{
    fields.clear();
    if (in.peek() == std::char_traits<char>::eof()) {
        return false;
    }
    std::string field;
    bool quoted = false;
    bool any = false;
    char c = 0;
    while (in.get(c)) {
        any = true;
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') {
                    ++lines;
                }
                field.push_back(c);
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            ++lines;
            break;
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    if (quoted) {
        throw ParseError("unterminated quoted field", lines);
    }
    fields.push_back(std::move(field));
    return any;
}

}  // namespace

std::optional<std::string> Corpus::add(Document doc)
{
    if (doc.doc_id.empty() || is_blank(doc.doc_id)) {
        return "empty_doc_id";
    }
    if (doc.title.empty() || is_blank(doc.title)) {
        return "empty_title";
    }
    if (!is_valid_utf8(doc.doc_id) || !is_valid_utf8(doc.title) || !is_valid_utf8(doc.abstract)) {
        return "encoding";
    }
    if (m_by_id.count(doc.doc_id) != 0) {
        return "duplicate";
    }
    m_by_id.emplace(doc.doc_id, m_docs.size());
    m_docs.push_back(std::move(doc));
    return std::nullopt;
}

CorpusStats Corpus::ingest_jsonl(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return ingest_jsonl(in);
}

CorpusStats Corpus::ingest_jsonl(std::istream& in)
{
    CorpusStats stats;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) {
            continue;
        }
        auto record = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (record.is_discarded() || !record.is_object()) {
            stats.rejected.push_back({line_no, "json"});
            continue;
        }
        auto id = record.find("doc_id");
        auto title = record.find("title");
        auto abstract = record.find("abstract");
        if (id == record.end() || !id->is_string() || title == record.end() || !title->is_string()
            || (abstract != record.end() && !abstract->is_string() && !abstract->is_null())) {
            stats.rejected.push_back({line_no, "schema"});
            continue;
        }
        Document doc{id->get<std::string>(), title->get<std::string>(),
                     (abstract != record.end() && abstract->is_string()) ? abstract->get<std::string>()
                                                                         : std::string{}};
        bool empty_abstract = doc.abstract.empty();
        if (auto reason = add(std::move(doc))) {
            stats.rejected.push_back({line_no, *reason});
            continue;
        }
        ++stats.n_docs;
        stats.n_empty_abstract += empty_abstract ? 1 : 0;
    }
    if (in.bad()) {
        throw IoError("read error in corpus input");
    }
    return stats;
}

CorpusStats Corpus::ingest_csv(const std::filesystem::path& path, const CsvColumnMap& columns)
{
    auto in = open_input(path);
    return ingest_csv(in, columns);
}

CorpusStats Corpus::ingest_csv(std::istream& in, const CsvColumnMap& columns)
{
    CorpusStats stats;
    std::vector<std::string> fields;
    std::size_t lines = 0;
    if (!read_csv_record(in, fields, lines)) {
        throw ParseError("CSV input has no header row");
    }
    if (!fields.empty() && fields[0].rfind("\xEF\xBB\xBF", 0) == 0) {
        fields[0].erase(0, 3);
    }
    auto column = [&](const std::string& name) {
        auto it = std::find(fields.begin(), fields.end(), name);
        if (it == fields.end()) {
            throw ParseError("missing mapped column '" + name + "'", 1);
        }
        return static_cast<std::size_t>(it - fields.begin());
    };
    const std::size_t id_col = column(columns.doc_id);
    const std::size_t title_col = column(columns.title);
    const std::size_t abstract_col = column(columns.abstract);
    const std::size_t n_columns = fields.size();

    while (true) {
        std::size_t record_line = lines + 1;
        if (!read_csv_record(in, fields, lines)) {
            break;
        }
        if (fields.size() == 1 && is_blank(fields[0])) {
            continue;
        }
        if (fields.size() != n_columns) {
            stats.rejected.push_back({record_line, "columns"});
            continue;
        }
        Document doc{fields[id_col], fields[title_col], fields[abstract_col]};
        bool empty_abstract = doc.abstract.empty();
        if (auto reason = add(std::move(doc))) {
            stats.rejected.push_back({record_line, *reason});
            continue;
        }
        ++stats.n_docs;
        stats.n_empty_abstract += empty_abstract ? 1 : 0;
    }
    return stats;
}

std::optional<Document> Corpus::get_document(const std::string& doc_id) const
{
    if (const auto* doc = find(doc_id)) {
        return *doc;
    }
    return std::nullopt;
}

const Document* Corpus::find(const std::string& doc_id) const
{
    auto it = m_by_id.find(doc_id);
    return it == m_by_id.end() ? nullptr : &m_docs[it->second];
}

void Corpus::save(const std::filesystem::path& path) const
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    for (const auto& doc : m_docs) {
        nlohmann::json record = {{"doc_id", doc.doc_id}, {"title", doc.title}, {"abstract", doc.abstract}};
        out << record.dump() << '\n';
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

Corpus Corpus::load(const std::filesystem::path& path)
{
    Corpus corpus;
    auto stats = corpus.ingest_jsonl(path);
    if (!stats.rejected.empty()) {
        throw ParseError("stored corpus is corrupt: " + stats.rejected.front().reason,
                         stats.rejected.front().line_no);
    }
    return corpus;
}

}  // namespace picolit
