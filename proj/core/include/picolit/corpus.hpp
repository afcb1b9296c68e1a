#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "picolit/error.hpp"

namespace picolit {

struct Document {
    std::string doc_id;
    std::string title;
    std::string abstract;

    /// The single indexed and annotated field: title + " " + abstract.
    std::string combined_text() const { return title + " " + abstract; }
    std::size_t combined_length() const { return title.size() + 1 + abstract.size(); }
    /// Byte offset where the abstract starts inside combined_text().
    std::size_t abstract_offset() const { return title.size() + 1; }

    friend bool operator==(const Document&, const Document&) = default;
};

struct CorpusStats {
    std::size_t n_docs = 0;
    std::size_t n_empty_abstract = 0;
    std::vector<Rejection> rejected;
};

/// Column names used to read a CSV corpus. Defaults follow CORD-19 metadata.csv.
struct CsvColumnMap {
    std::string doc_id = "cord_uid";
    std::string title = "title";
    std::string abstract = "abstract";
};

/// In-memory document collection. Ingest is single-writer; once loaded the
/// corpus is only read, and concurrent const access is safe.
///
/// Documents keep their ingest order. A repeated doc_id is rejected with
/// reason "duplicate" and the first occurrence wins.
class Corpus {
  public:
    CorpusStats ingest_jsonl(const std::filesystem::path& path);
    CorpusStats ingest_jsonl(std::istream& in);
    CorpusStats ingest_csv(const std::filesystem::path& path, const CsvColumnMap& columns = {});
    CorpusStats ingest_csv(std::istream& in, const CsvColumnMap& columns = {});

    std::optional<Document> get_document(const std::string& doc_id) const;
    /// Non-owning lookup; nullptr when absent.
    const Document* find(const std::string& doc_id) const;
    bool contains(const std::string& doc_id) const { return m_by_id.count(doc_id) != 0; }

    const std::vector<Document>& documents() const noexcept { return m_docs; }
    std::size_t size() const noexcept { return m_docs.size(); }
    bool empty() const noexcept { return m_docs.empty(); }

    /// Writes the accepted documents as JSONL; load() reads them back.
    void save(const std::filesystem::path& path) const;
    static Corpus load(const std::filesystem::path& path);

  private:
    /// Validates and appends; returns the rejection reason on failure.
    std::optional<std::string> add(Document doc);

    std::vector<Document> m_docs;
    std::unordered_map<std::string, std::size_t> m_by_id;
};

}  // namespace picolit
