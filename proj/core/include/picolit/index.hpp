#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "picolit/corpus.hpp"
#include "picolit/tokenizer.hpp"

namespace picolit {

/// Default hit cap for search().
inline constexpr std::size_t kDefaultHitCap = 1000;

enum class Scorer { bm25, tfidf };

std::string_view to_string(Scorer scorer) noexcept;
std::optional<Scorer> parse_scorer(std::string_view name) noexcept;

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

/// `doc` is the document's ordinal in doc_id order, so postings sorted by
/// ordinal are also sorted by doc_id.
struct Posting {
    std::uint32_t doc = 0;
    std::uint32_t term_frequency = 0;
};

struct IndexStats {
    std::size_t n_docs = 0;
    std::size_t n_terms = 0;
    std::uint64_t total_tokens = 0;
    double avg_doc_len = 0.0;
};

struct ScoredHit {
    std::string doc_id;
    double score = 0.0;
    std::size_t rank = 0;

    friend bool operator==(const ScoredHit&, const ScoredHit&) = default;
};

/// Inverted index over title + " " + abstract. Built once, then immutable;
/// all const members are safe to call concurrently.
class InvertedIndex {
  public:
    static InvertedIndex build(const Corpus& corpus, const TokenizerOptions& opts = {});

    IndexStats stats() const;
    std::size_t doc_frequency(std::string_view term) const;
    std::span<const Posting> postings(std::string_view term) const;

    std::size_t n_docs() const noexcept { return m_doc_ids.size(); }
    const std::string& doc_id(std::uint32_t ordinal) const { return m_doc_ids.at(ordinal); }
    std::uint32_t doc_length(std::uint32_t ordinal) const { return m_doc_len.at(ordinal); }
    std::optional<std::uint32_t> ordinal(const std::string& doc_id) const;
    const TokenizerOptions& tokenizer_options() const noexcept { return m_opts; }

    /// Sum over distinct query terms of idf * tf / (tf + k1 * (1 - b + b * dl / avgdl)),
    /// idf = ln(1 + (N - df + 0.5) / (df + 0.5)). Unknown doc or terms score 0.
    double score_bm25(const std::vector<std::string>& query_terms, const std::string& doc_id,
                      const Bm25Params& params = {}) const;

    /// Sum over distinct query terms of sqrt(tf) * idf^2 / sqrt(dl),
    /// idf = 1 + ln(N / (df + 1)). No coordination or query norm.
    double score_classic_tfidf(const std::vector<std::string>& query_terms,
                               const std::string& doc_id) const;

    /// Top-k documents containing at least one query term, ordered by score
    /// descending then doc_id ascending; ranks start at 1.
    std::vector<ScoredHit> search(std::string_view query, std::size_t k = kDefaultHitCap,
                                  Scorer scorer = Scorer::bm25, const Bm25Params& params = {}) const;

    void save(const std::filesystem::path& path) const;
    static InvertedIndex load(const std::filesystem::path& path);

  private:
    double bm25_term(std::size_t df, std::uint32_t tf, std::uint32_t dl, const Bm25Params& p) const;
    double tfidf_term(std::size_t df, std::uint32_t tf, std::uint32_t dl) const;
    std::uint32_t term_frequency(std::string_view term, std::uint32_t ordinal) const;

    TokenizerOptions m_opts;
    std::vector<std::string> m_doc_ids;  // sorted
    std::vector<std::uint32_t> m_doc_len;
    std::unordered_map<std::string, std::vector<Posting>> m_postings;
    std::uint64_t m_total_tokens = 0;
    double m_avg_doc_len = 0.0;
};

/// Distinct terms in sorted order; the summation order used by both scorers.
std::vector<std::string> distinct_terms(std::vector<std::string> terms);

}  // namespace picolit
