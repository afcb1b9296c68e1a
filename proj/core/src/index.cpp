#include "picolit/index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include "picolit/error.hpp"

namespace picolit {

namespace {

constexpr char kMagic[4] = {'P', 'L', 'I', 'X'};
constexpr std::uint32_t kFormatVersion = 1;

template <typename T>
void write_pod(std::ostream& out, T value)
{
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

void write_string(std::ostream& out, const std::string& s)
{
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

template <typename T>
T read_pod(std::istream& in)
{
    T value{};
    if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
        throw ParseError("truncated index file");
    }
    return value;
}

std::string read_string(std::istream& in)
{
    auto n = read_pod<std::uint32_t>(in);
    std::string s(n, '\0');
    if (n > 0 && !in.read(s.data(), n)) {
        throw ParseError("truncated index file");
    }
    return s;
}

}  // namespace

std::string_view to_string(Scorer scorer) noexcept
{
    return scorer == Scorer::bm25 ? "bm25" : "tfidf";
}

std::optional<Scorer> parse_scorer(std::string_view name) noexcept
{
    if (name == "bm25") {
        return Scorer::bm25;
    }
    if (name == "tfidf") {
        return Scorer::tfidf;
    }
    return std::nullopt;
}

std::vector<std::string> distinct_terms(std::vector<std::string> terms)
{
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    return terms;
}

InvertedIndex InvertedIndex::build(const Corpus& corpus, const TokenizerOptions& opts)
{
    InvertedIndex index;
    index.m_opts = opts;

    std::vector<const Document*> docs;
    docs.reserve(corpus.size());
    for (const auto& doc : corpus.documents()) {
        docs.push_back(&doc);
    }
    std::sort(docs.begin(), docs.end(), [](const Document* a, const Document* b) { return a->doc_id < b->doc_id; });

    index.m_doc_ids.reserve(docs.size());
    index.m_doc_len.reserve(docs.size());
    std::map<std::string, std::uint32_t> counts;
    for (std::uint32_t ordinal = 0; ordinal < docs.size(); ++ordinal) {
        const auto& doc = *docs[ordinal];
        auto tokens = tokenize(doc.combined_text(), opts);
        counts.clear();
        for (auto& tok : tokens) {
            ++counts[std::move(tok)];
        }
        for (const auto& [term, tf] : counts) {
            index.m_postings[term].push_back(Posting{ordinal, tf});
        }
        index.m_doc_ids.push_back(doc.doc_id);
        index.m_doc_len.push_back(static_cast<std::uint32_t>(tokens.size()));
        index.m_total_tokens += tokens.size();
    }
    if (!index.m_doc_ids.empty()) {
        index.m_avg_doc_len = static_cast<double>(index.m_total_tokens) / static_cast<double>(index.m_doc_ids.size());
    }
    return index;
}

IndexStats InvertedIndex::stats() const
{
    return IndexStats{m_doc_ids.size(), m_postings.size(), m_total_tokens, m_avg_doc_len};
}

std::size_t InvertedIndex::doc_frequency(std::string_view term) const
{
    return postings(term).size();
}

std::span<const Posting> InvertedIndex::postings(std::string_view term) const
{
    auto it = m_postings.find(std::string(term));
    if (it == m_postings.end()) {
        return {};
    }
    return it->second;
}

std::optional<std::uint32_t> InvertedIndex::ordinal(const std::string& doc_id) const
{
    auto it = std::lower_bound(m_doc_ids.begin(), m_doc_ids.end(), doc_id);
    if (it == m_doc_ids.end() || *it != doc_id) {
        return std::nullopt;
    }
    return static_cast<std::uint32_t>(it - m_doc_ids.begin());
}

std::uint32_t InvertedIndex::term_frequency(std::string_view term, std::uint32_t ordinal) const
{
    auto list = postings(term);
    auto it = std::lower_bound(list.begin(), list.end(), ordinal,
                               [](const Posting& p, std::uint32_t doc) { return p.doc < doc; });
    return (it != list.end() && it->doc == ordinal) ? it->term_frequency : 0;
}

double InvertedIndex::bm25_term(std::size_t df, std::uint32_t tf, std::uint32_t dl, const Bm25Params& p) const
{
    const double n = static_cast<double>(m_doc_ids.size());
    const double dfd = static_cast<double>(df);
    const double idf = std::log(1.0 + (n - dfd + 0.5) / (dfd + 0.5));
    const double tfd = static_cast<double>(tf);
    const double norm = 1.0 - p.b + p.b * static_cast<double>(dl) / m_avg_doc_len;
    return idf * tfd / (tfd + p.k1 * norm);
}

double InvertedIndex::tfidf_term(std::size_t df, std::uint32_t tf, std::uint32_t dl) const
{
    const double idf = 1.0 + std::log(static_cast<double>(m_doc_ids.size()) / static_cast<double>(df + 1));
    return std::sqrt(static_cast<double>(tf)) * idf * idf * (1.0 / std::sqrt(static_cast<double>(dl)));
}

double InvertedIndex::score_bm25(const std::vector<std::string>& query_terms, const std::string& doc_id,
                                 const Bm25Params& params) const
{
    auto doc = ordinal(doc_id);
    if (!doc) {
        return 0.0;
    }
    double score = 0.0;
    for (const auto& term : distinct_terms(query_terms)) {
        if (auto tf = term_frequency(term, *doc); tf > 0) {
            score += bm25_term(doc_frequency(term), tf, m_doc_len[*doc], params);
        }
    }
    return score;
}

double InvertedIndex::score_classic_tfidf(const std::vector<std::string>& query_terms,
                                          const std::string& doc_id) const
{
    auto doc = ordinal(doc_id);
    if (!doc) {
        return 0.0;
    }
    double score = 0.0;
    for (const auto& term : distinct_terms(query_terms)) {
        if (auto tf = term_frequency(term, *doc); tf > 0) {
            score += tfidf_term(doc_frequency(term), tf, m_doc_len[*doc]);
        }
    }
    return score;
}

std::vector<ScoredHit> InvertedIndex::search(std::string_view query, std::size_t k, Scorer scorer,
                                             const Bm25Params& params) const
{
    auto terms = distinct_terms(tokenize(query, m_opts));
    if (terms.empty() || k == 0) {
        return {};
    }

    // Term-at-a-time accumulation in sorted term order, the same order the
    // per-document scorers use, so scores agree bit for bit.
    std::vector<double> acc(m_doc_ids.size(), 0.0);
    std::vector<bool> touched(m_doc_ids.size(), false);
    std::vector<std::uint32_t> candidates;
    for (const auto& term : terms) {
        auto list = postings(term);
        const std::size_t df = list.size();
        for (const auto& p : list) {
            const std::uint32_t dl = m_doc_len[p.doc];
            acc[p.doc] += scorer == Scorer::bm25 ? bm25_term(df, p.term_frequency, dl, params)
                                                 : tfidf_term(df, p.term_frequency, dl);
            if (!touched[p.doc]) {
                touched[p.doc] = true;
                candidates.push_back(p.doc);
            }
        }
    }

    // Ordinals follow doc_id order, so comparing ordinals breaks ties by doc_id.
    auto better = [&](std::uint32_t a, std::uint32_t b) {
        if (acc[a] != acc[b]) {
            return acc[a] > acc[b];
        }
        return a < b;
    };
    const std::size_t n = std::min(k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n), candidates.end(), better);

    std::vector<ScoredHit> hits;
    hits.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        hits.push_back(ScoredHit{m_doc_ids[candidates[i]], acc[candidates[i]], i + 1});
    }
    return hits;
}

void InvertedIndex::save(const std::filesystem::path& path) const
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out.write(kMagic, sizeof(kMagic));
    write_pod<std::uint32_t>(out, kFormatVersion);
    write_pod<std::uint8_t>(out, m_opts.remove_stopwords ? 1 : 0);
    write_pod<std::uint64_t>(out, m_doc_ids.size());
    for (std::size_t i = 0; i < m_doc_ids.size(); ++i) {
        write_string(out, m_doc_ids[i]);
        write_pod<std::uint32_t>(out, m_doc_len[i]);
    }
    std::vector<const std::string*> terms;
    terms.reserve(m_postings.size());
    for (const auto& entry : m_postings) {
        terms.push_back(&entry.first);
    }
    std::sort(terms.begin(), terms.end(), [](const std::string* a, const std::string* b) { return *a < *b; });
    write_pod<std::uint64_t>(out, terms.size());
    for (const auto* term : terms) {
        const auto& list = m_postings.at(*term);
        write_string(out, *term);
        write_pod<std::uint64_t>(out, list.size());
        for (const auto& p : list) {
            write_pod<std::uint32_t>(out, p.doc);
            write_pod<std::uint32_t>(out, p.term_frequency);
        }
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

InvertedIndex InvertedIndex::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    char magic[4] = {};
    if (!in.read(magic, sizeof(magic)) || !std::equal(magic, magic + 4, kMagic)) {
        throw ParseError("not a picolit index file: " + path.string());
    }
    if (read_pod<std::uint32_t>(in) != kFormatVersion) {
        throw ParseError("unsupported index format version in " + path.string());
    }
    InvertedIndex index;
    index.m_opts.remove_stopwords = read_pod<std::uint8_t>(in) != 0;
    const auto n_docs = read_pod<std::uint64_t>(in);
    index.m_doc_ids.reserve(n_docs);
    index.m_doc_len.reserve(n_docs);
    for (std::uint64_t i = 0; i < n_docs; ++i) {
        index.m_doc_ids.push_back(read_string(in));
        index.m_doc_len.push_back(read_pod<std::uint32_t>(in));
        index.m_total_tokens += index.m_doc_len.back();
    }
    if (!std::is_sorted(index.m_doc_ids.begin(), index.m_doc_ids.end())) {
        throw ParseError("index document table is not sorted");
    }
    const auto n_terms = read_pod<std::uint64_t>(in);
    for (std::uint64_t t = 0; t < n_terms; ++t) {
        auto term = read_string(in);
        const auto n = read_pod<std::uint64_t>(in);
        std::vector<Posting> list;
        list.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            Posting p;
            p.doc = read_pod<std::uint32_t>(in);
            p.term_frequency = read_pod<std::uint32_t>(in);
            if (p.doc >= n_docs || p.term_frequency == 0) {
                throw ParseError("corrupt posting for term '" + term + "'");
            }
            list.push_back(p);
        }
        index.m_postings.emplace(std::move(term), std::move(list));
    }
    if (n_docs > 0) {
        index.m_avg_doc_len = static_cast<double>(index.m_total_tokens) / static_cast<double>(n_docs);
    }
    return index;
}

}  // namespace picolit
