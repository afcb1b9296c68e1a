#pragma once

// Hand-rolled generators and small helpers shared by the test binaries.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstddef>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "picolit/annotations.hpp"
#include "picolit/corpus.hpp"
#include "picolit/mesh.hpp"
#include "picolit/trec.hpp"

namespace picolit::testkit {

inline Corpus make_corpus(const std::vector<Document>& docs)
{
    std::stringstream ss;
    for (const auto& d : docs) {
        ss << nlohmann::json{{"doc_id", d.doc_id}, {"title", d.title}, {"abstract", d.abstract}}.dump() << '\n';
    }
    Corpus corpus;
    corpus.ingest_jsonl(ss);
    return corpus;
}

class TempDir {
  public:
    TempDir()
    {
        static std::atomic<int> counter{0};
        m_path = std::filesystem::temp_directory_path() /
                 ("picolit_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(m_path);
        std::filesystem::create_directories(m_path);
    }
    ~TempDir() { std::filesystem::remove_all(m_path); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const noexcept { return m_path; }

  private:
    std::filesystem::path m_path;
};

inline std::string doc_name(std::size_t i)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "d%04zu", i);
    return buf;
}

/// Random bag-of-words corpus over a small vocabulary so that terms repeat
/// and score ties are common.
struct TextCorpus {
    std::vector<Document> docs;
    std::vector<std::string> vocab;
};

inline TextCorpus random_text_corpus(std::mt19937& rng, std::size_t max_docs)
{
    static const std::vector<std::string> words = {"alpha", "Beta",  "gamma", "delta", "eps", "zeta",
                                                   "eta",   "theta", "iota",  "kappa", "mu",  "nu",
                                                   "covid", "mask",  "2020"};
    TextCorpus out;
    out.vocab = {"alpha", "beta", "gamma", "delta", "eps",  "zeta", "eta",  "theta",
                 "iota",  "kappa", "mu",   "nu",    "covid", "mask", "2020"};
    std::uniform_int_distribution<std::size_t> n_docs(1, max_docs);
    std::uniform_int_distribution<std::size_t> n_words(1, 30);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    const char* seps[] = {" ", ", ", "-", " (", ") ", ". "};
    std::uniform_int_distribution<std::size_t> sep(0, 5);
    const auto n = n_docs(rng);
    for (std::size_t i = 0; i < n; ++i) {
        Document d;
        d.doc_id = doc_name(i);
        d.title = words[pick(rng)];
        const auto len = n_words(rng);
        for (std::size_t w = 0; w < len; ++w) {
            d.abstract += words[pick(rng)];
            d.abstract += seps[sep(rng)];
        }
        out.docs.push_back(std::move(d));
    }
    return out;
}

inline std::vector<oracle::NaiveDoc> naive_docs(const std::vector<Document>& docs)
{
    std::vector<oracle::NaiveDoc> out;
    for (const auto& d : docs) {
        out.push_back({d.doc_id, oracle::naive_tokens(d.title + " " + d.abstract)});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
}

/// Annotated corpus whose intended role concepts are known up front.
/// Each role gets a disjoint region of the text; every intended concept is
/// mentioned inside a span of that role. Distractor mentions straddle span
/// boundaries or lie outside every span and must not contribute.
struct AnnotatedFixture {
    std::vector<Document> docs;
    std::vector<DocAnnotations> annotations;
    std::vector<oracle::DocRoles> expected;  // granularity 1, title+abstract
};

inline std::string random_tree(std::mt19937& rng, const std::string& first)
{
    std::uniform_int_distribution<int> depth(0, 3);
    std::uniform_int_distribution<int> seg(0, 999);
    std::string t = first;
    const int d = depth(rng);
    for (int i = 0; i < d; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, ".%03d", seg(rng));
        t += buf;
    }
    return t;
}

inline AnnotatedFixture random_annotated_fixture(std::mt19937& rng, std::size_t max_docs)
{
    static const std::vector<std::string> codes = {"A01", "B01", "C01", "C02", "D01", "D02", "D03",
                                                   "E01", "E02", "F01", "G01", "M01", "N01", "Z01"};
    constexpr std::size_t kRegion = 100;  // bytes per role region
    std::uniform_int_distribution<std::size_t> n_docs(1, max_docs);
    std::uniform_int_distribution<std::size_t> n_codes(0, 3);
    std::uniform_int_distribution<std::size_t> pick(0, codes.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> n_distractors(0, 3);

    AnnotatedFixture fx;
    const auto n = n_docs(rng);
    for (std::size_t i = 0; i < n; ++i) {
        Document doc{doc_name(i), "T", std::string(3 * kRegion + 20, 'x')};
        DocAnnotations ann{doc.doc_id, {}, {}};
        oracle::DocRoles roles{doc.doc_id, {}};
        for (std::size_t r = 0; r < 3; ++r) {
            const std::size_t base = 10 + r * kRegion;
            const auto type = static_cast<PicoType>(r);
            std::set<std::string> chosen;
            const auto k = n_codes(rng);
            for (std::size_t c = 0; c < k; ++c) {
                chosen.insert(codes[pick(rng)]);
            }
            if (chosen.empty() && coin(rng) == 0) {
                continue;  // no span for this role
            }
            // Two spans of the same role: [base, base+40) and [base+50, base+90).
            const bool two = coin(rng) == 1;
            ann.spans.push_back({doc.doc_id, type, base, base + 40});
            if (two) {
                ann.spans.push_back({doc.doc_id, type, base + 50, base + 90});
            }
            std::size_t slot = 0;
            for (const auto& code : chosen) {
                const std::size_t region = two && slot % 2 == 1 ? base + 50 : base;
                const std::size_t off = region + slot * 6;
                ConceptMention m{doc.doc_id, off, off + 5, code, {parse_tree_number(random_tree(rng, code))}};
                if (coin(rng) == 1) {
                    m.tree_numbers.push_back(parse_tree_number(random_tree(rng, code)));
                }
                ann.mentions.push_back(std::move(m));
                roles.roles[r].insert(code);
                ++slot;
            }
            const int nd = n_distractors(rng);
            for (int j = 0; j < nd; ++j) {
                const auto code = codes[pick(rng)];
                // Straddles the end of the first span, or sits in the gap between spans.
                const std::size_t s = coin(rng) == 1 ? base + 38 : base + 42;
                ann.mentions.push_back({doc.doc_id, s, s + 5, "distractor", {parse_tree_number(random_tree(rng, code))}});
            }
        }
        fx.docs.push_back(std::move(doc));
        fx.annotations.push_back(std::move(ann));
        fx.expected.push_back(std::move(roles));
    }
    return fx;
}

inline AnnotationStore make_store(const AnnotatedFixture& fx, const Corpus& corpus)
{
    AnnotationStore store;
    for (const auto& a : fx.annotations) {
        store.put(a, corpus);
    }
    return store;
}

/// Random valid run: several topics, ranks 1..n, distinct docs, decreasing scores.
inline std::vector<RunEntry> random_run(std::mt19937& rng)
{
    std::uniform_int_distribution<int> n_topics(1, 5);
    std::uniform_int_distribution<int> n_docs(0, 60);
    std::uniform_real_distribution<double> score(-5.0, 50.0);
    std::uniform_int_distribution<int> topic_no(1, 50);
    std::vector<RunEntry> run;
    std::set<int> used;
    const int nt = n_topics(rng);
    while (static_cast<int>(used.size()) < nt) {
        used.insert(topic_no(rng));
    }
    for (int t : used) {
        const int nd = n_docs(rng);
        std::vector<double> scores;
        for (int i = 0; i < nd; ++i) {
            scores.push_back(score(rng));
        }
        std::sort(scores.rbegin(), scores.rend());
        for (int i = 0; i < nd; ++i) {
            run.push_back({std::to_string(t), "doc" + std::to_string(i * 7 + t), static_cast<std::size_t>(i + 1),
                           scores[static_cast<std::size_t>(i)], "tag" + std::to_string(t % 3)});
        }
    }
    return run;
}

}  // namespace picolit::testkit
