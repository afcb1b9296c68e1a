// picolit command line: ingest, annotate, index, search, sankey, eval, serve.

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "picolit/http_server.hpp"
#include "picolit/lexicon.hpp"
#include "picolit/service.hpp"
#include "picolit/store.hpp"

namespace {

using namespace picolit;
using nlohmann::json;

json rejections_json(const std::vector<Rejection>& rejected)
{
    json out = json::array();
    for (const auto& r : rejected) {
        out.push_back({{"line", r.line_no}, {"reason", r.reason}});
    }
    return out;
}

struct SearchOptions {
    std::string query;
    std::size_t k = kDefaultHitCap;
    std::string scorer = "bm25";
    std::size_t granularity = kDefaultGranularity;
    std::string scope = "title+abstract";

    void add_to(CLI::App* cmd)
    {
        cmd->add_option("-q,--query", query, "Natural-language query")->required();
        cmd->add_option("-k", k, "Hit cap")->capture_default_str();
        cmd->add_option("--scorer", scorer, "bm25 or tfidf")->capture_default_str();
        cmd->add_option("--granularity", granularity, "MeSH tree-number segments kept")->capture_default_str();
        cmd->add_option("--scope", scope, "title+abstract or abstract-only")->capture_default_str();
    }

    SearchParams params() const
    {
        return parse_search_params({{"q", query},
                                    {"k", std::to_string(k)},
                                    {"scorer", scorer},
                                    {"granularity", std::to_string(granularity)},
                                    {"scope", scope}});
    }
};

HttpServer* g_server = nullptr;

void on_signal(int)
{
    if (g_server != nullptr) {
        g_server->stop();
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"PICO concept relations over literature search results"};
    app.require_subcommand(1);

    std::string store_dir;
    if (const char* env = std::getenv("PICOLIT_STORE")) {
        store_dir = env;
    }
    app.add_option("--store", store_dir, "Store directory (default: $PICOLIT_STORE)");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Load a JSONL or CSV corpus into the store");
    std::string jsonl_path, csv_path;
    CsvColumnMap columns;
    auto* jsonl_opt = ingest->add_option("--jsonl", jsonl_path, "JSONL corpus (doc_id, title, abstract)");
    auto* csv_opt = ingest->add_option("--csv", csv_path, "CSV corpus");
    jsonl_opt->excludes(csv_opt);
    ingest->add_option("--id-column", columns.doc_id)->capture_default_str();
    ingest->add_option("--title-column", columns.title)->capture_default_str();
    ingest->add_option("--abstract-column", columns.abstract)->capture_default_str();

    // annotate
    auto* annotate = app.add_subcommand("annotate", "Tag documents with a lexicon or import annotations");
    std::string lexicon_path, import_path, export_path;
    auto* lex_opt = annotate->add_option("--lexicon", lexicon_path, "Lexicon TSV (phrase, tree numbers, P|I|O)");
    auto* imp_opt = annotate->add_option("--import", import_path, "Annotation JSONL to import");
    annotate->add_option("--export", export_path, "Write the stored annotations as JSONL");
    lex_opt->excludes(imp_opt);

    // index
    auto* index_cmd = app.add_subcommand("index", "Build the inverted index");
    bool stopwords = false;
    index_cmd->add_flag("--stopwords", stopwords, "Drop English stopwords");

    // search
    auto* search = app.add_subcommand("search", "Search and print the response JSON");
    SearchOptions search_opts;
    search_opts.add_to(search);
    std::string run_out, run_tag = "picolit", run_topic = "1";
    search->add_option("--run-out", run_out, "Also write hits as a TREC run file");
    search->add_option("--run-tag", run_tag)->capture_default_str();
    search->add_option("--topic", run_topic, "Topic id used in the run file")->capture_default_str();

    // sankey
    auto* sankey = app.add_subcommand("sankey", "Print the Sankey graph, or one link's documents");
    SearchOptions sankey_opts;
    sankey_opts.add_to(sankey);
    std::string source, target, link_topic, topics_for_link, qrels_for_link;
    std::size_t offset = 0, limit = kDefaultPageLimit;
    auto* src_opt = sankey->add_option("--source", source, "Source node id, e.g. P:C18");
    auto* tgt_opt = sankey->add_option("--target", target, "Target node id, e.g. I:D03");
    src_opt->needs(tgt_opt);
    tgt_opt->needs(src_opt);
    sankey->add_option("--offset", offset)->capture_default_str();
    sankey->add_option("--limit", limit)->capture_default_str();
    sankey->add_option("--topic", link_topic, "Topic id for judgment labels");
    sankey->add_option("--topics", topics_for_link, "Topics file for judgment labels");
    sankey->add_option("--qrels", qrels_for_link, "Qrels file for judgment labels");

    // eval
    auto* eval = app.add_subcommand("eval", "Compare raw and relation-filtered results against qrels");
    std::string topics_path, qrels_path, concepts_path, out_dir = "eval_out";
    std::string eval_scorer = "bm25", eval_scope = "title+abstract", denominator = "all_retrieved";
    std::size_t eval_k = kDefaultHitCap, eval_g = kDefaultGranularity;
    eval->add_option("--topics", topics_path, "Topics XML or JSONL")->required();
    eval->add_option("--qrels", qrels_path, "TREC qrels")->required();
    eval->add_option("--query-concepts", concepts_path, "Per-topic PICO tree numbers (JSONL)");
    eval->add_option("--out", out_dir, "Report directory")->capture_default_str();
    eval->add_option("-k", eval_k)->capture_default_str();
    eval->add_option("--scorer", eval_scorer)->capture_default_str();
    eval->add_option("--granularity", eval_g)->capture_default_str();
    eval->add_option("--scope", eval_scope)->capture_default_str();
    eval->add_option("--run-tag", run_tag)->capture_default_str();
    eval->add_option("--relation-precision", denominator, "all_retrieved or judged_only")->capture_default_str();

    // serve
    auto* serve = app.add_subcommand("serve", "Serve the HTTP JSON API");
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string serve_topics, serve_qrels;
    serve->add_option("--host", host)->capture_default_str();
    serve->add_option("--port", port)->capture_default_str();
    serve->add_option("--topics", serve_topics, "Topics file for /topics and judgments");
    serve->add_option("--qrels", serve_qrels, "Qrels file for judgments");

    CLI11_PARSE(app, argc, argv);

    try {
        if (store_dir.empty()) {
            throw Error("no store directory: pass --store or set PICOLIT_STORE");
        }

        if (*ingest) {
            if (jsonl_path.empty() && csv_path.empty()) {
                throw Error("ingest needs --jsonl or --csv");
            }
            Corpus corpus;
            auto stats = jsonl_path.empty() ? corpus.ingest_csv(csv_path, columns) : corpus.ingest_jsonl(jsonl_path);
            save_corpus(store_dir, corpus);
            std::cout << json{{"n_docs", stats.n_docs},
                              {"n_empty_abstract", stats.n_empty_abstract},
                              {"rejected", rejections_json(stats.rejected)}}
                             .dump(2)
                      << '\n';
            return 0;
        }

        if (*annotate) {
            auto corpus = load_corpus(store_dir);
            json out;
            if (!lexicon_path.empty()) {
                LexiconTagger tagger(load_lexicon_tsv(lexicon_path));
                AnnotationStore store;
                std::size_t spans = 0, mentions = 0;
                for (const auto& doc : corpus.documents()) {
                    auto ann = tagger.tag(doc);
                    spans += ann.spans.size();
                    mentions += ann.mentions.size();
                    store.put(std::move(ann), corpus);
                }
                save_annotations(store_dir, store);
                out = {{"docs", store.size()}, {"spans", spans}, {"mentions", mentions}, {"rejected", json::array()}};
            } else if (!import_path.empty()) {
                AnnotationStore store;
                auto stats = store.import_jsonl(import_path, corpus);
                save_annotations(store_dir, store);
                out = {{"docs", stats.docs},
                       {"spans", stats.spans},
                       {"mentions", stats.mentions},
                       {"rejected", rejections_json(stats.rejected)}};
            }
            if (!export_path.empty()) {
                load_annotations(store_dir, corpus).export_jsonl(export_path);
            }
            if (lexicon_path.empty() && import_path.empty() && export_path.empty()) {
                throw Error("annotate needs --lexicon, --import or --export");
            }
            if (!out.is_null()) {
                std::cout << out.dump(2) << '\n';
            }
            return 0;
        }

        if (*index_cmd) {
            auto corpus = load_corpus(store_dir);
            auto index = InvertedIndex::build(corpus, TokenizerOptions{stopwords});
            save_index(store_dir, index);
            auto s = index.stats();
            std::cout << json{{"n_docs", s.n_docs},
                              {"n_terms", s.n_terms},
                              {"total_tokens", s.total_tokens},
                              {"avg_doc_len", round6(s.avg_doc_len)}}
                             .dump(2)
                      << '\n';
            return 0;
        }

        Service service;
        service.load(store_dir);

        if (*search) {
            auto result = service.search(search_opts.params());
            if (!run_out.empty()) {
                write_run(run_out, run_from_hits(run_topic, result.hits, run_tag));
            }
            std::cout << to_json(result).dump() << '\n';
            return 0;
        }

        if (*sankey) {
            auto params = sankey_opts.params();
            if (source.empty()) {
                std::cout << to_json(service.search(params).sankey).dump() << '\n';
                return 0;
            }
            if (!topics_for_link.empty() && !qrels_for_link.empty()) {
                service.load_judgments(topics_for_link, qrels_for_link);
            }
            std::optional<std::string> topic;
            if (!link_topic.empty()) {
                topic = link_topic;
            }
            auto page = service.relation_docs(params, source, target, offset, limit, topic);
            std::cout << to_json(page).dump() << '\n';
            return 0;
        }

        if (*eval) {
            json body = {{"topics_path", topics_path}, {"qrels_path", qrels_path}, {"out_dir", out_dir},
                         {"scorer", eval_scorer},      {"scope", eval_scope},      {"granularity", eval_g},
                         {"k", eval_k},                {"run_tag", run_tag},       {"relation_precision", denominator}};
            if (!concepts_path.empty()) {
                body["query_concepts_path"] = concepts_path;
            }
            auto report = service.eval(parse_eval_request(body));
            const auto& s = report.comparison;
            auto median = [](const std::optional<SummaryStats>& st) {
                return st ? format_fixed6(st->median) : std::string("n/a");
            };
            std::cout << "topics: " << report.topics.size() << "\n"
                      << "median precision raw: " << median(s.raw.precision)
                      << "  filtered: " << median(s.filtered.precision) << "\n"
                      << "mean unjudged raw: " << (s.raw.prop_unjudged ? format_fixed6(s.raw.prop_unjudged->mean) : "n/a")
                      << "  filtered: "
                      << (s.filtered.prop_unjudged ? format_fixed6(s.filtered.prop_unjudged->mean) : "n/a") << "\n"
                      << "report written to " << out_dir << "\n";
            return 0;
        }

        if (*serve) {
            if (!serve_topics.empty() && !serve_qrels.empty()) {
                service.load_judgments(serve_topics, serve_qrels);
            }
            HttpServer server(service);
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "listening on http://" << host << ':' << port << '\n';
            if (!server.listen(host, port)) {
                throw Error("cannot listen on " + host + ":" + std::to_string(port));
            }
            g_server = nullptr;
            return 0;
        }
    } catch (const ServiceError& e) {
        std::cerr << "error: " << error_json(e).dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
