#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "mini_fixture.hpp"
#include "picolit/http_server.hpp"
#include "picolit/metrics.hpp"
#include "picolit/service.hpp"

using namespace picolit;
using nlohmann::json;

namespace {

const std::string kQuestion28 = "What evidence is there for the value of hydroxychloroquine?";

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int status_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const ServiceError& e) {
        return e.status();
    }
    return 200;
}

class ServiceTest : public ::testing::Test {
  protected:
    static void SetUpTestSuite()
    {
        dir = new picolit::testkit::TempDir();
        picolit::testkit::build_mini_store(dir->path());
        service = new Service();
        service->load(dir->path());
        service->load_judgments(picolit::testkit::mini_dir() / "topics.xml",
                                picolit::testkit::mini_dir() / "qrels.txt");
        server = new HttpServer(*service);
        port = server->bind_any_port("127.0.0.1");
        thread = new std::thread([] { server->serve(); });
        for (int i = 0; i < 200 && !server->running(); ++i) {
            std::this_thread::sleep_for(std::chrono::milliseconds(5));
        }
    }
    static void TearDownTestSuite()
    {
        server->stop();
        thread->join();
        delete thread;
        delete server;
        delete service;
        delete dir;
    }

    static httplib::Result get(const std::string& path)
    {
        httplib::Client cli("127.0.0.1", port);
        return cli.Get(path);
    }

    static SearchParams params(const std::string& q)
    {
        SearchParams p;
        p.query = q;
        return p;
    }

    static picolit::testkit::TempDir* dir;
    static Service* service;
    static HttpServer* server;
    static std::thread* thread;
    static int port;
};

picolit::testkit::TempDir* ServiceTest::dir = nullptr;
Service* ServiceTest::service = nullptr;
HttpServer* ServiceTest::server = nullptr;
std::thread* ServiceTest::thread = nullptr;
int ServiceTest::port = 0;

}  // namespace

TEST(SearchParamsParsing, Defaults)
{
    auto p = parse_search_params({{"q", "masks"}});
    EXPECT_EQ(p.query, "masks");
    EXPECT_EQ(p.k, 1000u);
    EXPECT_EQ(p.scorer, Scorer::bm25);
    EXPECT_EQ(p.granularity, 1u);
    EXPECT_EQ(p.scope, Scope::title_abstract);
}

TEST(SearchParamsParsing, InvalidValuesAre400)
{
    EXPECT_EQ(status_of([] { parse_search_params({}); }), 400);
    EXPECT_EQ(status_of([] { parse_search_params({{"q", "x"}, {"k", "1001"}}); }), 400);
    EXPECT_EQ(status_of([] { parse_search_params({{"q", "x"}, {"k", "-1"}}); }), 400);
    EXPECT_EQ(status_of([] { parse_search_params({{"q", "x"}, {"scorer", "lm"}}); }), 400);
    EXPECT_EQ(status_of([] { parse_search_params({{"q", "x"}, {"granularity", "0"}}); }), 400);
    EXPECT_EQ(status_of([] { parse_search_params({{"q", "x"}, {"scope", "body"}}); }), 400);
    EXPECT_EQ(parse_search_params({{"q", "x"}, {"scope", "abstract-only"}}).scope, Scope::abstract_only);
}

TEST(ServiceLifecycle, UnloadedIsUnavailable)
{
    Service s;
    EXPECT_FALSE(s.ready());
    EXPECT_EQ(status_of([&] { s.search({"masks"}); }), 503);
    picolit::testkit::TempDir empty;
    EXPECT_THROW(s.load(empty.path()), Error);
    EXPECT_FALSE(s.ready());
    EXPECT_EQ(status_of([&] { s.search({"masks"}); }), 503);
}

TEST(ServiceLifecycle, ReloadWhileSearching)
{
    picolit::testkit::TempDir dir;
    picolit::testkit::build_mini_store(dir.path());
    Service s;
    s.load(dir.path());
    auto expected = to_json(s.search({kQuestion28})).dump();
    std::atomic<bool> done{false};
    std::atomic<int> ok{0}, unavailable{0}, other{0};
    std::vector<std::thread> readers;
    for (int t = 0; t < 4; ++t) {
        readers.emplace_back([&] {
            while (!done) {
                try {
                    if (to_json(s.search({kQuestion28})).dump() == expected) {
                        ++ok;
                    } else {
                        ++other;
                    }
                } catch (const ServiceError& e) {
                    (e.status() == 503 ? unavailable : other)++;
                }
            }
        });
    }
    for (int i = 0; i < 5; ++i) {
        s.load(dir.path());
    }
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(5);
    while (ok == 0 && std::chrono::steady_clock::now() < deadline) {
        std::this_thread::yield();
    }
    done = true;
    for (auto& r : readers) {
        r.join();
    }
    EXPECT_EQ(other.load(), 0);
    EXPECT_GT(ok.load(), 0);
}

TEST_F(ServiceTest, SearchOnFixture)
{
    auto r = service->search(params(kQuestion28));
    EXPECT_EQ(r.hits.size(), 13u);
    EXPECT_EQ(r.retained, (std::vector<std::string>{"a01", "a02", "a04"}));
    EXPECT_NEAR(*r.retained_fraction(), 3.0 / 13.0, 1e-12);
    for (const auto& link : r.sankey.links) {
        EXPECT_EQ(link.weight, link.doc_ids.size());
    }
}

TEST_F(ServiceTest, NoMatchGivesEmptyGraph)
{
    auto r = service->search(params("zzzzqqq"));
    EXPECT_TRUE(r.hits.empty());
    EXPECT_TRUE(r.sankey.nodes.empty());
    EXPECT_FALSE(r.retained_fraction().has_value());
    auto j = to_json(r);
    EXPECT_EQ(j["stats"]["n_hits"], 0);
    EXPECT_TRUE(j["stats"]["retained_fraction"].is_null());
}

TEST_F(ServiceTest, HttpSearchIsDeterministic)
{
    const std::string path = "/search?q=" + httplib::detail::encode_url(kQuestion28) + "&k=100";
    auto a = get(path);
    auto b = get(path);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->status, 200);
    EXPECT_EQ(a->body, b->body);
    auto j = json::parse(a->body);
    EXPECT_EQ(j["stats"]["n_hits"], 13);
    EXPECT_EQ(j["stats"]["n_retained"], 3);
    EXPECT_EQ(j["k"], 100);
    EXPECT_EQ(j["sankey"]["links"].size(), to_sankey(service->search(params(kQuestion28)).relations).links.size());
}

TEST_F(ServiceTest, HttpErrors)
{
    auto missing = get("/search");
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 400);
    auto body = json::parse(missing->body);
    EXPECT_EQ(body["code"], "bad_request");
    EXPECT_TRUE(body["message"].is_string());

    EXPECT_EQ(get("/search?q=x&k=5000")->status, 400);
    EXPECT_EQ(get("/relation-docs?q=mask")->status, 400);
    auto nf = get("/relation-docs?q=" + httplib::detail::encode_url(kQuestion28) + "&source=P:Q99&target=I:D03");
    EXPECT_EQ(nf->status, 404);
    EXPECT_EQ(json::parse(nf->body)["code"], "not_found");

    httplib::Client cli("127.0.0.1", port);
    auto bad = cli.Post("/eval", "{not json", "application/json");
    EXPECT_EQ(bad->status, 400);
    auto missing_file = cli.Post("/eval", R"({"topics_path":"/nonexistent","qrels_path":"/nonexistent"})",
                                 "application/json");
    EXPECT_EQ(missing_file->status, 400);
}

TEST_F(ServiceTest, HealthAndTopics)
{
    EXPECT_EQ(get("/health")->status, 200);
    auto topics = json::parse(get("/topics")->body);
    ASSERT_EQ(topics.size(), 3u);
    EXPECT_EQ(topics[0]["number"], "28");
}

// Every link's document list equals its weight, and badges match evaluate_query.
TEST_F(ServiceTest, RelationDocsMatchLinksAndJudgments)
{
    auto qrels = parse_qrels(picolit::testkit::mini_dir() / "qrels.txt");
    auto topics = parse_topics(picolit::testkit::mini_dir() / "topics.xml");
    std::size_t checked = 0;
    for (const auto& topic : topics.topics) {
        auto result = service->search(params(topic.question));
        for (const auto& link : result.sankey.links) {
            auto page = service->relation_docs(params(topic.question), link.source, link.target);
            ASSERT_EQ(page.topic_id, topic.topic_id);
            EXPECT_EQ(page.total, link.weight);
            ASSERT_EQ(page.docs.size(), link.doc_ids.size());
            for (std::size_t i = 0; i < page.docs.size(); ++i) {
                EXPECT_EQ(page.docs[i].doc_id, link.doc_ids[i]);
                std::vector<std::string> one = {link.doc_ids[i]};
                auto e = evaluate_query(one, topic.topic_id, qrels);
                const auto expected = e.n_rel ? Relevance::relevant
                                     : e.n_irrel ? Relevance::irrelevant
                                                 : Relevance::unjudged;
                EXPECT_EQ(page.docs[i].judgment, expected);
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST_F(ServiceTest, WeightOneLinkListsOneDocument)
{
    auto result = service->search(params(kQuestion28));
    ASSERT_FALSE(result.sankey.links.empty());
    const auto& link = result.sankey.links.front();
    ASSERT_EQ(link.weight, 1u);
    auto http = get("/relation-docs?q=" + httplib::detail::encode_url(kQuestion28) + "&source=" +
                    httplib::detail::encode_url(link.source) + "&target=" + httplib::detail::encode_url(link.target));
    ASSERT_EQ(http->status, 200);
    auto j = json::parse(http->body);
    EXPECT_EQ(j["total"], 1);
    ASSERT_EQ(j["docs"].size(), 1u);
    EXPECT_EQ(j["docs"][0]["doc_id"], link.doc_ids[0]);
    EXPECT_EQ(j["topic_id"], "28");
    EXPECT_EQ(j["limit"], 100);
}

TEST(ServicePaging, OffsetAndLimit)
{
    picolit::testkit::TempDir dir;
    std::vector<Document> docs;
    for (int i = 0; i < 5; ++i) {
        docs.push_back({"p" + std::to_string(i), "Canada chloroquine", "trial"});
    }
    auto corpus = picolit::testkit::make_corpus(docs);
    AnnotationStore annotations;
    for (const auto& d : corpus.documents()) {
        annotations.put({d.doc_id,
                         {{d.doc_id, PicoType::P, 0, 6}, {d.doc_id, PicoType::I, 7, 18}},
                         {{d.doc_id, 0, 6, "Canada", {parse_tree_number("Z01.107.567.176")}},
                          {d.doc_id, 7, 18, "Chloroquine", {parse_tree_number("D03.633.100.810.050.180")}}}},
                        corpus);
    }
    save_corpus(dir.path(), corpus);
    save_annotations(dir.path(), annotations);
    save_index(dir.path(), InvertedIndex::build(corpus));
    Service s;
    s.load(dir.path());
    SearchParams p;
    p.query = "chloroquine";
    auto all = s.relation_docs(p, "P:Z01", "I:D03");
    EXPECT_EQ(all.total, 5u);
    EXPECT_EQ(all.docs.size(), 5u);
    EXPECT_FALSE(all.topic_id.has_value());
    EXPECT_FALSE(all.docs[0].judgment.has_value());
    auto page = s.relation_docs(p, "P:Z01", "I:D03", 1, 2);
    ASSERT_EQ(page.docs.size(), 2u);
    EXPECT_EQ(page.docs[0].doc_id, "p1");
    EXPECT_EQ(page.docs[1].doc_id, "p2");
    EXPECT_EQ(page.total, 5u);
    EXPECT_TRUE(s.relation_docs(p, "P:Z01", "I:D03", 9, 2).docs.empty());
    EXPECT_EQ(s.relation_docs(p, "P:Z01", "I:D03").docs[0].title, "Canada chloroquine");
}

TEST_F(ServiceTest, CoarserGranularityNeverAddsNodes)
{
    auto topics = parse_topics(picolit::testkit::mini_dir() / "topics.xml");
    for (const auto& topic : topics.topics) {
        auto p = params(topic.question);
        for (std::size_t g = 1; g < 4; ++g) {
            p.granularity = g;
            auto coarse = service->search(p).sankey.nodes.size();
            p.granularity = g + 1;
            EXPECT_LE(coarse, service->search(p).sankey.nodes.size());
        }
    }
}

#ifdef PICOLIT_CLI_PATH
// POST /eval and `picolit eval` go through the same handler and write identical files.
TEST_F(ServiceTest, CliAndHttpEvalWriteIdenticalReports)
{
    picolit::testkit::TempDir http_out, cli_out;
    const auto mini = picolit::testkit::mini_dir();
    json body = {{"topics_path", (mini / "topics.xml").string()},
                 {"qrels_path", (mini / "qrels.txt").string()},
                 {"query_concepts_path", (mini / "query_concepts.jsonl").string()},
                 {"out_dir", http_out.path().string()}};
    httplib::Client cli("127.0.0.1", port);
    auto res = cli.Post("/eval", body.dump(), "application/json");
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 200) << res->body;

    const std::string cmd = std::string(PICOLIT_CLI_PATH) + " --store '" + dir->path().string() + "' eval --topics '" +
                            (mini / "topics.xml").string() + "' --qrels '" + (mini / "qrels.txt").string() +
                            "' --query-concepts '" + (mini / "query_concepts.jsonl").string() + "' --out '" +
                            cli_out.path().string() + "' > /dev/null";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    for (const char* f : {kRawCsv, kFilteredCsv, kReportJson, kRawRun}) {
        EXPECT_EQ(slurp(http_out.path() / f), slurp(cli_out.path() / f)) << f;
    }
    EXPECT_EQ(json::parse(res->body), json::parse(slurp(http_out.path() / kReportJson)));
}
#endif
