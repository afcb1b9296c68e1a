#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "picolit/metrics.hpp"

using namespace picolit;

namespace {

Qrels qrels_from(const std::vector<oracle::QrelLine>& lines)
{
    Qrels q;
    for (const auto& l : lines) {
        q.add(l.topic, l.doc, l.judgment);
    }
    return q;
}

std::vector<std::string> docs(std::size_t n, const std::string& prefix = "d")
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(prefix + std::to_string(i));
    }
    return out;
}

QueryEval eval_with_precision(const std::string& topic, double p)
{
    QueryEval e;
    e.topic_id = topic;
    e.precision = p;
    return e;
}

}  // namespace

TEST(EvaluateQuery, OneRelevantOfFifty)
{
    Qrels q;
    q.add("2", "d0", 2);
    auto e = evaluate_query(docs(50), "2", q);
    EXPECT_EQ(e.n_rel, 1u);
    EXPECT_EQ(e.n_unj, 49u);
    EXPECT_NEAR(*e.precision, 0.02, 1e-12);
    EXPECT_NEAR(*e.precision_judg, 1.0, 1e-12);
    EXPECT_NEAR(*e.prop_unjudged, 0.98, 1e-12);
}

TEST(EvaluateQuery, ThirteenRelevantOfFifty)
{
    Qrels q;
    auto d = docs(50);
    for (int i = 0; i < 13; ++i) {
        q.add("22", d[static_cast<std::size_t>(i)], i % 2 + 1);
    }
    for (int i = 13; i < 20; ++i) {
        q.add("22", d[static_cast<std::size_t>(i)], 0);
    }
    auto e = evaluate_query(d, "22", q);
    EXPECT_NEAR(*e.precision, 0.26, 1e-12);
    EXPECT_NEAR(*e.precision_judg, 0.65, 1e-12);
}

TEST(EvaluateQuery, EmptyResultIsUndefined)
{
    auto e = evaluate_query({}, "1", Qrels{});
    EXPECT_FALSE(e.precision.has_value());
    EXPECT_FALSE(e.precision_judg.has_value());
    EXPECT_FALSE(e.prop_unjudged.has_value());
}

TEST(EvaluateQuery, AllUnjudgedLeavesJudgedPrecisionUndefined)
{
    auto e = evaluate_query(docs(3), "1", Qrels{});
    EXPECT_EQ(*e.precision, 0.0);
    EXPECT_FALSE(e.precision_judg.has_value());
    EXPECT_EQ(*e.prop_unjudged, 1.0);
}

TEST(EvaluateQuery, DuplicateDocsCountOnce)
{
    Qrels q;
    q.add("1", "a", 1);
    std::vector<std::string> d = {"a", "a", "b"};
    auto e = evaluate_query(d, "1", q);
    EXPECT_EQ(e.total(), 2u);
}

// Property: counts equal a brute-force recount; precision ordering holds.
TEST(EvaluateQueryProperty, RecountAndOrdering)
{
    std::mt19937 rng(123);
    std::uniform_int_distribution<int> judg(0, 2);
    std::uniform_int_distribution<std::size_t> n(0, 60);
    std::bernoulli_distribution judged(0.5);
    for (int round = 0; round < 300; ++round) {
        auto pool = docs(80);
        std::vector<oracle::QrelLine> lines;
        for (const auto& d : pool) {
            if (judged(rng)) {
                lines.push_back({"t", d, judg(rng)});
            }
        }
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(n(rng));
        auto e = evaluate_query(pool, "t", qrels_from(lines));
        auto r = oracle::recount(pool, "t", lines);
        EXPECT_EQ(e.n_rel, r.rel);
        EXPECT_EQ(e.n_irrel, r.irrel);
        EXPECT_EQ(e.n_unj, r.unj);
        if (e.precision && e.precision_judg) {
            EXPECT_LE(*e.precision, *e.precision_judg);
            if (e.n_rel > 0) {
                EXPECT_EQ(*e.precision == *e.precision_judg, e.n_unj == 0);
            }
        }
    }
}

TEST(Summaries, MedianAndMean)
{
    std::vector<double> v = {0.3, 0.1, 0.2, 0.4};
    auto s = summarize(std::span<const double>(v));
    ASSERT_TRUE(s);
    EXPECT_DOUBLE_EQ(s->median, 0.25);
    EXPECT_DOUBLE_EQ(s->mean, 0.25);
    EXPECT_EQ(s->min, 0.1);
    EXPECT_EQ(s->max, 0.4);
    std::vector<std::optional<double>> o = {std::nullopt, 0.5};
    EXPECT_EQ(summarize(std::span<const std::optional<double>>(o))->n, 1u);
    EXPECT_FALSE(summarize(std::span<const double>()).has_value());
}

TEST(CompareViews, MediansOfThree)
{
    std::vector<QueryEval> raw = {eval_with_precision("1", 0.1), eval_with_precision("2", 0.2),
                                  eval_with_precision("3", 0.3)};
    std::vector<QueryEval> filt = {eval_with_precision("1", 0.2), eval_with_precision("2", 0.3),
                                   eval_with_precision("3", 0.4)};
    auto c = compare_views(raw, filt);
    EXPECT_NEAR(c.raw.precision->median, 0.2, 1e-12);
    EXPECT_NEAR(c.filtered.precision->median, 0.3, 1e-12);
    ASSERT_EQ(c.rows.size(), 3u);
    EXPECT_NEAR(*c.rows[0].precision_delta, 0.1, 1e-12);
}

TEST(CompareViews, IdentityGivesZeroDeltas)
{
    std::vector<QueryEval> raw = {eval_with_precision("5", 0.7), eval_with_precision("6", 0.0)};
    for (const auto& row : compare_views(raw, raw).rows) {
        EXPECT_EQ(*row.precision_delta, 0.0);
    }
}

TEST(CompareViews, TenTopicFixture)
{
    // raw sorted .02 .02 .06 .06 .08 .16 .16 .20 .26 .40 -> median (.08+.16)/2 = .12
    const double raw_p[] = {0.02, 0.06, 0.02, 0.20, 0.08, 0.26, 0.16, 0.16, 0.40, 0.06};
    const double filt_p[] = {0.10, 0.12, 0.00, 0.40, 0.20, 0.30, 0.17, 0.15, 0.50, 0.05};
    std::vector<QueryEval> raw, filt;
    for (int i = 0; i < 10; ++i) {
        raw.push_back(eval_with_precision(std::to_string(i + 1), raw_p[i]));
        filt.push_back(eval_with_precision(std::to_string(i + 1), filt_p[i]));
    }
    auto c = compare_views(raw, filt);
    EXPECT_NEAR(c.raw.precision->median, 0.12, 1e-12);
    // filtered sorted 0 .05 .10 .12 .15 .17 .20 .30 .40 .50 -> (.15+.17)/2 = .16
    EXPECT_NEAR(c.filtered.precision->median, 0.16, 1e-12);
    EXPECT_NEAR(c.raw.precision->mean, 1.42 / 10, 1e-12);
}

TEST(CompareViews, MismatchedTopicsThrow)
{
    std::vector<QueryEval> raw = {eval_with_precision("1", 0.1)};
    std::vector<QueryEval> filt = {eval_with_precision("2", 0.1)};
    EXPECT_THROW(compare_views(raw, filt), std::invalid_argument);
}

TEST(Spearman, IdentityAndReversal)
{
    std::vector<double> x = {1, 2, 3};
    std::vector<double> r = {3, 2, 1};
    EXPECT_DOUBLE_EQ(*spearman(x, x).rho, 1.0);
    EXPECT_DOUBLE_EQ(*spearman(x, r).rho, -1.0);
    EXPECT_EQ(spearman(x, r).n_pairs, 3u);
}

TEST(Spearman, AverageRanksWithTies)
{
    std::vector<double> v = {10, 20, 10, 30};
    EXPECT_EQ(average_ranks(v), (std::vector<double>{1.5, 3, 1.5, 4}));
}

TEST(Spearman, DegenerateInputs)
{
    std::vector<double> c = {1, 1, 1};
    std::vector<double> x = {1, 2, 3};
    EXPECT_FALSE(spearman(c, x).rho.has_value());
    std::vector<double> one = {1};
    EXPECT_THROW(spearman(one, one), std::invalid_argument);
    std::vector<double> two = {1, 2};
    EXPECT_THROW(spearman(x, two), std::invalid_argument);
}

TEST(SpearmanProperty, MatchesNaiveRanking)
{
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> len(2, 40);
    std::uniform_int_distribution<int> val(0, 6);
    for (int round = 0; round < 200; ++round) {
        const int n = len(rng);
        std::vector<double> xs, ys;
        for (int i = 0; i < n; ++i) {
            xs.push_back(val(rng));
            ys.push_back(val(rng) * 0.5);
        }
        const double want = oracle::naive_spearman(xs, ys);
        auto got = spearman(xs, ys);
        if (std::isnan(want)) {
            EXPECT_FALSE(got.rho.has_value());
        } else {
            ASSERT_TRUE(got.rho.has_value());
            EXPECT_NEAR(*got.rho, want, 1e-12);
        }
    }
}

TEST(QueryFit, HalfAndZero)
{
    std::vector<Relation> rel = {{RelationKind::PI, "Z01", "D03", {"d1"}}, {RelationKind::PI, "C01", "D03", {"d2"}}};
    auto graph = to_sankey(rel);
    QueryConcepts q;
    q[0] = {"Z01"};
    auto fit = query_fit(q, graph);
    ASSERT_TRUE(fit[0]);
    EXPECT_EQ(fit[0]->matched, 1u);
    EXPECT_EQ(fit[0]->total, 2u);
    EXPECT_DOUBLE_EQ(*fit[0]->percentage, 50.0);
    EXPECT_FALSE(fit[1].has_value());  // role absent from query
    q[0] = {"M01"};
    EXPECT_DOUBLE_EQ(*query_fit(q, graph)[0]->percentage, 0.0);
    q[2] = {"C23"};
    EXPECT_FALSE(query_fit(q, graph)[2]->percentage.has_value());  // no O nodes
}

// Property: per-role mean percentage over 20 synthetic topics equals a recount.
TEST(QueryFitProperty, MeanMatchesRecount)
{
    std::mt19937 rng(20);
    const std::vector<std::string> codes = {"A01", "B01", "C01", "D01", "E01", "F01"};
    std::bernoulli_distribution coin(0.4);
    std::vector<std::array<std::optional<RoleFit>, 3>> fits;
    std::array<std::vector<double>, 3> expect;
    for (int t = 0; t < 20; ++t) {
        std::vector<Relation> rel;
        for (const auto& a : codes) {
            for (const auto& b : codes) {
                if (coin(rng)) {
                    rel.push_back({coin(rng) ? RelationKind::PI : RelationKind::IO, a, b, {"d"}});
                }
            }
        }
        auto graph = to_sankey(rel);
        QueryConcepts q;
        for (std::size_t r = 0; r < 3; ++r) {
            for (const auto& c : codes) {
                if (coin(rng)) {
                    q[r].insert(c);
                }
            }
            if (q[r].empty()) {
                continue;
            }
            double nodes = 0, hit = 0;
            for (const auto& n : graph.nodes) {
                if (static_cast<std::size_t>(n.role) == r) {
                    ++nodes;
                    hit += q[r].count(n.code) ? 1 : 0;
                }
            }
            if (nodes > 0) {
                expect[r].push_back(hit / nodes * 100.0);
            }
        }
        fits.push_back(query_fit(q, graph));
    }
    auto summary = fit_summary(fits);
    for (std::size_t r = 0; r < 3; ++r) {
        if (expect[r].empty()) {
            EXPECT_FALSE(summary[r].has_value());
            continue;
        }
        double mean = 0;
        for (double v : expect[r]) {
            mean += v;
        }
        mean /= static_cast<double>(expect[r].size());
        ASSERT_TRUE(summary[r]);
        EXPECT_NEAR(summary[r]->mean, mean, 1e-9);
        EXPECT_EQ(summary[r]->n, expect[r].size());
    }
}

TEST(RelationPrecision, BiggerRelationMoreRelevant)
{
    Qrels q;
    q.add("1", "a", 2);
    q.add("1", "b", 1);
    q.add("1", "c", 0);
    std::vector<TopicRelations> t = {
        {"1", {{RelationKind::PI, "A01", "B01", {"a", "b"}}, {RelationKind::PI, "A01", "C01", {"c"}}}}};
    auto r = relation_precision_correlation(t, q);
    EXPECT_EQ(r.n_pairs, 2u);
    EXPECT_DOUBLE_EQ(*r.rho, 1.0);
}

TEST(RelationPrecision, AllSingletonsUndefined)
{
    Qrels q;
    q.add("1", "a", 2);
    std::vector<TopicRelations> t = {
        {"1", {{RelationKind::PI, "A01", "B01", {"a"}}, {RelationKind::PI, "A01", "C01", {"c"}}}}};
    EXPECT_FALSE(relation_precision_correlation(t, q).rho.has_value());
}

// Property: composition of per-relation evaluate_query and the naive Spearman.
TEST(RelationPrecisionProperty, MatchesComposedOracle)
{
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> judg(-1, 2);
    std::uniform_int_distribution<int> size(1, 6);
    std::uniform_int_distribution<int> doc(0, 30);
    for (int round = 0; round < 50; ++round) {
        std::vector<oracle::QrelLine> lines;
        for (int d = 0; d <= 30; ++d) {
            int j = judg(rng);
            if (j >= 0) {
                lines.push_back({"1", "d" + std::to_string(d), j});
            }
        }
        std::vector<Relation> rel;
        std::vector<double> xs, ys;
        for (int i = 0; i < 8; ++i) {
            std::set<std::string> ds;
            const int s = size(rng);
            while (static_cast<int>(ds.size()) < s) {
                ds.insert("d" + std::to_string(doc(rng)));
            }
            std::vector<std::string> ids(ds.begin(), ds.end());
            rel.push_back({RelationKind::PI, "A01", "B" + std::to_string(i), ids});
            auto r = oracle::recount(ids, "1", lines);
            xs.push_back(static_cast<double>(ids.size()));
            ys.push_back(static_cast<double>(r.rel) / static_cast<double>(ids.size()));
        }
        std::vector<TopicRelations> t = {{"1", rel}};
        auto got = relation_precision_correlation(t, qrels_from(lines));
        const double want = oracle::naive_spearman(xs, ys);
        if (std::isnan(want)) {
            EXPECT_FALSE(got.rho.has_value());
        } else {
            EXPECT_NEAR(*got.rho, want, 1e-12);
        }
    }
}
