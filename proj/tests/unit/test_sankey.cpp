#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "picolit/sankey.hpp"

using namespace picolit;

TEST(Sankey, SingleRelation)
{
    std::vector<Relation> rel = {{RelationKind::PI, "Z01", "D03", {"d1"}}};
    auto g = to_sankey(rel);
    ASSERT_EQ(g.nodes.size(), 2u);
    ASSERT_EQ(g.links.size(), 1u);
    EXPECT_EQ(g.links[0].weight, 1u);
    EXPECT_EQ(g.links[0].source, "P:Z01");
    EXPECT_EQ(g.links[0].target, "I:D03");
    EXPECT_EQ(g.find_node("P:Z01")->label, "Geographic Locations");
}

TEST(Sankey, ThreeNodesTwoLinks)
{
    std::vector<Relation> rel = {{RelationKind::PI, "A01", "B01", {"d1", "d2"}}, {RelationKind::IO, "B01", "C01", {"d1"}}};
    auto g = to_sankey(rel);
    EXPECT_EQ(g.nodes.size(), 3u);
    ASSERT_EQ(g.links.size(), 2u);
    EXPECT_EQ(g.find_link("P:A01", "I:B01")->weight, 2u);
    EXPECT_EQ(g.find_link("I:B01", "O:C01")->weight, 1u);
}

TEST(Sankey, SameCodeInTwoRolesGivesTwoNodes)
{
    std::vector<Relation> rel = {{RelationKind::PI, "D03", "D03", {"d1"}}};
    auto g = to_sankey(rel);
    EXPECT_EQ(g.nodes.size(), 2u);
    EXPECT_EQ(g.count_nodes(PicoType::P), 1u);
    EXPECT_EQ(g.count_nodes(PicoType::I), 1u);
}

TEST(Sankey, RelationDocumentsSortedAndNotFound)
{
    std::vector<Relation> rel = {{RelationKind::PI, "A01", "B01", {"d2", "d1"}}, {RelationKind::IO, "B01", "C01", {"d9"}}};
    auto g = to_sankey(rel);
    EXPECT_EQ(relation_documents(g, "P:A01", "I:B01"), (std::vector<std::string>{"d1", "d2"}));
    EXPECT_EQ(relation_documents(g, "I:B01", "O:C01"), (std::vector<std::string>{"d9"}));
    EXPECT_FALSE(relation_documents(g, "P:A01", "O:C01").has_value());
}

TEST(Sankey, EmptyGraph)
{
    auto g = to_sankey({});
    EXPECT_TRUE(g.nodes.empty());
    EXPECT_TRUE(g.links.empty());
}

TEST(Sankey, JsonRoundTrip)
{
    std::vector<Relation> rel = {{RelationKind::PI, "Z01", "D03", {"a", "b"}}, {RelationKind::IO, "D03", "C01", {"a"}}};
    auto g = to_sankey(rel);
    auto j = to_json(g);
    EXPECT_EQ(j["links"][0]["weight"], 2);
    EXPECT_EQ(sankey_from_json(j), g);
    EXPECT_EQ(node_id(PicoType::O, "C01"), "O:C01");
}

// Property: weight = |doc_ids| for every link, over random annotated fixtures.
TEST(SankeyProperty, WeightEqualsDocCount)
{
    std::mt19937 rng(31337);
    for (int round = 0; round < 30; ++round) {
        auto fx = picolit::testkit::random_annotated_fixture(rng, 60);
        auto corpus = picolit::testkit::make_corpus(fx.docs);
        auto store = picolit::testkit::make_store(fx, corpus);
        std::vector<std::string> ids;
        for (const auto& d : fx.docs) {
            ids.push_back(d.doc_id);
        }
        for (std::size_t g = 1; g <= 3; ++g) {
            auto rel = build_relations(ids, store, corpus, g);
            auto graph = to_sankey(rel);
            EXPECT_EQ(graph.links.size(), rel.size());
            for (const auto& link : graph.links) {
                EXPECT_EQ(link.weight, link.doc_ids.size());
                EXPECT_NE(graph.find_node(link.source), nullptr);
                EXPECT_NE(graph.find_node(link.target), nullptr);
            }
        }
    }
}
