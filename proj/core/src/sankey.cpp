#include "picolit/sankey.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include <nlohmann/json.hpp>

#include "picolit/error.hpp"
#include "picolit/mesh.hpp"

namespace picolit {

const SankeyNode* SankeyGraph::find_node(std::string_view id) const
{
    auto it = std::find_if(nodes.begin(), nodes.end(), [&](const SankeyNode& n) { return n.id == id; });
    return it == nodes.end() ? nullptr : &*it;
}

const SankeyLink* SankeyGraph::find_link(std::string_view source, std::string_view target) const
{
    auto it = std::find_if(links.begin(), links.end(),
                           [&](const SankeyLink& l) { return l.source == source && l.target == target; });
    return it == links.end() ? nullptr : &*it;
}

std::size_t SankeyGraph::count_nodes(PicoType role) const
{
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [&](const SankeyNode& n) { return n.role == role; }));
}

std::string node_id(PicoType role, std::string_view code)
{
    std::string id(to_string(role));
    id.push_back(':');
    id += code;
    return id;
}

SankeyGraph to_sankey(std::span<const Relation> relations)
{
    std::map<std::pair<PicoType, std::string>, std::string> ends;
    for (const auto& rel : relations) {
        ends.emplace(std::pair{rel.source_role(), rel.source}, node_id(rel.source_role(), rel.source));
        ends.emplace(std::pair{rel.target_role(), rel.target}, node_id(rel.target_role(), rel.target));
    }

    SankeyGraph graph;
    graph.nodes.reserve(ends.size());
    for (const auto& [key, id] : ends) {
        graph.nodes.push_back(SankeyNode{id, key.first, key.second, concept_label(key.second)});
    }
    graph.links.reserve(relations.size());
    for (const auto& rel : relations) {
        graph.links.push_back(SankeyLink{node_id(rel.source_role(), rel.source), node_id(rel.target_role(), rel.target),
                                         rel.doc_ids.size(), rel.doc_ids});
    }
    return graph;
}

std::optional<std::vector<std::string>> relation_documents(const SankeyGraph& graph, std::string_view source,
                                                           std::string_view target)
{
    const auto* link = graph.find_link(source, target);
    if (link == nullptr) {
        return std::nullopt;
    }
    auto docs = link->doc_ids;
    std::sort(docs.begin(), docs.end());
    return docs;
}

nlohmann::json to_json(const SankeyGraph& graph)
{
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : graph.nodes) {
        nodes.push_back({{"id", n.id}, {"role", to_string(n.role)}, {"code", n.code}, {"label", n.label}});
    }
    nlohmann::json links = nlohmann::json::array();
    for (const auto& l : graph.links) {
        links.push_back({{"source", l.source}, {"target", l.target}, {"weight", l.weight}, {"doc_ids", l.doc_ids}});
    }
    return {{"nodes", std::move(nodes)}, {"links", std::move(links)}};
}

SankeyGraph sankey_from_json(const nlohmann::json& value)
{
    SankeyGraph graph;
    try {
        for (const auto& n : value.at("nodes")) {
            auto role = parse_pico_type(n.at("role").get<std::string>());
            if (!role) {
                throw ParseError("bad node role");
            }
            graph.nodes.push_back(SankeyNode{n.at("id").get<std::string>(), *role, n.at("code").get<std::string>(),
                                             n.at("label").get<std::string>()});
        }
        for (const auto& l : value.at("links")) {
            graph.links.push_back(SankeyLink{l.at("source").get<std::string>(), l.at("target").get<std::string>(),
                                             l.at("weight").get<std::size_t>(),
                                             l.at("doc_ids").get<std::vector<std::string>>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed sankey graph: ") + e.what());
    }
    return graph;
}

}  // namespace picolit
