#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "picolit/annotations.hpp"
#include "picolit/relations.hpp"

namespace picolit {

struct SankeyNode {
    std::string id;  // "<role>:<code>", e.g. "P:Z01"
    PicoType role = PicoType::P;
    std::string code;
    std::string label;

    friend bool operator==(const SankeyNode&, const SankeyNode&) = default;
};

/// weight is always doc_ids.size().
struct SankeyLink {
    std::string source;
    std::string target;
    std::size_t weight = 0;
    std::vector<std::string> doc_ids;

    friend bool operator==(const SankeyLink&, const SankeyLink&) = default;
};

struct SankeyGraph {
    std::vector<SankeyNode> nodes;  // sorted by (role, code)
    std::vector<SankeyLink> links;

    const SankeyNode* find_node(std::string_view id) const;
    const SankeyLink* find_link(std::string_view source, std::string_view target) const;
    std::size_t count_nodes(PicoType role) const;

    friend bool operator==(const SankeyGraph&, const SankeyGraph&) = default;
};

std::string node_id(PicoType role, std::string_view code);

/// One node per (role, code) at either end of a relation, one link per relation.
SankeyGraph to_sankey(std::span<const Relation> relations);

/// Documents carried by the source -> target link, in doc_id order.
std::optional<std::vector<std::string>> relation_documents(const SankeyGraph& graph, std::string_view source,
                                                           std::string_view target);

/// {nodes:[{id,role,code,label}], links:[{source,target,weight,doc_ids}]}
nlohmann::json to_json(const SankeyGraph& graph);
SankeyGraph sankey_from_json(const nlohmann::json& value);

}  // namespace picolit
