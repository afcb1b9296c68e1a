#include "picolit/relations.hpp"

#include <algorithm>
#include <tuple>

namespace picolit {

std::string_view to_string(Scope scope) noexcept
{
    return scope == Scope::title_abstract ? "title+abstract" : "abstract-only";
}

std::optional<Scope> parse_scope(std::string_view text) noexcept
{
    // An unencoded '+' in a URL query string arrives as a space.
    if (text == "title+abstract" || text == "title abstract") {
        return Scope::title_abstract;
    }
    if (text == "abstract-only") {
        return Scope::abstract_only;
    }
    return std::nullopt;
}

std::string_view to_string(RelationKind kind) noexcept
{
    return kind == RelationKind::PI ? "P-I" : "I-O";
}

RoleConcepts doc_role_concepts(const DocAnnotations& annotations, std::size_t abstract_offset,
                               std::size_t granularity, Scope scope)
{
    RoleConcepts out;
    out.doc_id = annotations.doc_id;
    for (const auto& typed : restrict_to_pico_spans(annotations)) {
        if (scope == Scope::abstract_only && typed.mention->start < abstract_offset) {
            continue;
        }
        for (const auto& tree : typed.mention->tree_numbers) {
            out[typed.type].insert(truncate(tree, granularity));
        }
    }
    return out;
}

std::vector<Relation> relations_from_roles(std::span<const RoleConcepts> docs)
{
    using Key = std::tuple<RelationKind, std::string, std::string>;
    std::map<Key, std::set<std::string>> pairs;
    auto cross = [&](RelationKind kind, const std::set<std::string>& sources, const std::set<std::string>& targets,
                     const std::string& doc_id) {
        for (const auto& s : sources) {
            for (const auto& t : targets) {
                pairs[Key{kind, s, t}].insert(doc_id);
            }
        }
    };
    for (const auto& doc : docs) {
        cross(RelationKind::PI, doc[PicoType::P], doc[PicoType::I], doc.doc_id);
        cross(RelationKind::IO, doc[PicoType::I], doc[PicoType::O], doc.doc_id);
    }

    std::vector<Relation> out;
    out.reserve(pairs.size());
    for (auto& [key, ids] : pairs) {
        out.push_back(Relation{std::get<0>(key), std::get<1>(key), std::get<2>(key),
                               std::vector<std::string>(ids.begin(), ids.end())});
    }
    return out;
}

std::vector<Relation> build_relations(std::span<const std::string> doc_ids, const AnnotationStore& annotations,
                                      const Corpus& corpus, std::size_t granularity, Scope scope)
{
    std::set<std::string> unique(doc_ids.begin(), doc_ids.end());
    std::vector<RoleConcepts> roles;
    roles.reserve(unique.size());
    for (const auto& id : unique) {
        const auto* ann = annotations.find(id);
        const auto* doc = corpus.find(id);
        if (ann == nullptr || doc == nullptr) {
            continue;
        }
        roles.push_back(doc_role_concepts(*ann, doc->abstract_offset(), granularity, scope));
    }
    return relations_from_roles(roles);
}

std::vector<std::string> filter_hits(std::span<const ScoredHit> hits, std::span<const Relation> relations)
{
    std::set<std::string> carried;
    for (const auto& rel : relations) {
        carried.insert(rel.doc_ids.begin(), rel.doc_ids.end());
    }
    std::set<std::string> retained;
    for (const auto& hit : hits) {
        if (carried.count(hit.doc_id) != 0) {
            retained.insert(hit.doc_id);
        }
    }
    return {retained.begin(), retained.end()};
}

GroupingStats grouping_stats(std::span<const Relation> relations)
{
    GroupingStats stats;
    stats.n_relations = relations.size();
    std::size_t gt1 = 0;
    for (const auto& rel : relations) {
        const std::size_t n = rel.doc_ids.size();
        ++stats.histogram[n];
        stats.max_docs = std::max(stats.max_docs, n);
        gt1 += n > 1 ? 1 : 0;
    }
    if (!relations.empty()) {
        stats.ratio_gt1 = static_cast<double>(gt1) / static_cast<double>(relations.size());
    }
    return stats;
}

}  // namespace picolit
