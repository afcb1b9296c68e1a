#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "picolit/annotations.hpp"
#include "picolit/corpus.hpp"
#include "picolit/index.hpp"
#include "picolit/mesh.hpp"

namespace picolit {

/// Which part of the combined field may contribute concepts.
enum class Scope { title_abstract, abstract_only };

std::string_view to_string(Scope scope) noexcept;
/// Accepts "title+abstract" and "abstract-only".
std::optional<Scope> parse_scope(std::string_view text) noexcept;

/// Truncated concept codes per PICO role for one document.
struct RoleConcepts {
    std::string doc_id;
    std::array<std::set<std::string>, 3> codes;

    std::set<std::string>& operator[](PicoType role) { return codes[static_cast<std::size_t>(role)]; }
    const std::set<std::string>& operator[](PicoType role) const { return codes[static_cast<std::size_t>(role)]; }
};

/// Restricts mentions to PICO spans, drops mentions outside `scope`, and
/// truncates every tree number at `granularity`, deduplicating per role.
/// `abstract_offset` is where the abstract begins in the combined field.
RoleConcepts doc_role_concepts(const DocAnnotations& annotations, std::size_t abstract_offset,
                               std::size_t granularity = kDefaultGranularity,
                               Scope scope = Scope::title_abstract);

enum class RelationKind { PI, IO };

std::string_view to_string(RelationKind kind) noexcept;

/// A co-occurring concept pair and the documents that attest it.
/// doc_ids is sorted and duplicate-free.
struct Relation {
    RelationKind kind = RelationKind::PI;
    std::string source;
    std::string target;
    std::vector<std::string> doc_ids;

    PicoType source_role() const noexcept { return kind == RelationKind::PI ? PicoType::P : PicoType::I; }
    PicoType target_role() const noexcept { return kind == RelationKind::PI ? PicoType::I : PicoType::O; }

    friend bool operator==(const Relation&, const Relation&) = default;
};

/// Cross products P x I and I x O per document, aggregated over documents.
/// Output is sorted by (kind, source, target).
std::vector<Relation> relations_from_roles(std::span<const RoleConcepts> docs);

/// Relations over the given documents. Documents without annotations, or
/// unknown to the corpus, contribute nothing. Input order does not matter.
std::vector<Relation> build_relations(std::span<const std::string> doc_ids, const AnnotationStore& annotations,
                                      const Corpus& corpus, std::size_t granularity = kDefaultGranularity,
                                      Scope scope = Scope::title_abstract);

/// Hits whose document carries at least one relation, in doc_id order.
std::vector<std::string> filter_hits(std::span<const ScoredHit> hits, std::span<const Relation> relations);

struct GroupingStats {
    std::size_t n_relations = 0;
    /// relation size (|doc_ids|) -> number of relations of that size
    std::map<std::size_t, std::size_t> histogram;
    /// Share of relations carrying more than one document; empty when there are none.
    std::optional<double> ratio_gt1;
    std::size_t max_docs = 0;
};

GroupingStats grouping_stats(std::span<const Relation> relations);

}  // namespace picolit
