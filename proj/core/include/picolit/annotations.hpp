#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "picolit/corpus.hpp"
#include "picolit/error.hpp"
#include "picolit/mesh.hpp"

namespace picolit {

/// Population, Intervention (comparators merged in) and Outcome.
enum class PicoType : std::uint8_t { P = 0, I = 1, O = 2 };

inline constexpr std::array<PicoType, 3> kPicoTypes = {PicoType::P, PicoType::I, PicoType::O};

std::string_view to_string(PicoType type) noexcept;
/// Accepts "P", "I", "O"; "C" (comparator) maps to I.
std::optional<PicoType> parse_pico_type(std::string_view text) noexcept;

/// Offsets are byte offsets into Document::combined_text(), half-open.
struct PicoSpan {
    std::string doc_id;
    PicoType type = PicoType::P;
    std::size_t start = 0;
    std::size_t end = 0;

    friend bool operator==(const PicoSpan&, const PicoSpan&) = default;
};

struct ConceptMention {
    std::string doc_id;
    std::size_t start = 0;
    std::size_t end = 0;
    std::string label;
    std::vector<MeshTreeNumber> tree_numbers;

    friend bool operator==(const ConceptMention&, const ConceptMention&) = default;
};

struct DocAnnotations {
    std::string doc_id;
    std::vector<PicoSpan> spans;
    std::vector<ConceptMention> mentions;

    friend bool operator==(const DocAnnotations&, const DocAnnotations&) = default;
};

/// A mention kept because it lies inside a PICO span; it takes the span's
/// type. `mention` points into the DocAnnotations passed to
/// restrict_to_pico_spans().
struct TypedMention {
    PicoType type = PicoType::P;
    std::size_t mention_index = 0;
    const ConceptMention* mention = nullptr;
};

/// Keeps each mention once per span that fully contains it
/// (span.start <= m.start && m.end <= span.end).
std::vector<TypedMention> restrict_to_pico_spans(const DocAnnotations& annotations);

/// Checks offsets and tree numbers against a combined field of
/// `field_length` bytes. Returns the rejection reason, if any.
std::optional<std::string> validate(const DocAnnotations& annotations, std::size_t field_length);

nlohmann::json to_json(const DocAnnotations& annotations);
/// Throws ParseError with a short reason ("schema", "tree_number") on bad input.
DocAnnotations annotations_from_json(const nlohmann::json& record);

struct AnnotationStats {
    std::size_t docs = 0;
    std::size_t spans = 0;
    std::size_t mentions = 0;
    std::vector<Rejection> rejected;
};

/// Per-document annotations keyed by doc_id, validated against a corpus.
class AnnotationStore {
  public:
    /// One DocAnnotations object per line. Lines for unknown documents,
    /// out-of-range offsets or repeated doc_ids are rejected with a reason.
    AnnotationStats import_jsonl(const std::filesystem::path& path, const Corpus& corpus);
    AnnotationStats import_jsonl(std::istream& in, const Corpus& corpus);

    /// Writes all annotations in doc_id order.
    void export_jsonl(const std::filesystem::path& path) const;
    void export_jsonl(std::ostream& out) const;

    /// Inserts or replaces; throws Error when validation against the corpus fails.
    void put(DocAnnotations annotations, const Corpus& corpus);

    const DocAnnotations* find(const std::string& doc_id) const;
    const std::map<std::string, DocAnnotations>& all() const noexcept { return m_docs; }
    std::size_t size() const noexcept { return m_docs.size(); }

  private:
    std::map<std::string, DocAnnotations> m_docs;
};

}  // namespace picolit
