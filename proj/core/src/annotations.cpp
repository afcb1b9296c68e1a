#include "picolit/annotations.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace picolit {

std::string_view to_string(PicoType type) noexcept
{
    switch (type) {
    case PicoType::P:
        return "P";
    case PicoType::I:
        return "I";
    case PicoType::O:
        return "O";
    }
    return "?";
}

std::optional<PicoType> parse_pico_type(std::string_view text) noexcept
{
    if (text == "P") {
        return PicoType::P;
    }
    if (text == "I" || text == "C") {
        return PicoType::I;
    }
    if (text == "O") {
        return PicoType::O;
    }
    return std::nullopt;
}

std::vector<TypedMention> restrict_to_pico_spans(const DocAnnotations& annotations)
{
    std::vector<TypedMention> kept;
    for (std::size_t m = 0; m < annotations.mentions.size(); ++m) {
        const auto& mention = annotations.mentions[m];
        for (const auto& span : annotations.spans) {
            if (span.start <= mention.start && mention.end <= span.end) {
                kept.push_back(TypedMention{span.type, m, &mention});
            }
        }
    }
    return kept;
}

std::optional<std::string> validate(const DocAnnotations& annotations, std::size_t field_length)
{
    auto bad_range = [&](std::size_t start, std::size_t end) { return !(start < end && end <= field_length); };
    for (const auto& span : annotations.spans) {
        if (bad_range(span.start, span.end)) {
            return "offset";
        }
    }
    for (const auto& mention : annotations.mentions) {
        if (bad_range(mention.start, mention.end)) {
            return "offset";
        }
        if (mention.tree_numbers.empty()) {
            return "tree_number";
        }
    }
    return std::nullopt;
}

nlohmann::json to_json(const DocAnnotations& annotations)
{
    nlohmann::json spans = nlohmann::json::array();
    for (const auto& span : annotations.spans) {
        spans.push_back({{"type", to_string(span.type)}, {"start", span.start}, {"end", span.end}});
    }
    nlohmann::json mentions = nlohmann::json::array();
    for (const auto& mention : annotations.mentions) {
        nlohmann::json trees = nlohmann::json::array();
        for (const auto& tree : mention.tree_numbers) {
            trees.push_back(tree.str());
        }
        mentions.push_back({{"start", mention.start},
                            {"end", mention.end},
                            {"label", mention.label},
                            {"tree_numbers", std::move(trees)}});
    }
    return {{"doc_id", annotations.doc_id}, {"spans", std::move(spans)}, {"mentions", std::move(mentions)}};
}

DocAnnotations annotations_from_json(const nlohmann::json& record)
{
    auto schema = [](bool ok) {
        if (!ok) {
            throw ParseError("schema");
        }
    };
    auto offset = [&](const nlohmann::json& obj, const char* key) {
        auto it = obj.find(key);
        schema(it != obj.end() && it->is_number_integer() && it->get<std::int64_t>() >= 0);
        return it->get<std::size_t>();
    };

    schema(record.is_object());
    auto id = record.find("doc_id");
    schema(id != record.end() && id->is_string());

    DocAnnotations out;
    out.doc_id = id->get<std::string>();

    auto spans = record.find("spans");
    schema(spans == record.end() || spans->is_array());
    if (spans != record.end()) {
        for (const auto& s : *spans) {
            schema(s.is_object());
            auto type_it = s.find("type");
            schema(type_it != s.end() && type_it->is_string());
            auto type = parse_pico_type(type_it->get<std::string>());
            schema(type.has_value());
            out.spans.push_back(PicoSpan{out.doc_id, *type, offset(s, "start"), offset(s, "end")});
        }
    }

    auto mentions = record.find("mentions");
    schema(mentions == record.end() || mentions->is_array());
    if (mentions != record.end()) {
        for (const auto& m : *mentions) {
            schema(m.is_object());
            ConceptMention mention;
            mention.doc_id = out.doc_id;
            mention.start = offset(m, "start");
            mention.end = offset(m, "end");
            if (auto label = m.find("label"); label != m.end()) {
                schema(label->is_string());
                mention.label = label->get<std::string>();
            }
            auto trees = m.find("tree_numbers");
            schema(trees != m.end() && trees->is_array());
            for (const auto& t : *trees) {
                schema(t.is_string());
                try {
                    mention.tree_numbers.push_back(parse_tree_number(t.get<std::string>()));
                } catch (const ParseError&) {
                    throw ParseError("tree_number");
                }
            }
            out.mentions.push_back(std::move(mention));
        }
    }
    return out;
}

AnnotationStats AnnotationStore::import_jsonl(const std::filesystem::path& path, const Corpus& corpus)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return import_jsonl(in, corpus);
}

AnnotationStats AnnotationStore::import_jsonl(std::istream& in, const Corpus& corpus)
{
    AnnotationStats stats;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto record = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (record.is_discarded()) {
            stats.rejected.push_back({line_no, "json"});
            continue;
        }
        DocAnnotations ann;
        try {
            ann = annotations_from_json(record);
        } catch (const ParseError& e) {
            stats.rejected.push_back({line_no, e.what()});
            continue;
        }
        const auto* doc = corpus.find(ann.doc_id);
        if (doc == nullptr) {
            stats.rejected.push_back({line_no, "unknown_doc"});
            continue;
        }
        if (auto reason = validate(ann, doc->combined_length())) {
            stats.rejected.push_back({line_no, *reason});
            continue;
        }
        if (m_docs.count(ann.doc_id) != 0) {
            stats.rejected.push_back({line_no, "duplicate"});
            continue;
        }
        ++stats.docs;
        stats.spans += ann.spans.size();
        stats.mentions += ann.mentions.size();
        auto key = ann.doc_id;
        m_docs.emplace(std::move(key), std::move(ann));
    }
    return stats;
}

void AnnotationStore::export_jsonl(const std::filesystem::path& path) const
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    export_jsonl(out);
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

void AnnotationStore::export_jsonl(std::ostream& out) const
{
    for (const auto& [id, ann] : m_docs) {
        out << to_json(ann).dump() << '\n';
    }
}

void AnnotationStore::put(DocAnnotations annotations, const Corpus& corpus)
{
    const auto* doc = corpus.find(annotations.doc_id);
    if (doc == nullptr) {
        throw Error("annotations for unknown document '" + annotations.doc_id + "'");
    }
    if (auto reason = validate(annotations, doc->combined_length())) {
        throw Error("invalid annotations for '" + annotations.doc_id + "': " + *reason);
    }
    auto key = annotations.doc_id;
    m_docs.insert_or_assign(std::move(key), std::move(annotations));
}

const DocAnnotations* AnnotationStore::find(const std::string& doc_id) const
{
    auto it = m_docs.find(doc_id);
    return it == m_docs.end() ? nullptr : &it->second;
}

}  // namespace picolit
