#include "picolit/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "picolit/error.hpp"
#include "picolit/tokenizer.hpp"

namespace picolit {

namespace {

// Unit separator; never produced by the tokenizer.
constexpr char kJoin = '\x1f';

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep)) {
        parts.push_back(part);
    }
    if (!s.empty() && s.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

}  // namespace

std::vector<LexiconEntry> load_lexicon_tsv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return load_lexicon_tsv(in);
}

std::vector<LexiconEntry> load_lexicon_tsv(std::istream& in)
{
    std::vector<LexiconEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto fields = split(line, '\t');
        if (fields.size() != 3) {
            throw ParseError("expected 3 tab-separated fields, got " + std::to_string(fields.size()), line_no);
        }
        LexiconEntry entry;
        entry.phrase = fields[0];
        if (tokenize(entry.phrase).empty()) {
            throw ParseError("empty lexicon phrase", line_no);
        }
        for (const auto& tree : split(fields[1], ';')) {
            try {
                entry.tree_numbers.push_back(parse_tree_number(tree));
            } catch (const ParseError& e) {
                throw ParseError(e.what(), line_no);
            }
        }
        if (entry.tree_numbers.empty()) {
            throw ParseError("no tree numbers", line_no);
        }
        auto type = parse_pico_type(fields[2]);
        if (!type) {
            throw ParseError("PICO type must be P, I or O, got '" + fields[2] + "'", line_no);
        }
        entry.type = *type;
        entries.push_back(std::move(entry));
    }
    return entries;
}

LexiconTagger::LexiconTagger(std::vector<LexiconEntry> entries) : m_entries(std::move(entries))
{
    for (std::size_t i = 0; i < m_entries.size(); ++i) {
        auto tokens = tokenize(m_entries[i].phrase);
        if (tokens.empty()) {
            throw Error("lexicon phrase '" + m_entries[i].phrase + "' has no tokens");
        }
        std::string key;
        for (const auto& tok : tokens) {
            if (!key.empty()) {
                key.push_back(kJoin);
            }
            key += tok;
        }
        m_by_key.emplace(std::move(key), i);
        m_max_tokens = std::max(m_max_tokens, tokens.size());
    }
}

DocAnnotations LexiconTagger::tag(const Document& doc) const
{
    DocAnnotations out;
    out.doc_id = doc.doc_id;
    if (m_entries.empty()) {
        return out;
    }
    const auto tokens = tokenize_with_offsets(doc.combined_text());
    std::size_t i = 0;
    while (i < tokens.size()) {
        const std::size_t longest = std::min(m_max_tokens, tokens.size() - i);
        std::string key;
        std::vector<std::string> prefixes;
        prefixes.reserve(longest);
        for (std::size_t n = 0; n < longest; ++n) {
            if (n > 0) {
                key.push_back(kJoin);
            }
            key += tokens[i + n].text;
            prefixes.push_back(key);
        }
        std::size_t matched = 0;
        for (std::size_t n = longest; n >= 1; --n) {
            auto it = m_by_key.find(prefixes[n - 1]);
            if (it == m_by_key.end()) {
                continue;
            }
            const auto& entry = m_entries[it->second];
            const std::size_t begin = tokens[i].begin;
            const std::size_t end = tokens[i + n - 1].end;
            out.spans.push_back(PicoSpan{doc.doc_id, entry.type, begin, end});
            out.mentions.push_back(ConceptMention{doc.doc_id, begin, end, entry.phrase, entry.tree_numbers});
            matched = n;
            break;
        }
        i += matched > 0 ? matched : 1;
    }
    return out;
}

DocAnnotations lexicon_tag(const Document& doc, const std::vector<LexiconEntry>& lexicon)
{
    return LexiconTagger(lexicon).tag(doc);
}

}  // namespace picolit
