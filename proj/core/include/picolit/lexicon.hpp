#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "picolit/annotations.hpp"
#include "picolit/corpus.hpp"
#include "picolit/mesh.hpp"

namespace picolit {

struct LexiconEntry {
    std::string phrase;
    std::vector<MeshTreeNumber> tree_numbers;
    PicoType type = PicoType::P;
};

/// Reads "phrase<TAB>tree;tree<TAB>P|I|O" lines. Blank lines and lines
/// starting with '#' are skipped; anything else malformed throws ParseError.
std::vector<LexiconEntry> load_lexicon_tsv(const std::filesystem::path& path);
std::vector<LexiconEntry> load_lexicon_tsv(std::istream& in);

/// Dictionary tagger used when no external annotations exist. Matching is
/// case-insensitive over token sequences, longest match first, scanning left
/// to right; each match yields one span and one mention over the same range.
/// When two entries share a phrase, the earlier one wins.
class LexiconTagger {
  public:
    explicit LexiconTagger(std::vector<LexiconEntry> entries);

    DocAnnotations tag(const Document& doc) const;
    const std::vector<LexiconEntry>& entries() const noexcept { return m_entries; }

  private:
    std::vector<LexiconEntry> m_entries;
    std::unordered_map<std::string, std::size_t> m_by_key;  // joined phrase tokens -> entry
    std::size_t m_max_tokens = 0;
};

DocAnnotations lexicon_tag(const Document& doc, const std::vector<LexiconEntry>& lexicon);

}  // namespace picolit
