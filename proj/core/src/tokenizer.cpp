#include "picolit/tokenizer.hpp"

#include <algorithm>
#include <array>

namespace picolit {

namespace {

constexpr bool is_token_byte(unsigned char c)
{
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

constexpr char fold(unsigned char c)
{
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

// Sorted; Lucene's classic English stop set plus a few question words.
constexpr std::array<std::string_view, 44> kStopwords = {
    "a", "an", "and", "are", "as", "at", "be", "but", "by",
    "can", "do", "does", "for", "from", "has", "have", "how", "if",
    "in", "into", "is", "it", "no", "not", "of", "on", "or",
    "such", "that", "the", "their", "then", "there", "these", "they", "this",
    "to", "was", "what", "which", "who", "why", "will", "with",
};

static_assert(std::is_sorted(kStopwords.begin(), kStopwords.end()));

template <typename Emit>
void scan(std::string_view text, Emit&& emit)
{
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !is_token_byte(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        std::size_t begin = i;
        while (i < text.size() && is_token_byte(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        if (i > begin) {
            emit(begin, i);
        }
    }
}

std::string folded(std::string_view text, std::size_t begin, std::size_t end)
{
    std::string out(end - begin, '\0');
    std::transform(text.begin() + static_cast<std::ptrdiff_t>(begin),
                   text.begin() + static_cast<std::ptrdiff_t>(end), out.begin(),
                   [](char c) { return fold(static_cast<unsigned char>(c)); });
    return out;
}

}  // namespace

bool is_stopword(std::string_view token)
{
    return std::binary_search(kStopwords.begin(), kStopwords.end(), token);
}

std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& opts)
{
    std::vector<std::string> tokens;
    scan(text, [&](std::size_t begin, std::size_t end) {
        auto tok = folded(text, begin, end);
        if (opts.remove_stopwords && is_stopword(tok)) {
            return;
        }
        tokens.push_back(std::move(tok));
    });
    return tokens;
}

std::vector<TokenSpan> tokenize_with_offsets(std::string_view text)
{
    std::vector<TokenSpan> tokens;
    scan(text, [&](std::size_t begin, std::size_t end) {
        tokens.push_back(TokenSpan{folded(text, begin, end), begin, end});
    });
    return tokens;
}

}  // namespace picolit
