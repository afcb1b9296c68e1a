#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace picolit {

struct TokenizerOptions {
    bool remove_stopwords = false;
};

/// A token together with its byte range [begin, end) in the source text.
struct TokenSpan {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Lowercases and splits on any non-alphanumeric byte. Bytes >= 0x80 are kept
/// as token characters so multi-byte UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& opts = {});

/// Same splitting rule as tokenize(), keeping offsets. Never removes stopwords.
std::vector<TokenSpan> tokenize_with_offsets(std::string_view text);

bool is_stopword(std::string_view token);

}  // namespace picolit
