#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace expedition {

/// One token with its byte range in the source text.
struct Token {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Lowercase ASCII, split on anything that is not [A-Za-z0-9], drop empties.
// Bytes >= 0x80 are kept inside tokens so UTF-8 words stay whole.
// Shared by indexing, query parsing and snippet windows.
std::vector<Token> tokenize_with_offsets(std::string_view text);
std::vector<std::string> tokenize(std::string_view text);

inline bool is_token_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

std::string to_lower_ascii(std::string_view text);

}  // namespace expedition
