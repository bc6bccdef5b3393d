#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lexidrift::utf8 {

// Decodes a UTF-8 string into code points. Invalid byte sequences decode to
// U+FFFD one byte at a time so tokenization stays total and deterministic.
std::vector<char32_t> decode(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

// Deterministic lowercase mapping over a fixed repertoire: ASCII, Latin-1,
// Latin Extended-A, Greek and Cyrillic base blocks. Everything else is
// returned unchanged.
char32_t to_lower(char32_t cp);

// Punctuation test over a fixed repertoire: ASCII punctuation/symbols,
// Latin-1 punctuation, the General Punctuation block and CJK/fullwidth
// delimiters. Everything else is treated as a word character.
bool is_punctuation(char32_t cp);

}  // namespace lexidrift::utf8
