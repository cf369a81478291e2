#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace semmap::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

struct DecodedText {
    std::string text;             ///< valid UTF-8
    std::size_t replacements = 0; ///< invalid bytes replaced by U+FFFD
};

/// Validates `bytes` as UTF-8, replacing every byte that does not start a
/// well-formed sequence (overlong forms, surrogates and values above
/// U+10FFFF included) with U+FFFD.
[[nodiscard]] auto decode_lossy(std::string_view bytes) -> DecodedText;

/// Reads the code point starting at `pos` and advances `pos` past it.
/// Expects valid UTF-8; a malformed lead byte yields kReplacement and
/// advances by one.
[[nodiscard]] auto next(std::string_view text, std::size_t& pos) -> char32_t;

void append(std::string& out, char32_t cp);

[[nodiscard]] auto length(std::string_view text) -> std::size_t;

}  // namespace semmap::utf8
