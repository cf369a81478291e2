#include "semmap/utf8.hpp"

namespace semmap::utf8 {

namespace {

auto is_continuation(unsigned char c) -> bool { return (c & 0xC0U) == 0x80U; }

// Length of the well-formed sequence starting at bytes[pos], or 0.
auto sequence_length(std::string_view bytes, std::size_t pos) -> std::size_t
{
    const auto c0 = static_cast<unsigned char>(bytes[pos]);
    const std::size_t left = bytes.size() - pos;
    auto at = [&](std::size_t k) { return static_cast<unsigned char>(bytes[pos + k]); };
    if (c0 < 0x80U) {
        return 1;
    }
    if (c0 >= 0xC2U && c0 <= 0xDFU) {
        return left >= 2 && is_continuation(at(1)) ? 2 : 0;
    }
    if (c0 >= 0xE0U && c0 <= 0xEFU) {
        if (left < 3 || !is_continuation(at(1)) || !is_continuation(at(2))) {
            return 0;
        }
        if (c0 == 0xE0U && at(1) < 0xA0U) {
            return 0;  // overlong
        }
        if (c0 == 0xEDU && at(1) >= 0xA0U) {
            return 0;  // surrogate
        }
        return 3;
    }
    if (c0 >= 0xF0U && c0 <= 0xF4U) {
        if (left < 4 || !is_continuation(at(1)) || !is_continuation(at(2)) || !is_continuation(at(3))) {
            return 0;
        }
        if (c0 == 0xF0U && at(1) < 0x90U) {
            return 0;
        }
        if (c0 == 0xF4U && at(1) >= 0x90U) {
            return 0;
        }
        return 4;
    }
    return 0;
}

}  // namespace

auto decode_lossy(std::string_view bytes) -> DecodedText
{
    DecodedText out;
    out.text.reserve(bytes.size());
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        const std::size_t n = sequence_length(bytes, pos);
        if (n == 0) {
            append(out.text, kReplacement);
            ++out.replacements;
            ++pos;
            continue;
        }
        out.text.append(bytes.substr(pos, n));
        pos += n;
    }
    return out;
}

auto next(std::string_view text, std::size_t& pos) -> char32_t
{
    const auto c0 = static_cast<unsigned char>(text[pos]);
    const std::size_t n = sequence_length(text, pos);
    if (n == 0) {
        ++pos;
        return kReplacement;
    }
    char32_t cp = 0;
    switch (n) {
    case 1: cp = c0; break;
    case 2: cp = c0 & 0x1FU; break;
    case 3: cp = c0 & 0x0FU; break;
    default: cp = c0 & 0x07U; break;
    }
    for (std::size_t k = 1; k < n; ++k) {
        cp = (cp << 6U) | (static_cast<unsigned char>(text[pos + k]) & 0x3FU);
    }
    pos += n;
    return cp;
}

void append(std::string& out, char32_t cp)
{
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0U | (cp >> 6U)));
        out.push_back(static_cast<char>(0x80U | (cp & 0x3FU)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0U | (cp >> 12U)));
        out.push_back(static_cast<char>(0x80U | ((cp >> 6U) & 0x3FU)));
        out.push_back(static_cast<char>(0x80U | (cp & 0x3FU)));
    } else {
        out.push_back(static_cast<char>(0xF0U | (cp >> 18U)));
        out.push_back(static_cast<char>(0x80U | ((cp >> 12U) & 0x3FU)));
        out.push_back(static_cast<char>(0x80U | ((cp >> 6U) & 0x3FU)));
        out.push_back(static_cast<char>(0x80U | (cp & 0x3FU)));
    }
}

auto length(std::string_view text) -> std::size_t
{
    std::size_t n = 0;
    for (const char c : text) {
        if (!is_continuation(static_cast<unsigned char>(c))) {
            ++n;
        }
    }
    return n;
}

}  // namespace semmap::utf8
