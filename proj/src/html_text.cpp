#include "semmap/corpus_io.hpp"
#include "semmap/utf8.hpp"

#include <algorithm>
#include <iterator>
#include <cctype>
#include <charconv>
#include <string>
#include <string_view>

namespace semmap {

namespace {

constexpr std::string_view kBlockElements[] = {
    std::string_view{"address"}, "article", "aside",  "blockquote", "body",    "br",     "dd",
    "div",                       "dl",      "dt",     "fieldset",   "figcaption", "figure", "footer",
    "form",                      "h1",      "h2",     "h3",         "h4",      "h5",     "h6",
    "header",                    "hr",      "html",   "li",         "main",    "nav",    "ol",
    "p",                         "pre",     "section", "table",     "td",      "th",     "tr",
    "ul",
};

// Elements whose content is never body text.
constexpr std::string_view kRawSkip[] = {std::string_view{"script"}, "style", "noscript", "template"};

struct NamedEntity {
    std::string_view name;
    char32_t cp;
};

constexpr NamedEntity kEntities[] = {
    NamedEntity{"amp", U'&'},      {"lt", U'<'},          {"gt", U'>'},        {"quot", U'"'},
    {"apos", U'\''},               {"nbsp", 0x00A0},      {"ndash", 0x2013},   {"mdash", 0x2014},
    {"lsquo", 0x2018},             {"rsquo", 0x2019},     {"ldquo", 0x201C},   {"rdquo", 0x201D},
    {"hellip", 0x2026},            {"copy", 0x00A9},      {"reg", 0x00AE},     {"trade", 0x2122},
    {"eacute", 0x00E9},            {"egrave", 0x00E8},    {"uuml", 0x00FC},    {"ouml", 0x00F6},
    {"auml", 0x00E4},
};

auto contains(auto const& list, std::string_view name) -> bool
{
    return std::find(std::begin(list), std::end(list), name) != std::end(list);
}

auto lower_ascii(std::string_view s) -> std::string
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

auto is_space(char c) -> bool
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Decodes character references; unknown or malformed references are kept
// verbatim.
auto decode_entities(std::string_view text) -> std::string
{
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out.push_back(text[i++]);
            continue;
        }
        const auto semi = text.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back(text[i++]);
            continue;
        }
        const auto ref = text.substr(i + 1, semi - i - 1);
        char32_t cp = 0;
        bool ok = false;
        if (ref.size() >= 2 && ref[0] == '#') {
            const bool hex = ref[1] == 'x' || ref[1] == 'X';
            const auto digits = ref.substr(hex ? 2 : 1);
            std::uint32_t value = 0;
            const auto* end = digits.data() + digits.size();
            const auto res = std::from_chars(digits.data(), end, value, hex ? 16 : 10);
            ok = !digits.empty() && res.ec == std::errc{} && res.ptr == end && value > 0 &&
                 value <= 0x10FFFF && !(value >= 0xD800 && value <= 0xDFFF);
            cp = value;
        } else {
            for (const auto& e : kEntities) {
                if (e.name == ref) {
                    cp = e.cp;
                    ok = true;
                    break;
                }
            }
        }
        if (!ok) {
            out.push_back(text[i++]);
            continue;
        }
        utf8::append(out, cp == 0x00A0 ? U' ' : cp);
        i = semi + 1;
    }
    return out;
}

auto collapse_whitespace(std::string_view text) -> std::string
{
    std::string out;
    bool pending_space = false;
    for (const char c : text) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

class HtmlScanner {
public:
    explicit HtmlScanner(std::string_view html) : html_(html) {}

    auto run() -> HtmlText
    {
        while (pos_ < html_.size()) {
            const auto lt = html_.find('<', pos_);
            text(html_.substr(pos_, lt == std::string_view::npos ? std::string_view::npos : lt - pos_));
            if (lt == std::string_view::npos) {
                break;
            }
            pos_ = lt;
            markup();
        }
        flush();
        HtmlText out;
        out.title = collapse_whitespace(decode_entities(title_));
        for (const auto& p : paragraphs_) {
            if (!out.body.empty()) {
                out.body += "\n\n";
            }
            out.body += p;
        }
        return out;
    }

private:
    void text(std::string_view chunk)
    {
        if (!in_head_) {
            current_.append(chunk);
        }
    }

    void flush()
    {
        auto p = collapse_whitespace(decode_entities(current_));
        current_.clear();
        if (!p.empty()) {
            paragraphs_.push_back(std::move(p));
        }
    }

    // Positioned at '<'.
    void markup()
    {
        if (html_.substr(pos_, 4) == "<!--") {
            const auto end = html_.find("-->", pos_ + 4);
            pos_ = end == std::string_view::npos ? html_.size() : end + 3;
            return;
        }
        std::size_t i = pos_ + 1;
        const bool closing = i < html_.size() && html_[i] == '/';
        if (closing) {
            ++i;
        }
        const std::size_t name_start = i;
        while (i < html_.size() && (std::isalnum(static_cast<unsigned char>(html_[i])) != 0)) {
            ++i;
        }
        if (i == name_start) {
            if (i < html_.size() && (html_[i] == '!' || html_[i] == '?')) {
                skip_tag(i);  // doctype or processing instruction
                return;
            }
            // A bare '<' is text.
            text(html_.substr(pos_, 1));
            ++pos_;
            return;
        }
        const auto name = lower_ascii(html_.substr(name_start, i - name_start));
        skip_tag(i);

        if (name == "head") {
            in_head_ = !closing;
            return;
        }
        if (!closing && name == "title") {
            const auto content = raw_content("title");
            if (title_.empty()) {
                title_ = content;
            }
            return;
        }
        if (!closing && contains(kRawSkip, name)) {
            (void)raw_content(name);
            return;
        }
        if (name == "body") {
            in_head_ = false;
        }
        if (contains(kBlockElements, name)) {
            flush();
        }
    }

    // Moves pos_ past the '>' that ends the tag, honoring quoted attributes.
    void skip_tag(std::size_t i)
    {
        char quote = 0;
        for (; i < html_.size(); ++i) {
            const char c = html_[i];
            if (quote != 0) {
                if (c == quote) {
                    quote = 0;
                }
            } else if (c == '"' || c == '\'') {
                quote = c;
            } else if (c == '>') {
                pos_ = i + 1;
                return;
            }
        }
        pos_ = html_.size();
    }

    // Returns the raw text up to the matching close tag and moves past it.
    auto raw_content(std::string_view name) -> std::string
    {
        const std::string needle = "</" + std::string(name);
        std::size_t search = pos_;
        while (true) {
            const auto lt = html_.find("</", search);
            if (lt == std::string_view::npos) {
                std::string rest(html_.substr(pos_));
                pos_ = html_.size();
                return rest;
            }
            if (lower_ascii(html_.substr(lt, needle.size())) == needle) {
                std::string content(html_.substr(pos_, lt - pos_));
                skip_tag(lt + needle.size());
                return content;
            }
            search = lt + 2;
        }
    }

    std::string_view html_;
    std::size_t pos_ = 0;
    bool in_head_ = false;
    std::string title_;
    std::string current_;
    std::vector<std::string> paragraphs_;
};

}  // namespace

auto extract_html(std::string_view html) -> HtmlText { return HtmlScanner(html).run(); }

}  // namespace semmap
