#include "semmap/corpus_io.hpp"
#include "semmap/utf8.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

namespace semmap {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kModule = "corpus_io";

auto is_space(char c) -> bool
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

auto trim(std::string_view s) -> std::string_view
{
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

auto split_tabs(std::string_view line) -> std::vector<std::string_view>
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
        if (tab == std::string_view::npos) {
            return out;
        }
        start = tab + 1;
    }
}

auto read_file(const fs::path& path) -> std::optional<std::string>
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) {
        return std::nullopt;
    }
    return data;
}

auto strip_cr(std::string_view s) -> std::string
{
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\r' && i + 1 < s.size() && s[i + 1] == '\n') {
            continue;
        }
        out.push_back(s[i] == '\r' ? '\n' : s[i]);
    }
    return out;
}

// Abbreviations that end in a period without ending a sentence. Compared
// case-insensitively against the whitespace-delimited word.
constexpr std::string_view kAbbreviations[] = {
    std::string_view{"e.g."}, "i.e.", "dr.", "mr.", "mrs.", "ms.", "prof.", "st.", "jr.",
    "sr.",                    "u.s.", "u.k.", "vs.", "no.", "fig.", "inc.", "ltd.", "co.",
    "cf.",                    "al.",
};

auto is_abbreviation(std::string_view word) -> bool
{
    std::string lower(word);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    // Leading brackets or quotes do not change the abbreviation.
    const auto first = lower.find_first_not_of("([\"'");
    if (first == std::string::npos) {
        return false;
    }
    return std::find(std::begin(kAbbreviations), std::end(kAbbreviations),
                     std::string_view(lower).substr(first)) != std::end(kAbbreviations);
}

auto push_trimmed(std::vector<std::string>& out, std::string_view s)
{
    const auto t = trim(s);
    if (!t.empty()) {
        out.emplace_back(t);
    }
}

}  // namespace

auto to_string(Media m) -> std::string_view
{
    return m == Media::html ? "html" : "plain";
}

auto to_string(Granularity g) -> std::string_view
{
    switch (g) {
    case Granularity::document: return "document";
    case Granularity::paragraph: return "paragraph";
    case Granularity::sentence: return "sentence";
    case Granularity::title: return "title";
    }
    return "document";
}

auto parse_media(std::string_view s) -> Media
{
    if (s == "html") {
        return Media::html;
    }
    if (s == "plain") {
        return Media::plain;
    }
    throw Error(std::string(kModule), fmt::format("unknown media hint '{}' (expected html or plain)", s));
}

auto parse_granularity(std::string_view s) -> Granularity
{
    for (const auto g : {Granularity::document, Granularity::paragraph, Granularity::sentence,
                         Granularity::title}) {
        if (to_string(g) == s) {
            return g;
        }
    }
    throw Error(std::string(kModule),
                fmt::format("unknown unit granularity '{}' (expected document, paragraph, sentence or title)", s));
}

auto load_corpus(const fs::path& manifest, Diagnostics& diag) -> std::vector<SourceDocument>
{
    const auto text = read_file(manifest);
    if (!text) {
        throw Error(std::string(kModule), fmt::format("cannot read manifest {}", manifest.string()));
    }
    const auto base = manifest.parent_path();
    std::vector<SourceDocument> docs;
    std::map<fs::path, std::size_t> seen;  // canonical path -> line number

    std::istringstream lines(strip_cr(*text));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (trim(line).empty() || line.front() == '#') {
            continue;
        }
        const auto fields = split_tabs(line);
        if (fields.size() < 2 || fields.size() > 3 || trim(fields[0]).empty()) {
            throw Error(std::string(kModule),
                        fmt::format("{}:{}: expected path<TAB>media<TAB>label", manifest.string(), line_no));
        }
        SourceDocument doc;
        doc.doc_id = docs.size();
        doc.path = fs::path(std::string(trim(fields[0])));
        if (doc.path.is_relative()) {
            doc.path = base / doc.path;
        }
        try {
            doc.media = parse_media(trim(fields[1]));
        } catch (const Error& e) {
            throw Error(std::string(kModule), fmt::format("{}:{}: {}", manifest.string(), line_no, e.what()));
        }
        doc.label = fields.size() == 3 ? std::string(trim(fields[2])) : std::string{};

        auto raw = read_file(doc.path);
        if (!raw) {
            throw Error(std::string(kModule),
                        fmt::format("{}:{}: cannot read document {}", manifest.string(), line_no, doc.path.string()));
        }
        if (raw->empty()) {
            throw Error(std::string(kModule),
                        fmt::format("{}:{}: document {} is empty", manifest.string(), line_no, doc.path.string()));
        }
        const auto canonical = fs::weakly_canonical(doc.path);
        if (const auto it = seen.find(canonical); it != seen.end()) {
            throw Error(std::string(kModule), fmt::format("{}:{}: duplicate path {} (first listed on line {})",
                                                          manifest.string(), line_no, doc.path.string(), it->second));
        }
        seen.emplace(canonical, line_no);
        doc.raw = std::move(*raw);
        docs.push_back(std::move(doc));
    }
    if (docs.empty()) {
        diag.warn(kModule, fmt::format("manifest {} lists no documents", manifest.string()));
    }
    return docs;
}

auto extract_text(const SourceDocument& doc, Diagnostics& diag) -> std::optional<CleanDocument>
{
    auto decoded = utf8::decode_lossy(doc.raw);
    if (decoded.replacements > 0) {
        diag.warn(kModule, fmt::format("document {} ({}): {} invalid UTF-8 byte(s) replaced", doc.doc_id,
                                       doc.path.string(), decoded.replacements));
    }
    CleanDocument clean;
    clean.doc_id = doc.doc_id;
    if (doc.media == Media::html) {
        auto html = extract_html(decoded.text);
        clean.title = std::move(html.title);
        clean.body = std::move(html.body);
    } else {
        const auto text = strip_cr(decoded.text);
        clean.body = std::string(trim(text));
        clean.title = std::string(trim(std::string_view(clean.body).substr(0, clean.body.find('\n'))));
    }
    if (clean.body.empty()) {
        diag.warn(kModule, fmt::format("document {} ({}) has no body text", doc.doc_id, doc.path.string()));
        return std::nullopt;
    }
    return clean;
}

auto split_paragraphs(std::string_view body) -> std::vector<std::string>
{
    std::vector<std::string> out;
    std::size_t para_start = 0;
    std::size_t pos = 0;
    bool in_para = false;
    while (pos <= body.size()) {
        const auto nl = body.find('\n', pos);
        const auto end = nl == std::string_view::npos ? body.size() : nl;
        const bool blank = trim(body.substr(pos, end - pos)).empty();
        if (blank && in_para) {
            push_trimmed(out, body.substr(para_start, pos - para_start));
            in_para = false;
        } else if (!blank && !in_para) {
            para_start = pos;
            in_para = true;
        }
        if (nl == std::string_view::npos) {
            break;
        }
        pos = nl + 1;
    }
    if (in_para) {
        push_trimmed(out, body.substr(para_start));
    }
    return out;
}

auto split_sentences(std::string_view paragraph) -> std::vector<std::string>
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < paragraph.size(); ++i) {
        const char c = paragraph[i];
        if (c != '.' && c != '!' && c != '?') {
            continue;
        }
        std::size_t j = i + 1;
        while (j < paragraph.size() && is_space(paragraph[j])) {
            ++j;
        }
        if (j == i + 1 || j >= paragraph.size() ||
            std::isupper(static_cast<unsigned char>(paragraph[j])) == 0) {
            continue;
        }
        if (c == '.') {
            std::size_t w = i;
            while (w > start && !is_space(paragraph[w - 1])) {
                --w;
            }
            if (is_abbreviation(paragraph.substr(w, i + 1 - w))) {
                continue;
            }
        }
        push_trimmed(out, paragraph.substr(start, i + 1 - start));
        start = j;
        i = j - 1;
    }
    push_trimmed(out, paragraph.substr(start));
    return out;
}

auto segment(const CleanDocument& doc, Granularity granularity, Diagnostics& diag) -> std::vector<TextUnit>
{
    std::vector<std::string> pieces;
    switch (granularity) {
    case Granularity::document:
        push_trimmed(pieces, doc.body);
        break;
    case Granularity::paragraph:
        pieces = split_paragraphs(doc.body);
        break;
    case Granularity::sentence:
        for (const auto& p : split_paragraphs(doc.body)) {
            auto s = split_sentences(p);
            pieces.insert(pieces.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
        }
        break;
    case Granularity::title:
        push_trimmed(pieces, doc.title);
        if (pieces.empty()) {
            diag.warn(kModule, fmt::format("document {} has no title; no title unit emitted", doc.doc_id));
        }
        break;
    }
    std::vector<TextUnit> units;
    units.reserve(pieces.size());
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        units.push_back(TextUnit{k, doc.doc_id, granularity, k, std::move(pieces[k])});
    }
    return units;
}

auto prepare_units(const std::vector<SourceDocument>& docs, Granularity granularity, Diagnostics& diag)
    -> PreparedCorpus
{
    const auto n = static_cast<std::ptrdiff_t>(docs.size());
    std::vector<std::optional<CleanDocument>> clean(docs.size());
    std::vector<std::vector<TextUnit>> per_doc(docs.size());
    std::vector<Diagnostics> local(docs.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        clean[k] = extract_text(docs[k], local[k]);
        if (clean[k]) {
            per_doc[k] = segment(*clean[k], granularity, local[k]);
        }
    }

    PreparedCorpus out;
    for (std::size_t k = 0; k < docs.size(); ++k) {
        diag.append(local[k]);
        if (!clean[k]) {
            out.empty_documents.push_back(docs[k].doc_id);
            continue;
        }
        out.documents.push_back(std::move(*clean[k]));
        for (auto& u : per_doc[k]) {
            u.unit_id = out.units.size();
            out.units.push_back(std::move(u));
        }
    }
    return out;
}

}  // namespace semmap
