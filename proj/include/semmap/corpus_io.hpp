#pragma once

#include "semmap/error.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semmap {

enum class Media { html, plain };
enum class Granularity { document, paragraph, sentence, title };

[[nodiscard]] auto to_string(Media m) -> std::string_view;
[[nodiscard]] auto to_string(Granularity g) -> std::string_view;
[[nodiscard]] auto parse_media(std::string_view s) -> Media;
[[nodiscard]] auto parse_granularity(std::string_view s) -> Granularity;

struct SourceDocument {
    std::size_t doc_id = 0;  ///< manifest record index, 0-based
    std::filesystem::path path;
    Media media = Media::plain;
    std::string label;
    std::string raw;
};

struct CleanDocument {
    std::size_t doc_id = 0;
    std::string title;
    std::string body;  ///< markup-free; paragraphs separated by blank lines
};

/// One case (row) of the analysis.
struct TextUnit {
    std::size_t unit_id = 0;
    std::size_t doc_id = 0;
    Granularity granularity = Granularity::document;
    std::size_t ordinal = 0;  ///< position within the parent document
    std::string text;

    friend auto operator==(const TextUnit&, const TextUnit&) -> bool = default;
};

/// Reads a tab-separated manifest (`path<TAB>media<TAB>label`, `#` comments,
/// blank lines skipped). Relative paths resolve against the manifest's
/// directory. Throws on unreadable/empty files, malformed records and
/// duplicate paths; an empty manifest yields an empty corpus and a warning.
[[nodiscard]] auto load_corpus(const std::filesystem::path& manifest, Diagnostics& diag)
    -> std::vector<SourceDocument>;

struct HtmlText {
    std::string title;
    std::string body;
};

/// Strips markup: script/style/noscript/template content and everything in
/// <head> except <title> are dropped, character references are decoded,
/// whitespace is collapsed, and block-element boundaries become paragraph
/// breaks ("\n\n") in the body.
[[nodiscard]] auto extract_html(std::string_view html) -> HtmlText;

/// Decodes the raw bytes (lossy UTF-8) and extracts title and body.
/// Returns nullopt, with a warning, when no body text remains.
[[nodiscard]] auto extract_text(const SourceDocument& doc, Diagnostics& diag)
    -> std::optional<CleanDocument>;

[[nodiscard]] auto split_paragraphs(std::string_view body) -> std::vector<std::string>;
[[nodiscard]] auto split_sentences(std::string_view paragraph) -> std::vector<std::string>;

/// Splits one document into units. `unit_id` equals the ordinal here;
/// prepare_units() renumbers ids across the corpus.
[[nodiscard]] auto segment(const CleanDocument& doc, Granularity granularity, Diagnostics& diag)
    -> std::vector<TextUnit>;

struct PreparedCorpus {
    std::vector<CleanDocument> documents;     ///< non-empty documents, manifest order
    std::vector<std::size_t> empty_documents; ///< doc_ids reported empty
    std::vector<TextUnit> units;              ///< unit_id = position in this vector
};

/// extract_text + segment over the corpus, one document per task. Output
/// order follows the manifest regardless of thread count.
[[nodiscard]] auto prepare_units(const std::vector<SourceDocument>& docs, Granularity granularity,
                                 Diagnostics& diag) -> PreparedCorpus;

}  // namespace semmap
