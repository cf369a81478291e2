#pragma once

#include "semmap/corpus_io.hpp"
#include "semmap/error.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semmap {

/// Maximal runs of letters (ASCII and Latin-1 letters); every other
/// character separates tokens and is dropped.
[[nodiscard]] auto tokenize(std::string_view text) -> std::vector<std::string>;

/// Lowercases, then removes one trailing 's' when the word has at least four
/// characters and the one before the 's' is not also an 's'. Literal
/// character stripping: "butterflies" becomes "butterflie". Idempotent.
[[nodiscard]] auto normalize(std::string_view token) -> std::string;

enum class StopListOrigin { bundled_uspto, user_file };

[[nodiscard]] auto to_string(StopListOrigin o) -> std::string_view;

class StopWordList {
public:
    /// USPTO patent full-text stop list compiled in from data/.
    [[nodiscard]] static auto bundled() -> StopWordList;
    /// One word per line; '#' starts a comment line.
    [[nodiscard]] static auto from_file(const std::filesystem::path& path) -> StopWordList;
    [[nodiscard]] static auto parse(std::string_view text, StopListOrigin origin) -> StopWordList;

    [[nodiscard]] auto contains(std::string_view normalized_word) const -> bool;
    [[nodiscard]] auto origin() const noexcept -> StopListOrigin { return origin_; }
    [[nodiscard]] auto entries() const noexcept -> const std::set<std::string, std::less<>>& { return entries_; }

private:
    std::set<std::string, std::less<>> entries_;  // normalized forms
    StopListOrigin origin_ = StopListOrigin::bundled_uspto;
};

[[nodiscard]] auto filter_stopwords(std::vector<std::string> words, const StopWordList& list)
    -> std::vector<std::string>;

/// tokenize -> normalize -> filter_stopwords.
[[nodiscard]] auto analyze_text(std::string_view text, const StopWordList& list) -> std::vector<std::string>;

struct WordEntry {
    std::size_t word_id = 0;
    std::string surface;  ///< normalized form
    std::uint64_t total_freq = 0;
    std::uint64_t unit_freq = 0;

    friend auto operator==(const WordEntry&, const WordEntry&) -> bool = default;
};

/// Word inventory. Ids are dense, ordered by descending total frequency
/// with lexicographic tie-break.
class Vocabulary {
public:
    Vocabulary() = default;

    struct Count {
        std::uint64_t total = 0;
        std::uint64_t units = 0;
    };
    /// Assigns ids from raw counts.
    [[nodiscard]] static auto from_counts(const std::unordered_map<std::string, Count>& counts) -> Vocabulary;

    [[nodiscard]] auto size() const noexcept -> std::size_t { return entries_.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return entries_.empty(); }
    [[nodiscard]] auto operator[](std::size_t word_id) const -> const WordEntry& { return entries_[word_id]; }
    [[nodiscard]] auto entries() const noexcept -> std::span<const WordEntry> { return entries_; }
    [[nodiscard]] auto find(std::string_view surface) const -> std::optional<std::size_t>;
    /// Sum of total_freq: the number of post-filter tokens counted.
    [[nodiscard]] auto token_count() const noexcept -> std::uint64_t { return token_count_; }

    friend auto operator==(const Vocabulary& a, const Vocabulary& b) -> bool
    {
        return a.entries_ == b.entries_;
    }

private:
    std::vector<WordEntry> entries_;
    std::unordered_map<std::string, std::size_t> index_;
    std::uint64_t token_count_ = 0;
};

/// Counts post-filter words over all units; units are processed in
/// parallel and merged so the result does not depend on thread count.
[[nodiscard]] auto build_vocabulary(std::span<const TextUnit> units, const StopWordList& list, Diagnostics& diag)
    -> Vocabulary;

struct WordSelection {
    std::uint64_t requested_min_freq = 1;
    std::uint64_t min_freq = 1;  ///< effective threshold t
    std::size_t max_words = 100;
    std::vector<std::size_t> selected;  ///< word ids, ascending
    bool tie_break = false;  ///< cap unreachable; top tier truncated lexicographically

    [[nodiscard]] auto size() const noexcept -> std::size_t { return selected.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return selected.empty(); }
};

/// Chooses the smallest threshold t >= min_freq for which at most
/// `max_words` words have total_freq >= t, and selects those words. When
/// even the most frequent tier exceeds the cap, the lexicographically first
/// `max_words` of that tier are taken and tie_break is set.
[[nodiscard]] auto select_words(const Vocabulary& vocab, std::uint64_t min_freq, std::size_t max_words,
                                Diagnostics& diag) -> WordSelection;

}  // namespace semmap
