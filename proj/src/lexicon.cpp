#include "semmap/lexicon.hpp"
#include "semmap/utf8.hpp"

#include "semmap/bundled_stopwords.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

namespace semmap {

namespace {

constexpr std::string_view kModule = "lexicon";

auto is_letter(char32_t cp) -> bool
{
    if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) {
        return true;
    }
    return cp >= 0xC0 && cp <= 0xFF && cp != 0xD7 && cp != 0xF7;
}

auto to_lower(char32_t cp) -> char32_t
{
    if (cp >= U'A' && cp <= U'Z') {
        return cp + 32;
    }
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) {
        return cp + 0x20;
    }
    return cp;
}

}  // namespace

auto tokenize(std::string_view text) -> std::vector<std::string>
{
    std::vector<std::string> tokens;
    std::string current;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char32_t cp = utf8::next(text, pos);
        if (is_letter(cp)) {
            utf8::append(current, cp);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        tokens.push_back(std::move(current));
    }
    return tokens;
}

auto normalize(std::string_view token) -> std::string
{
    std::string word;
    word.reserve(token.size());
    std::size_t pos = 0;
    while (pos < token.size()) {
        utf8::append(word, to_lower(utf8::next(token, pos)));
    }
    // 's' is ASCII, so byte tests suffice for the last two characters.
    const auto n = word.size();
    if (n >= 2 && word[n - 1] == 's' && word[n - 2] != 's' && utf8::length(word) >= 4) {
        word.pop_back();
    }
    return word;
}

auto to_string(StopListOrigin o) -> std::string_view
{
    return o == StopListOrigin::bundled_uspto ? "bundled-uspto" : "user-file";
}

auto StopWordList::bundled() -> StopWordList
{
    return parse(detail::kBundledUsptoStopwords, StopListOrigin::bundled_uspto);
}

auto StopWordList::from_file(const std::filesystem::path& path) -> StopWordList
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(std::string(kModule), fmt::format("cannot read stop-word file {}", path.string()));
    }
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse(utf8::decode_lossy(text).text, StopListOrigin::user_file);
}

auto StopWordList::parse(std::string_view text, StopListOrigin origin) -> StopWordList
{
    StopWordList list;
    list.origin_ = origin;
    std::istringstream lines{std::string(text)};
    std::string line;
    while (std::getline(lines, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        // A line may hold one word; anything after it is ignored.
        const auto words = tokenize(line);
        if (!words.empty()) {
            list.entries_.insert(normalize(words.front()));
        }
    }
    return list;
}

auto StopWordList::contains(std::string_view normalized_word) const -> bool
{
    return entries_.find(normalized_word) != entries_.end();
}

auto filter_stopwords(std::vector<std::string> words, const StopWordList& list) -> std::vector<std::string>
{
    std::erase_if(words, [&](const std::string& w) { return list.contains(w); });
    return words;
}

auto analyze_text(std::string_view text, const StopWordList& list) -> std::vector<std::string>
{
    auto tokens = tokenize(text);
    for (auto& t : tokens) {
        t = normalize(t);
    }
    return filter_stopwords(std::move(tokens), list);
}

auto Vocabulary::from_counts(const std::unordered_map<std::string, Count>& counts) -> Vocabulary
{
    Vocabulary v;
    v.entries_.reserve(counts.size());
    for (const auto& [word, c] : counts) {
        v.entries_.push_back(WordEntry{0, word, c.total, c.units});
        v.token_count_ += c.total;
    }
    std::sort(v.entries_.begin(), v.entries_.end(), [](const WordEntry& a, const WordEntry& b) {
        return a.total_freq != b.total_freq ? a.total_freq > b.total_freq : a.surface < b.surface;
    });
    v.index_.reserve(v.entries_.size());
    for (std::size_t i = 0; i < v.entries_.size(); ++i) {
        v.entries_[i].word_id = i;
        v.index_.emplace(v.entries_[i].surface, i);
    }
    return v;
}

auto Vocabulary::find(std::string_view surface) const -> std::optional<std::size_t>
{
    const auto it = index_.find(std::string(surface));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

auto build_vocabulary(std::span<const TextUnit> units, const StopWordList& list, Diagnostics& diag) -> Vocabulary
{
    using Local = std::unordered_map<std::string, std::uint64_t>;
    std::vector<Local> per_unit(units.size());
    const auto n = static_cast<std::ptrdiff_t>(units.size());

#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto& local = per_unit[static_cast<std::size_t>(i)];
        for (auto& w : analyze_text(units[static_cast<std::size_t>(i)].text, list)) {
            ++local[std::move(w)];
        }
    }

    // Integer sums commute, so merge order cannot change the result.
    std::unordered_map<std::string, Vocabulary::Count> counts;
    for (const auto& local : per_unit) {
        for (const auto& [word, k] : local) {
            auto& c = counts[word];
            c.total += k;
            c.units += 1;
        }
    }
    auto vocab = Vocabulary::from_counts(counts);
    if (vocab.empty()) {
        diag.warn(kModule, "no words left after stop-word filtering; vocabulary is empty");
    }
    return vocab;
}

auto select_words(const Vocabulary& vocab, std::uint64_t min_freq, std::size_t max_words, Diagnostics& diag)
    -> WordSelection
{
    if (min_freq < 1 || max_words < 1) {
        throw Error(std::string(kModule), "min_freq and max_words must both be at least 1");
    }
    WordSelection sel;
    sel.requested_min_freq = min_freq;
    sel.min_freq = min_freq;
    sel.max_words = max_words;

    const auto entries = vocab.entries();
    // Entries are sorted by descending frequency: count_at(t) is a prefix length.
    auto count_at = [&](std::uint64_t t) {
        return static_cast<std::size_t>(
            std::partition_point(entries.begin(), entries.end(),
                                 [t](const WordEntry& e) { return e.total_freq >= t; }) -
            entries.begin());
    };

    if (entries.empty() || entries.front().total_freq < min_freq) {
        diag.warn(kModule, fmt::format("no word occurs at least {} times; selection is empty", min_freq));
        return sel;
    }

    std::size_t take = count_at(min_freq);
    if (take > max_words) {
        // Distinct frequencies >= min_freq, ascending; count changes only just above each.
        std::vector<std::uint64_t> tiers;
        for (std::size_t i = take; i-- > 0;) {
            if (tiers.empty() || tiers.back() != entries[i].total_freq) {
                tiers.push_back(entries[i].total_freq);
            }
        }
        bool found = false;
        for (std::size_t k = 0; k + 1 < tiers.size(); ++k) {
            const std::uint64_t t = tiers[k] + 1;
            if (count_at(t) <= max_words) {
                sel.min_freq = t;
                take = count_at(t);
                found = true;
                break;
            }
        }
        if (!found) {
            sel.min_freq = tiers.back();
            sel.tie_break = true;
            diag.warn(kModule, fmt::format("{} words share the top frequency {}; keeping the lexicographically "
                                           "first {}",
                                           count_at(tiers.back()), tiers.back(), max_words));
            take = max_words;
        }
    }
    sel.selected.resize(take);
    for (std::size_t i = 0; i < take; ++i) {
        sel.selected[i] = entries[i].word_id;
    }
    return sel;
}

}  // namespace semmap
