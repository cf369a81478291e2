#pragma once

#include "semmap/layout.hpp"
#include "semmap/lexicon.hpp"
#include "semmap/matrix.hpp"
#include "semmap/semgraph.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace semmap {

// All writers emit LF line endings and locale-independent numbers so equal
// inputs give byte-identical files. Each write_* is format_* plus a file
// write that throws Error("export_io", ...) when the path is unwritable.

void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Pajek network: `*Vertices N`, `i "word" x y` (1-based, word-id order,
/// 6 decimals), `*Edges`, `i j w` sorted by (i, j).
[[nodiscard]] auto format_pajek(const SemanticGraph& g, const Embedding& e) -> std::string;
void write_pajek(const SemanticGraph& g, const Embedding& e, const std::filesystem::path& path);

struct PajekNetwork {
    SemanticGraph graph;  ///< word_id = vertex index, frequencies 0
    Embedding embedding;  ///< positions only
};

/// Reads the dialect written by format_pajek. Errors carry the line number;
/// `*Arcs` and other sections are rejected as unsupported.
[[nodiscard]] auto parse_pajek(std::string_view text) -> PajekNetwork;
[[nodiscard]] auto read_pajek(const std::filesystem::path& path) -> PajekNetwork;

struct SvgOptions {
    double size = 800.0;          ///< canvas side in px
    double margin = 40.0;
    bool size_by_units = false;   ///< radius proportional to sqrt(unit_freq)
};

/// One <line> per edge (stroke width linear in weight) followed by one
/// <circle> and one <text> label per node.
[[nodiscard]] auto format_svg(const SemanticGraph& g, const Embedding& e, const SvgOptions& options = {})
    -> std::string;
void write_svg(const SemanticGraph& g, const Embedding& e, const std::filesystem::path& path,
               const SvgOptions& options = {});

/// CSV with a header row of column labels and a leading label column.
/// Reals use 6 decimals.
[[nodiscard]] auto format_matrix_csv(const DenseMatrix<double>& m, std::span<const std::string> row_labels,
                                     std::span<const std::string> col_labels) -> std::string;
[[nodiscard]] auto format_matrix_csv(const DenseMatrix<std::int64_t>& m, std::span<const std::string> row_labels,
                                     std::span<const std::string> col_labels) -> std::string;
void write_matrix_csv(const DenseMatrix<double>& m, std::span<const std::string> row_labels,
                      std::span<const std::string> col_labels, const std::filesystem::path& path);
void write_matrix_csv(const DenseMatrix<std::int64_t>& m, std::span<const std::string> row_labels,
                      std::span<const std::string> col_labels, const std::filesystem::path& path);

/// `word<TAB>total_freq<TAB>unit_freq` under a header line, by descending
/// total frequency then word.
[[nodiscard]] auto format_freqlist(const Vocabulary& vocab) -> std::string;
void write_freqlist(const Vocabulary& vocab, const std::filesystem::path& path);

/// Reproducibility envelope written as report.json.
struct RunReport {
    struct Tool {
        std::string name;
        std::string version;
        int format_version = 0;
    };
    struct Config {
        std::string manifest;
        std::string unit;
        std::string mode;
        std::uint64_t min_freq = 0;
        std::uint64_t max_words = 0;
        double threshold = 0.0;
        std::string threshold_source;  ///< "mode-default" or "override"
        std::string measure;
        std::string matrix;
        std::string edge_length;
        std::uint64_t seed = 0;
        std::string stopwords;       ///< list origin
        std::string stopwords_path;  ///< empty for the bundled list
        double canvas_side = 0.0;
        double tolerance = 0.0;
        std::uint64_t max_outer_iterations = 0;
        std::string factors;  ///< retention rule
        std::uint64_t factors_k = 0;
        bool vertex_sizing = false;
    };
    struct Corpus {
        std::uint64_t documents = 0;
        std::uint64_t empty_documents = 0;
        std::uint64_t units = 0;
        std::uint64_t tokens = 0;
        std::uint64_t vocabulary_size = 0;
        std::uint64_t selected_words = 0;
        std::uint64_t effective_min_freq = 0;
        bool tie_break = false;
    };
    struct Graph {
        std::uint64_t nodes = 0;
        std::uint64_t edges = 0;
        std::uint64_t components = 0;
        double density = 0.0;
        std::vector<std::string> pruned_words;
    };
    struct Layout {
        double energy = 0.0;
        std::uint64_t iterations = 0;
        bool converged = false;
    };
    struct Factors {
        std::string rule;
        std::uint64_t retained = 0;
        std::vector<double> eigenvalues;
        std::vector<std::string> dropped_words;
    };

    Tool tool;
    Config config;
    Corpus corpus;
    Graph graph;
    Layout layout;
    Factors factors;
    std::vector<std::string> outputs;
    std::vector<std::string> warnings;

    friend auto operator==(const RunReport&, const RunReport&) -> bool;
};

[[nodiscard]] auto report_to_json(const RunReport& r) -> nlohmann::json;
[[nodiscard]] auto report_from_json(const nlohmann::json& j) -> RunReport;
/// Keys in sorted order, two-space indent, trailing newline.
[[nodiscard]] auto format_report(const RunReport& r) -> std::string;
void write_report(const RunReport& r, const std::filesystem::path& path);
[[nodiscard]] auto read_report_json(const std::filesystem::path& path) -> nlohmann::json;

}  // namespace semmap
