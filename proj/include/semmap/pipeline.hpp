#pragma once

#include "semmap/corpus_io.hpp"
#include "semmap/export_io.hpp"
#include "semmap/layout.hpp"
#include "semmap/semgraph.hpp"
#include "semmap/vsm.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace semmap {

struct PipelineConfig {
    std::filesystem::path manifest;
    Granularity unit = Granularity::paragraph;
    DiscourseMode mode = DiscourseMode::elaborate;
    std::uint64_t min_freq = 2;
    std::size_t max_words = 100;
    std::optional<double> threshold;  ///< overrides the mode default
    Measure measure = Measure::cosine;
    MatrixMode matrix = MatrixMode::counts;
    LayoutConfig layout;
    std::optional<std::filesystem::path> stopwords;  ///< bundled list when unset
    std::filesystem::path out = "semmap-out";
    std::size_t factors = 0;  ///< 0 keeps eigenvalues > 1, otherwise a fixed count
    bool vertex_sizing = false;
    int threads = 0;          ///< 0 leaves the OpenMP default; never echoed

    /// Throws Error("cli", ...) on out-of-range values.
    void validate() const;
};

struct PipelineResult {
    RunReport report;
    std::vector<std::filesystem::path> outputs;
};

/// Runs corpus -> words -> matrices -> graph -> layout -> factors and writes
/// every artifact plus report.json into config.out (created if missing).
[[nodiscard]] auto run_pipeline(const PipelineConfig& config) -> PipelineResult;

/// Side-by-side table of graph and selection stats for two report.json
/// documents. Fields missing from either side print as n/a.
[[nodiscard]] auto compare_runs(const nlohmann::json& a, const nlohmann::json& b) -> std::string;

}  // namespace semmap
