#include "semmap/pipeline.hpp"
#include "semmap/version.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>

int main(int argc, char** argv)
{
    using namespace semmap;

    CLI::App app{"Semantic maps of words from a document corpus"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    PipelineConfig cfg;
    std::optional<double> threshold;
    std::string stopwords;
    auto* run = app.add_subcommand("run", "Run the full pipeline and write all artifacts");
    run->set_config("--config", "", "Flat key=value file with the same keys as the flags");
    run->add_option("--manifest", cfg.manifest, "Tab-separated manifest: path, media, optional label")->required();
    std::string unit = "paragraph";
    std::string mode = "elaborate";
    std::string measure = "cosine";
    std::string matrix = "counts";
    std::string edge_length = "unit";
    run->add_option("--unit", unit, "Text unit")
        ->check(CLI::IsMember({"document", "paragraph", "sentence", "title"}))
        ->capture_default_str();
    run->add_option("--mode", mode, "Discourse mode; sets the default threshold")
        ->check(CLI::IsMember({"restricted", "elaborate"}))
        ->capture_default_str();
    run->add_option("--min-freq", cfg.min_freq, "Minimum total word frequency")->capture_default_str();
    run->add_option("--max-words", cfg.max_words, "Word cap")->capture_default_str();
    run->add_option("--threshold", threshold, "Similarity threshold (overrides the mode default)");
    run->add_option("--measure", measure, "Similarity measure")
        ->check(CLI::IsMember({"cosine", "pearson"}))
        ->capture_default_str();
    run->add_option("--matrix", matrix, "Cell values of the occurrence matrix")
        ->check(CLI::IsMember({"counts", "binary"}))
        ->capture_default_str();
    run->add_option("--edge-length", edge_length, "Spring length source")
        ->check(CLI::IsMember({"unit", "inverse-weight"}))
        ->capture_default_str();
    run->add_option("--seed", cfg.layout.seed, "Layout seed")->capture_default_str();
    run->add_option("--stopwords", stopwords, "Stop-word file replacing the bundled list");
    run->add_option("--out", cfg.out, "Output directory")->capture_default_str();
    run->add_option("--factors", cfg.factors, "Factors to keep; 0 keeps eigenvalues above 1")
        ->capture_default_str();
    run->add_flag("--vertex-sizing", cfg.vertex_sizing, "Scale SVG vertices by unit frequency");
    run->add_option("--tolerance", cfg.layout.tolerance, "Layout gradient tolerance")->capture_default_str();
    run->add_option("--max-iterations", cfg.layout.max_outer_iterations, "Layout iteration cap (0 = automatic)")
        ->capture_default_str();

    std::string report_a;
    std::string report_b;
    auto* compare = app.add_subcommand("compare", "Tabulate graph statistics of two runs");
    compare->add_option("a", report_a, "report.json of the first run")->required();
    compare->add_option("b", report_b, "report.json of the second run")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            cfg.unit = parse_granularity(unit);
            cfg.mode = parse_discourse_mode(mode);
            cfg.measure = parse_measure(measure);
            cfg.matrix = parse_matrix_mode(matrix);
            cfg.layout.edge_length = parse_edge_length(edge_length);
            cfg.threshold = threshold;
            if (!stopwords.empty()) {
                cfg.stopwords = stopwords;
            }
            const auto result = run_pipeline(cfg);
            for (const auto& w : result.report.warnings) {
                fmt::print(stderr, "semmap: warning: {}\n", w);
            }
            const auto& r = result.report;
            fmt::print("{} units, {} selected words, {} nodes, {} edges, {} components -> {}\n", r.corpus.units,
                       r.corpus.selected_words, r.graph.nodes, r.graph.edges, r.graph.components,
                       cfg.out.string());
        } else {
            fmt::print("{}", compare_runs(read_report_json(report_a), read_report_json(report_b)));
        }
    } catch (const std::exception& e) {
        fmt::print(stderr, "semmap: {}\n", e.what());
        return 1;
    }
    return 0;
}
