#include "semmap/export_io.hpp"
#include "semmap/error.hpp"

#include <fstream>

namespace semmap {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunReport::Tool, name, version, format_version)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunReport::Config, manifest, unit, mode, min_freq, max_words, threshold,
                                   threshold_source, measure, matrix, edge_length, seed, stopwords, stopwords_path,
                                   canvas_side, tolerance, max_outer_iterations, factors, factors_k, vertex_sizing)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunReport::Corpus, documents, empty_documents, units, tokens, vocabulary_size,
                                   selected_words, effective_min_freq, tie_break)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunReport::Graph, nodes, edges, components, density, pruned_words)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunReport::Layout, energy, iterations, converged)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunReport::Factors, rule, retained, eigenvalues, dropped_words)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunReport, tool, config, corpus, graph, layout, factors, outputs, warnings)

auto operator==(const RunReport& a, const RunReport& b) -> bool
{
    return report_to_json(a) == report_to_json(b);
}

auto report_to_json(const RunReport& r) -> nlohmann::json
{
    return nlohmann::json(r);
}

auto report_from_json(const nlohmann::json& j) -> RunReport
{
    try {
        return j.get<RunReport>();
    } catch (const nlohmann::json::exception& e) {
        throw Error("export_io", std::string("malformed run report: ") + e.what());
    }
}

auto format_report(const RunReport& r) -> std::string
{
    // nlohmann::json keeps object keys in a std::map, so output is key-sorted.
    return report_to_json(r).dump(2) + "\n";
}

void write_report(const RunReport& r, const std::filesystem::path& path)
{
    write_text_file(path, format_report(r));
}

auto read_report_json(const std::filesystem::path& path) -> nlohmann::json
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("export_io", "cannot read report " + path.string());
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("export_io", "cannot parse report " + path.string() + ": " + e.what());
    }
}

}  // namespace semmap
