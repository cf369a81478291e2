#include "semmap/pipeline.hpp"
#include "semmap/factors.hpp"
#include "semmap/lexicon.hpp"
#include "semmap/version.hpp"

#include <fmt/format.h>
#include <omp.h>

#include <algorithm>
#include <cmath>

namespace semmap {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kModule = "cli";

auto fail(const std::string& message) -> Error { return Error(std::string(kModule), message); }

auto unit_labels(const OccurrenceMatrix& m, std::span<const TextUnit> units) -> std::vector<std::string>
{
    std::vector<std::string> out;
    out.reserve(m.unit_ids.size());
    for (const auto id : m.unit_ids) {
        const auto& u = units[id];
        out.push_back(fmt::format("d{}.{}", u.doc_id, u.ordinal));
    }
    return out;
}

struct FactorOutput {
    FactorModel model;
    std::vector<std::string> words;
    std::vector<std::string> dropped;
};

auto run_factors(const OccurrenceMatrix& occ, std::size_t requested_k, Diagnostics& diag) -> FactorOutput
{
    FactorOutput out;
    const auto constant = constant_columns(occ);
    for (const auto c : constant) {
        out.dropped.push_back(occ.words[c]);
        diag.warn("factors", fmt::format("word '{}' has a constant column and is left out of the factor analysis",
                                         occ.words[c]));
    }
    const auto kept = drop_columns(occ, constant);
    out.words = kept.words;
    if (kept.cols() < 2) {
        diag.warn("factors", "fewer than two variable columns; factor analysis skipped");
        out.model.rule = requested_k == 0 ? RetentionRule::kaiser : RetentionRule::fixed;
        return out;
    }
    auto retention = Retention::kaiser();
    if (requested_k > 0) {
        auto k = requested_k;
        if (k > kept.cols()) {
            diag.warn("factors", fmt::format("requested {} factors but only {} words remain; keeping {}", k,
                                             kept.cols(), kept.cols()));
            k = kept.cols();
        }
        retention = Retention::fixed(k);
    }
    out.model = factor_analysis(correlation_matrix(kept), retention);
    return out;
}

auto pointer(std::string_view path) -> nlohmann::json::json_pointer
{
    return nlohmann::json::json_pointer(std::string(path));
}

}  // namespace

void PipelineConfig::validate() const
{
    if (manifest.empty()) {
        throw fail("a manifest path is required");
    }
    if (min_freq < 1) {
        throw fail("min_freq must be at least 1");
    }
    if (max_words < 1) {
        throw fail("max_words must be at least 1");
    }
    if (threshold) {
        const double lo = measure == Measure::cosine ? 0.0 : -1.0;
        if (!std::isfinite(*threshold) || *threshold < lo || *threshold > 1.0) {
            throw fail(fmt::format("threshold {} outside [{}, 1] for {}", *threshold, lo, to_string(measure)));
        }
    }
    if (!(layout.canvas_side > 0.0) || !std::isfinite(layout.canvas_side)) {
        throw fail("canvas side must be positive");
    }
    if (!(layout.tolerance > 0.0) || !std::isfinite(layout.tolerance)) {
        throw fail("layout tolerance must be positive");
    }
    if (out.empty()) {
        throw fail("an output directory is required");
    }
    if (threads < 0) {
        throw fail("thread count must be non-negative");
    }
}

auto run_pipeline(const PipelineConfig& config) -> PipelineResult
{
    config.validate();
    if (config.threads > 0) {
        omp_set_num_threads(config.threads);
    }
    Diagnostics diag;

    const auto docs = load_corpus(config.manifest, diag);
    const auto prepared = prepare_units(docs, config.unit, diag);
    const auto stoplist = config.stopwords ? StopWordList::from_file(*config.stopwords) : StopWordList::bundled();
    const auto vocab = build_vocabulary(prepared.units, stoplist, diag);
    const auto selection = select_words(vocab, config.min_freq, config.max_words, diag);
    const auto occ = build_occurrence_matrix(prepared.units, vocab, selection, config.matrix, diag);
    const auto cooc = cooccurrence(occ);
    const auto sim = similarity(occ, config.measure);

    const double threshold = resolve_threshold(config.mode, config.threshold);
    const auto full_graph = build_graph(sim, vocab, threshold);
    const auto pruned = prune_isolated(full_graph, diag);
    if (pruned.graph.nodes.empty()) {
        throw Error("semgraph", fmt::format("no word pair reaches the threshold {}; nothing to map", threshold));
    }
    const auto embedding = kk_layout(pruned.graph, config.layout);
    if (!embedding.converged) {
        diag.warn("layout", "spring layout stopped at the iteration cap before reaching the tolerance");
    }
    const auto factors = run_factors(occ, config.factors, diag);

    std::error_code ec;
    fs::create_directories(config.out, ec);
    if (ec) {
        throw Error("export_io", fmt::format("cannot create {}: {}", config.out.string(), ec.message()));
    }

    const std::string sim_name = fmt::format("{}.csv", to_string(config.measure));
    std::vector<std::string> outputs = {"map.net",   "map.svg",      sim_name,       "cooc.csv",
                                        "freq.tsv",  "loadings.csv", "occurrence.csv", "report.json"};
    std::sort(outputs.begin(), outputs.end());

    write_pajek(pruned.graph, embedding, config.out / "map.net");
    write_svg(pruned.graph, embedding, config.out / "map.svg", SvgOptions{.size_by_units = config.vertex_sizing});
    write_matrix_csv(sim.values, sim.words, sim.words, config.out / sim_name);
    write_matrix_csv(cooc.counts, cooc.words, cooc.words, config.out / "cooc.csv");
    write_matrix_csv(occ.cells.to_dense(), unit_labels(occ, prepared.units), occ.words, config.out / "occurrence.csv");
    write_freqlist(vocab, config.out / "freq.tsv");
    {
        std::vector<std::string> factor_labels;
        for (std::size_t f = 0; f < factors.model.k; ++f) {
            factor_labels.push_back(fmt::format("f{}", f + 1));
        }
        const auto& loadings = factors.model.k > 0 ? factors.model.loadings
                                                   : DenseMatrix<double>(factors.words.size(), 0);
        write_matrix_csv(loadings, factors.words, factor_labels, config.out / "loadings.csv");
    }

    RunReport r;
    r.tool = {kToolName, kVersion, kFormatVersion};
    auto& c = r.config;
    c.manifest = config.manifest.generic_string();
    c.unit = to_string(config.unit);
    c.mode = to_string(config.mode);
    c.min_freq = config.min_freq;
    c.max_words = config.max_words;
    c.threshold = threshold;
    c.threshold_source = config.threshold ? "override" : "mode-default";
    c.measure = to_string(config.measure);
    c.matrix = to_string(config.matrix);
    c.edge_length = to_string(config.layout.edge_length);
    c.seed = config.layout.seed;
    c.stopwords = to_string(stoplist.origin());
    c.stopwords_path = config.stopwords ? config.stopwords->generic_string() : std::string{};
    c.canvas_side = config.layout.canvas_side;
    c.tolerance = config.layout.tolerance;
    c.max_outer_iterations = config.layout.max_outer_iterations;
    c.factors = to_string(config.factors == 0 ? RetentionRule::kaiser : RetentionRule::fixed);
    c.factors_k = config.factors;
    c.vertex_sizing = config.vertex_sizing;

    r.corpus.documents = docs.size();
    r.corpus.empty_documents = prepared.empty_documents.size();
    r.corpus.units = prepared.units.size();
    r.corpus.tokens = vocab.token_count();
    r.corpus.vocabulary_size = vocab.size();
    r.corpus.selected_words = selection.size();
    r.corpus.effective_min_freq = selection.min_freq;
    r.corpus.tie_break = selection.tie_break;

    r.graph.nodes = pruned.graph.nodes.size();
    r.graph.edges = pruned.graph.edges.size();
    r.graph.components = components(pruned.graph).size();
    r.graph.density = pruned.graph.density();
    r.graph.pruned_words = pruned.removed;

    r.layout.energy = embedding.energy;
    r.layout.iterations = embedding.iterations;
    r.layout.converged = embedding.converged;

    r.factors.rule = to_string(factors.model.rule);
    r.factors.retained = factors.model.k;
    r.factors.eigenvalues = factors.model.eigenvalues;
    r.factors.dropped_words = factors.dropped;

    r.outputs = outputs;
    r.warnings = diag.warnings;
    write_report(r, config.out / "report.json");

    PipelineResult result;
    result.report = std::move(r);
    for (const auto& name : outputs) {
        result.outputs.push_back(config.out / name);
    }
    return result;
}

auto compare_runs(const nlohmann::json& a, const nlohmann::json& b) -> std::string
{
    std::string out;
    const auto version = [](const nlohmann::json& j) -> std::string {
        const auto p = pointer("/tool/format_version");
        return j.contains(p) ? j.at(p).dump() : std::string("n/a");
    };
    if (version(a) != version(b)) {
        out += fmt::format("warning: report format versions differ ({} vs {}); comparing what both carry\n",
                           version(a), version(b));
    }

    struct Row {
        std::string_view label;
        std::string_view path;
        bool real;
    };
    constexpr Row rows[] = {
        {"selected_words", "/corpus/selected_words", false},
        {"nodes", "/graph/nodes", false},
        {"edges", "/graph/edges", false},
        {"components", "/graph/components", false},
        {"density", "/graph/density", true},
    };

    out += fmt::format("{:<16}{:>14}{:>14}{:>14}\n", "field", "a", "b", "delta");
    for (const auto& row : rows) {
        const auto p = pointer(row.path);
        const bool has_a = a.contains(p) && a.at(p).is_number();
        const bool has_b = b.contains(p) && b.at(p).is_number();
        auto cell = [&](const nlohmann::json& j, bool has) -> std::string {
            if (!has) {
                return "n/a";
            }
            return row.real ? fmt::format("{:.6f}", j.at(p).get<double>())
                            : fmt::format("{}", j.at(p).get<std::int64_t>());
        };
        std::string delta = "n/a";
        if (has_a && has_b) {
            if (row.real) {
                double d = b.at(p).get<double>() - a.at(p).get<double>();
                if (std::abs(d) < 5e-7) {
                    d = 0.0;
                }
                delta = fmt::format("{:+.6f}", d);
            } else {
                const auto d = b.at(p).get<std::int64_t>() - a.at(p).get<std::int64_t>();
                delta = d == 0 ? std::string("0") : fmt::format("{:+d}", d);
            }
        }
        out += fmt::format("{:<16}{:>14}{:>14}{:>14}\n", row.label, cell(a, has_a), cell(b, has_b), delta);
    }
    return out;
}

}  // namespace semmap
