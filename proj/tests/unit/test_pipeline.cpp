#include "semmap/pipeline.hpp"
#include "semmap/version.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <algorithm>
#include <regex>

using namespace semmap;
namespace fs = std::filesystem;

namespace {

auto fixture(const char* name = "manifest.tsv") -> fs::path
{
    return fs::path(SEMMAP_DATA_DIR) / "fixture" / name;
}

auto config_for(const std::string& out, DiscourseMode mode = DiscourseMode::elaborate) -> PipelineConfig
{
    PipelineConfig c;
    c.manifest = fixture();
    c.mode = mode;
    c.out = testing::scratch_dir(out);
    return c;
}

auto delta_of(const std::string& table, const std::string& field) -> std::string
{
    const std::regex row("(^|\n)" + field + " +(\\S+) +(\\S+) +(\\S+)");
    std::smatch m;
    REQUIRE(std::regex_search(table, m, row));
    return m[4];
}

}  // namespace

TEST_SUITE("pipeline")
{
    TEST_CASE("elaborate run writes the documented artifacts")
    {
        const auto cfg = config_for("pipe_elaborate");
        const auto res = run_pipeline(cfg);
        for (const char* name : {"map.net", "map.svg", "cosine.csv", "cooc.csv", "freq.tsv", "loadings.csv",
                                 "report.json", "occurrence.csv"}) {
            CHECK_MESSAGE(fs::exists(cfg.out / name), name);
        }
        CHECK(res.outputs.size() == 8);
        const auto& r = res.report;
        CHECK(r.config.threshold == 0.1);
        CHECK(r.config.threshold_source == "mode-default");
        CHECK(r.config.mode == "elaborate");
        CHECK(r.config.unit == "paragraph");
        CHECK(r.config.stopwords == "bundled-uspto");
        CHECK(r.tool.version == kVersion);
        CHECK(r.graph.nodes + r.graph.pruned_words.size() == r.corpus.selected_words);

        // report.json echoes the in-memory report
        CHECK(report_from_json(read_report_json(cfg.out / "report.json")) == r);
        const auto net = read_pajek(cfg.out / "map.net");
        CHECK(net.graph.nodes.size() == r.graph.nodes);
        CHECK(net.graph.edges.size() == r.graph.edges);
    }

    TEST_CASE("restricted run defaults to 0.5 and honours overrides")
    {
        const auto r = run_pipeline(config_for("pipe_restricted", DiscourseMode::restricted)).report;
        CHECK(r.config.threshold == 0.5);
        CHECK(r.graph.components == 2);

        auto cfg = config_for("pipe_override", DiscourseMode::restricted);
        cfg.threshold = 0.3;
        const auto o = run_pipeline(cfg).report;
        CHECK(o.config.threshold == 0.3);
        CHECK(o.config.threshold_source == "override");
        CHECK(o.graph.edges >= r.graph.edges);
    }

    TEST_CASE("runs are reproducible across repeats and thread counts")
    {
        auto a = config_for("pipe_det_a", DiscourseMode::restricted);
        auto b = config_for("pipe_det_b", DiscourseMode::restricted);
        a.threads = 1;
        b.threads = 3;
        (void)run_pipeline(a);
        (void)run_pipeline(b);
        for (const auto& entry : fs::directory_iterator(a.out)) {
            const auto name = entry.path().filename();
            CHECK_MESSAGE(testing::read_file(a.out / name) == testing::read_file(b.out / name), name.string());
        }
    }

    TEST_CASE("other units, measures and matrices run end to end")
    {
        auto cfg = config_for("pipe_variants");
        cfg.unit = Granularity::sentence;
        cfg.matrix = MatrixMode::binary;
        cfg.layout.edge_length = EdgeLength::inverse_weight;
        cfg.factors = 3;
        cfg.vertex_sizing = true;
        const auto r = run_pipeline(cfg).report;
        CHECK(r.config.unit == "sentence");
        CHECK(r.config.matrix == "binary");
        CHECK(r.config.edge_length == "inverse-weight");
        CHECK(r.factors.retained == 3);
        CHECK(r.factors.rule == "fixed");
        CHECK(r.corpus.units > 42);

        auto doc = config_for("pipe_documents");
        doc.unit = Granularity::document;
        doc.measure = Measure::pearson;
        doc.threshold = 0.5;
        const auto p = run_pipeline(doc);
        CHECK(p.report.corpus.units == 12);
        CHECK(fs::exists(doc.out / "pearson.csv"));
    }

    TEST_CASE("user stop list is recorded")
    {
        const auto dir = testing::scratch_dir("pipe_stop");
        testing::write_file(dir / "stop.txt", "# tiny list\nthe\nof\nand\n");
        auto cfg = config_for("pipe_stop_out");
        cfg.stopwords = dir / "stop.txt";
        const auto r = run_pipeline(cfg).report;
        CHECK(r.config.stopwords == "user-file");
        CHECK(r.config.stopwords_path == (dir / "stop.txt").generic_string());
    }

    TEST_CASE("invalid configurations are rejected before running")
    {
        auto cfg = config_for("pipe_invalid");
        cfg.threshold = 1.5;
        CHECK_THROWS_WITH((void)run_pipeline(cfg), doctest::Contains("cli:"));
        cfg = config_for("pipe_invalid");
        cfg.min_freq = 0;
        CHECK_THROWS_AS((void)run_pipeline(cfg), Error);
        cfg = config_for("pipe_invalid");
        cfg.manifest = SEMMAP_TEST_TMP "/absent.tsv";
        try {
            (void)run_pipeline(cfg);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.module() == "corpus_io");
        }

        // no pair in this corpus gets above 0.71
        const auto dir = testing::scratch_dir("pipe_sparse");
        testing::write_file(dir / "a.txt", "alpha alpha beta\n");
        testing::write_file(dir / "b.txt", "beta gamma gamma\n");
        testing::write_file(dir / "m.tsv", "a.txt\tplain\tx\nb.txt\tplain\ty\n");
        cfg = config_for("pipe_invalid");
        cfg.manifest = dir / "m.tsv";
        cfg.threshold = 0.9;
        CHECK_THROWS_WITH((void)run_pipeline(cfg), doctest::Contains("semgraph"));
        cfg.threshold = 0.7;
        CHECK(run_pipeline(cfg).report.graph.edges == 2);
    }

    TEST_CASE("compare: identical reports")
    {
        const auto r = report_to_json(run_pipeline(config_for("pipe_cmp_same", DiscourseMode::restricted)).report);
        const auto table = compare_runs(r, r);
        for (const char* field : {"selected_words", "nodes", "edges", "components"}) {
            CHECK(delta_of(table, field) == "0");
        }
        CHECK(delta_of(table, "density") == "+0.000000");
        CHECK(table.find("warning") == std::string::npos);
    }

    TEST_CASE("compare: one-topic slice against the full corpus")
    {
        auto early = config_for("pipe_cmp_slice", DiscourseMode::restricted);
        early.manifest = fixture("slice_topic_a.tsv");
        const auto a = report_to_json(run_pipeline(early).report);
        const auto b = report_to_json(run_pipeline(config_for("pipe_cmp_full", DiscourseMode::restricted)).report);
        const auto table = compare_runs(a, b);
        CHECK(delta_of(table, "components") == "+1");
        CHECK(delta_of(table, "density").front() == '-');
    }

    TEST_CASE("compare: missing fields and version mismatch")
    {
        const auto r = report_to_json(run_pipeline(config_for("pipe_cmp_old", DiscourseMode::restricted)).report);
        auto old = r;
        old["graph"].erase("components");
        old["tool"]["format_version"] = 0;
        const auto table = compare_runs(old, r);
        CHECK(delta_of(table, "components") == "n/a");
        CHECK(delta_of(table, "nodes") == "0");
        CHECK(table.rfind("warning", 0) == 0);
    }
}
