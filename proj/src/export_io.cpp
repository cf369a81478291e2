#include "semmap/export_io.hpp"
#include "semmap/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>

namespace semmap {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kModule = "export_io";

auto fail(const std::string& message) -> Error { return Error(std::string(kModule), message); }

// Six decimals; anything that rounds to zero prints as positive zero.
auto fixed6(double v) -> std::string
{
    if (std::abs(v) < 5e-7) {
        v = 0.0;
    }
    return fmt::format("{:.6f}", v);
}

auto px(double v) -> std::string
{
    if (std::abs(v) < 5e-3) {
        v = 0.0;
    }
    return fmt::format("{:.2f}", v);
}

void check_cover(const SemanticGraph& g, const Embedding& e)
{
    if (g.nodes.empty()) {
        throw fail("refusing to write a graph with no vertices");
    }
    if (e.positions.size() != g.nodes.size()) {
        throw fail(fmt::format("embedding has {} positions for {} nodes", e.positions.size(), g.nodes.size()));
    }
}

auto csv_field(std::string_view s) -> std::string
{
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

auto xml_escape(std::string_view s) -> std::string
{
    std::string out;
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

template <typename T, typename Cell>
auto matrix_csv(const DenseMatrix<T>& m, std::span<const std::string> row_labels,
                std::span<const std::string> col_labels, Cell cell) -> std::string
{
    if (row_labels.size() != m.rows() || col_labels.size() != m.cols()) {
        throw fail(fmt::format("labels ({} x {}) do not match a {} x {} matrix", row_labels.size(),
                               col_labels.size(), m.rows(), m.cols()));
    }
    std::string out;
    for (const auto& c : col_labels) {
        out += ',';
        out += csv_field(c);
    }
    out += '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += csv_field(row_labels[r]);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out += ',';
            out += cell(m(r, c));
        }
        out += '\n';
    }
    return out;
}

auto trim(std::string_view s) -> std::string_view
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

auto lower(std::string_view s) -> std::string
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Splits on spaces/tabs, keeping a double-quoted field (without quotes) whole.
auto fields(std::string_view line, std::size_t line_no) -> std::vector<std::string>
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        if (i >= line.size()) {
            break;
        }
        if (line[i] == '"') {
            const auto close = line.find('"', i + 1);
            if (close == std::string_view::npos) {
                throw fail(fmt::format("line {}: unterminated quoted label", line_no));
            }
            out.emplace_back(line.substr(i + 1, close - i - 1));
            i = close + 1;
            continue;
        }
        const auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        out.emplace_back(line.substr(start, i - start));
    }
    return out;
}

template <typename T>
auto parse_number(std::string_view s, std::size_t line_no, std::string_view what) -> T
{
    T value{};
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw fail(fmt::format("line {}: malformed {} '{}'", line_no, what, s));
    }
    return value;
}

}  // namespace

void write_text_file(const fs::path& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw fail(fmt::format("cannot write {}", path.string()));
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw fail(fmt::format("write to {} failed", path.string()));
    }
}

auto format_pajek(const SemanticGraph& g, const Embedding& e) -> std::string
{
    check_cover(g, e);
    std::string out = fmt::format("*Vertices {}\n", g.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        out += fmt::format("{} \"{}\" {} {}\n", i + 1, g.nodes[i].surface, fixed6(e.positions[i].x),
                           fixed6(e.positions[i].y));
    }
    out += "*Edges\n";
    auto edges = g.edges;
    for (auto& ed : edges) {
        if (ed.source > ed.target) {
            std::swap(ed.source, ed.target);
        }
    }
    std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return a.source != b.source ? a.source < b.source : a.target < b.target;
    });
    for (const auto& ed : edges) {
        out += fmt::format("{} {} {}\n", ed.source + 1, ed.target + 1, fixed6(ed.weight));
    }
    return out;
}

void write_pajek(const SemanticGraph& g, const Embedding& e, const fs::path& path)
{
    write_text_file(path, format_pajek(g, e));
}

auto parse_pajek(std::string_view text) -> PajekNetwork
{
    PajekNetwork net;
    enum class Section { none, vertices, edges } section = Section::none;
    std::size_t expected = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '%') {
            continue;
        }
        if (line.front() == '*') {
            const auto f = fields(line, line_no);
            const auto keyword = lower(f.front());
            if (keyword == "*vertices") {
                if (section != Section::none || f.size() != 2) {
                    throw fail(fmt::format("line {}: unexpected *Vertices header", line_no));
                }
                expected = parse_number<std::size_t>(f[1], line_no, "vertex count");
                if (expected == 0) {
                    throw fail(fmt::format("line {}: network has no vertices", line_no));
                }
                section = Section::vertices;
            } else if (keyword == "*edges") {
                if (section != Section::vertices || net.graph.nodes.size() != expected) {
                    throw fail(fmt::format("line {}: *Edges before all {} vertices were listed", line_no, expected));
                }
                section = Section::edges;
            } else {
                throw fail(fmt::format("line {}: unsupported section {}", line_no, f.front()));
            }
            continue;
        }
        const auto f = fields(line, line_no);
        if (section == Section::vertices) {
            if (net.graph.nodes.size() == expected) {
                throw fail(fmt::format("line {}: more vertices than the declared {}", line_no, expected));
            }
            if (f.size() != 4) {
                throw fail(fmt::format("line {}: expected `id \"label\" x y`", line_no));
            }
            const auto id = parse_number<std::size_t>(f[0], line_no, "vertex id");
            if (id != net.graph.nodes.size() + 1) {
                throw fail(fmt::format("line {}: expected vertex {}, found {}", line_no, net.graph.nodes.size() + 1, id));
            }
            net.graph.nodes.push_back(GraphNode{id - 1, f[1], 0, 0});
            net.embedding.positions.push_back(
                Point{parse_number<double>(f[2], line_no, "x"), parse_number<double>(f[3], line_no, "y")});
        } else if (section == Section::edges) {
            if (f.size() != 3) {
                throw fail(fmt::format("line {}: expected `source target weight`", line_no));
            }
            auto a = parse_number<std::size_t>(f[0], line_no, "edge endpoint");
            auto b = parse_number<std::size_t>(f[1], line_no, "edge endpoint");
            if (a < 1 || b < 1 || a > expected || b > expected || a == b) {
                throw fail(fmt::format("line {}: invalid edge {} {}", line_no, a, b));
            }
            if (a > b) {
                std::swap(a, b);
            }
            net.graph.edges.push_back(GraphEdge{a - 1, b - 1, parse_number<double>(f[2], line_no, "weight")});
        } else {
            throw fail(fmt::format("line {}: data before the *Vertices header", line_no));
        }
    }
    if (section != Section::edges) {
        throw fail(section == Section::none ? std::string("missing *Vertices header")
                                            : fmt::format("truncated network: {} of {} vertices and no *Edges section",
                                                          net.graph.nodes.size(), expected));
    }
    std::sort(net.graph.edges.begin(), net.graph.edges.end(), [](const GraphEdge& x, const GraphEdge& y) {
        return x.source != y.source ? x.source < y.source : x.target < y.target;
    });
    for (std::size_t k = 1; k < net.graph.edges.size(); ++k) {
        if (net.graph.edges[k].source == net.graph.edges[k - 1].source &&
            net.graph.edges[k].target == net.graph.edges[k - 1].target) {
            throw fail(fmt::format("duplicate edge {} {}", net.graph.edges[k].source + 1, net.graph.edges[k].target + 1));
        }
    }
    return net;
}

auto read_pajek(const fs::path& path) -> PajekNetwork
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw fail(fmt::format("cannot read {}", path.string()));
    }
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_pajek(text);
}

auto format_svg(const SemanticGraph& g, const Embedding& e, const SvgOptions& options) -> std::string
{
    check_cover(g, e);
    const double span = options.size - 2.0 * options.margin;
    auto map = [&](Point p) { return Point{options.margin + p.x * span, options.margin + p.y * span}; };

    std::uint64_t max_units = 0;
    for (const auto& n : g.nodes) {
        max_units = std::max(max_units, n.unit_freq);
    }
    constexpr double kUniformRadius = 5.0;
    constexpr double kMaxRadius = 14.0;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
                       px(options.size));
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    out += "<g stroke=\"#7f8c8d\" stroke-opacity=\"0.8\">\n";
    for (const auto& ed : g.edges) {
        const auto a = map(e.positions[ed.source]);
        const auto b = map(e.positions[ed.target]);
        const double width = 0.5 + 2.5 * std::max(ed.weight, 0.0);
        out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-width=\"{}\"/>\n", px(a.x), px(a.y),
                           px(b.x), px(b.y), px(width));
    }
    out += "</g>\n<g fill=\"#2e86c1\" stroke=\"#1b4f72\" stroke-width=\"0.8\">\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto c = map(e.positions[i]);
        double r = kUniformRadius;
        if (options.size_by_units && max_units > 0) {
            r = kMaxRadius * std::sqrt(static_cast<double>(g.nodes[i].unit_freq) / static_cast<double>(max_units));
        }
        out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n", px(c.x), px(c.y), px(r));
    }
    out += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#1c2833\">\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto c = map(e.positions[i]);
        out += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", px(c.x + 6.0), px(c.y - 6.0),
                           xml_escape(g.nodes[i].surface));
    }
    out += "</g>\n</svg>\n";
    return out;
}

void write_svg(const SemanticGraph& g, const Embedding& e, const fs::path& path, const SvgOptions& options)
{
    write_text_file(path, format_svg(g, e, options));
}

auto format_matrix_csv(const DenseMatrix<double>& m, std::span<const std::string> row_labels,
                       std::span<const std::string> col_labels) -> std::string
{
    return matrix_csv(m, row_labels, col_labels, [](double v) { return fixed6(v); });
}

auto format_matrix_csv(const DenseMatrix<std::int64_t>& m, std::span<const std::string> row_labels,
                       std::span<const std::string> col_labels) -> std::string
{
    return matrix_csv(m, row_labels, col_labels, [](std::int64_t v) { return fmt::format("{}", v); });
}

void write_matrix_csv(const DenseMatrix<double>& m, std::span<const std::string> row_labels,
                      std::span<const std::string> col_labels, const fs::path& path)
{
    write_text_file(path, format_matrix_csv(m, row_labels, col_labels));
}

void write_matrix_csv(const DenseMatrix<std::int64_t>& m, std::span<const std::string> row_labels,
                      std::span<const std::string> col_labels, const fs::path& path)
{
    write_text_file(path, format_matrix_csv(m, row_labels, col_labels));
}

auto format_freqlist(const Vocabulary& vocab) -> std::string
{
    // Word ids already follow (descending total_freq, word).
    std::string out = "word\ttotal_freq\tunit_freq\n";
    for (const auto& e : vocab.entries()) {
        out += fmt::format("{}\t{}\t{}\n", e.surface, e.total_freq, e.unit_freq);
    }
    return out;
}

void write_freqlist(const Vocabulary& vocab, const fs::path& path)
{
    write_text_file(path, format_freqlist(vocab));
}

}  // namespace semmap
