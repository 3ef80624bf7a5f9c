#include "graphsl/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "graphsl/error.hpp"
#include "graphsl/generators.hpp"

namespace graphsl {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

class LineParser {
  public:
    explicit LineParser(std::size_t line) : line_(line) {}

    [[noreturn]] void fail(const std::string& message) const {
        throw Error(ErrorCode::ParseError, message, std::nullopt, line_);
    }

    std::size_t integer(std::string_view token) const {
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            fail("expected a nonnegative integer, got '" + std::string(token) + "'");
        return value;
    }

    double real(std::string_view token) const {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            fail("expected a real number, got '" + std::string(token) + "'");
        return value;
    }

    Vertex vertex(std::string_view token, std::size_t n) const {
        const auto v = integer(token);
        if (v >= n) fail("vertex " + std::to_string(v) + " out of range");
        return v;
    }

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

void expect_arity(const LineParser& p, const std::vector<std::string_view>& tokens,
                  std::size_t arity) {
    if (tokens.size() != arity)
        p.fail("'" + std::string(tokens[0]) + "' takes " + std::to_string(arity - 1) +
               " argument(s)");
}

}  // namespace

std::string format_real(double value) {
    if (value == 0.0) value = 0.0;  // print -0 as 0
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

GraphDocument parse_document(std::string_view text) {
    std::optional<std::size_t> n;
    Vertex root = 0;
    std::optional<ModelTreeSpec> tree;
    HaloPolicy halo = HaloPolicy::OuterSphere;
    std::vector<double> measure;
    std::vector<bool> measure_seen;
    std::vector<WeightedEdge> edges;
    std::map<std::pair<Vertex, Vertex>, std::pair<double, std::size_t>> seen_edges;

    struct Assignment {
        Vertex vertex;
        double value;
        std::size_t line;
    };
    std::vector<Vertex> interior;
    std::vector<Assignment> f_lines, g_lines, v_lines;
    bool has_problem = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto tokens = split(line);
        if (tokens.empty()) {
            if (eol == text.size()) break;
            continue;
        }
        const LineParser p(line_no);
        const auto key = tokens[0];

        if (!n) {
            if (key == "graph") {
                expect_arity(p, tokens, 3);
                n = p.integer(tokens[1]);
                if (*n == 0) p.fail("graph needs at least one vertex");
                root = p.vertex(tokens[2], *n);
                measure.assign(*n, 1.0);
                measure_seen.assign(*n, false);
            } else if (key == "tree") {
                expect_arity(p, tokens, 4);
                ModelTreeSpec spec{p.integer(tokens[1]), p.integer(tokens[2]), p.real(tokens[3])};
                if (spec.branching < 1 || spec.depth < 1 || !(spec.measure > 0.0))
                    p.fail("tree needs b >= 1, R >= 1 and c > 0");
                tree = spec;
                n = model_tree_size(spec.branching, spec.depth);
                if (*n > default_max_vertices())
                    throw Error(ErrorCode::SizeOverflow, "tree header exceeds the vertex cap",
                                std::nullopt, line_no);
            } else {
                p.fail("file must start with a 'graph' or 'tree' header");
            }
            if (eol == text.size()) break;
            continue;
        }

        if (key == "graph" || key == "tree") {
            p.fail("duplicate header");
        } else if (key == "halo") {
            expect_arity(p, tokens, 2);
            if (tree) p.fail("'halo' is not allowed with a tree header");
            if (tokens[1] == "outer") halo = HaloPolicy::OuterSphere;
            else if (tokens[1] == "none") halo = HaloPolicy::None;
            else p.fail("halo must be 'outer' or 'none'");
        } else if (key == "mu") {
            expect_arity(p, tokens, 3);
            if (tree) p.fail("'mu' is not allowed with a tree header");
            const auto v = p.vertex(tokens[1], *n);
            const double value = p.real(tokens[2]);
            if (measure_seen[v]) p.fail("duplicate measure for vertex " + std::to_string(v));
            if (!(value > 0.0)) p.fail("measure must be positive");
            measure[v] = value;
            measure_seen[v] = true;
        } else if (key == "edge") {
            expect_arity(p, tokens, 4);
            if (tree) p.fail("'edge' is not allowed with a tree header");
            const auto x = p.vertex(tokens[1], *n);
            const auto y = p.vertex(tokens[2], *n);
            const double w = p.real(tokens[3]);
            if (x == y) p.fail("self-loop at vertex " + std::to_string(x));
            if (!(w >= 0.0)) p.fail("edge weight must be nonnegative");
            const auto key_pair = std::minmax(x, y);
            auto [it, inserted] = seen_edges.try_emplace({key_pair.first, key_pair.second},
                                                         w, line_no);
            if (!inserted) {
                if (it->second.first != w)
                    p.fail("conflicting weights for edge (" + std::to_string(x) + ", " +
                           std::to_string(y) + "), first given at line " +
                           std::to_string(it->second.second));
                continue;
            }
            edges.push_back({x, y, w});
        } else if (key == "omega") {
            has_problem = true;
            for (std::size_t i = 1; i < tokens.size(); ++i)
                interior.push_back(p.vertex(tokens[i], *n));
        } else if (key == "dirichlet-f" || key == "dirichlet-g" || key == "potential") {
            expect_arity(p, tokens, 3);
            has_problem = true;
            Assignment a{p.vertex(tokens[1], *n), p.real(tokens[2]), line_no};
            (key == "dirichlet-f" ? f_lines : key == "dirichlet-g" ? g_lines : v_lines).push_back(a);
        } else {
            p.fail("unknown directive '" + std::string(key) + "'");
        }
        if (eol == text.size()) break;
    }
    if (!n) throw Error(ErrorCode::ParseError, "missing 'graph' or 'tree' header", std::nullopt, line_no);

    GraphDocument doc;
    if (tree) {
        doc.graph = build_model_tree(*tree);
    } else {
        doc.graph = build_graph(edges, std::move(measure), root, halo);
    }
    const std::size_t size = doc.graph.size();
    doc.f = VertexField(size);
    doc.g = VertexField(size);
    doc.potential = VertexField(size);
    auto apply = [](VertexField& field, const std::vector<Assignment>& lines) {
        std::vector<bool> set(field.size(), false);
        for (const auto& a : lines) {
            if (set[a.vertex])
                throw Error(ErrorCode::ParseError,
                            "duplicate value for vertex " + std::to_string(a.vertex), std::nullopt,
                            a.line);
            set[a.vertex] = true;
            field[a.vertex] = a.value;
        }
    };
    apply(doc.f, f_lines);
    apply(doc.g, g_lines);
    apply(doc.potential, v_lines);
    std::sort(interior.begin(), interior.end());
    interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
    doc.interior = std::move(interior);
    doc.has_problem = has_problem;
    return doc;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::IoError, "read failure on " + path.string());
    return buffer.str();
}

void dump(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "write failure on " + path.string());
}

}  // namespace

GraphDocument read_document(const std::filesystem::path& path) {
    return parse_document(slurp(path));
}

WeightedGraph parse_graph(std::string_view text) { return parse_document(text).graph; }

WeightedGraph read_graph(const std::filesystem::path& path) { return read_document(path).graph; }

std::string format_graph(const WeightedGraph& graph) {
    std::string out = "graph " + std::to_string(graph.size()) + " " +
                      std::to_string(graph.root()) + "\n";
    if (graph.halo_policy() == HaloPolicy::None) out += "halo none\n";
    for (Vertex x = 0; x < graph.size(); ++x)
        out += "mu " + std::to_string(x) + " " + format_real(graph.measure(x)) + "\n";
    for (const auto& e : graph.edges())
        out += "edge " + std::to_string(e.x) + " " + std::to_string(e.y) + " " +
               format_real(e.weight) + "\n";
    return out;
}

std::string format_document(const GraphDocument& document) {
    std::string out = format_graph(document.graph);
    if (!document.has_problem) return out;
    out += "omega";
    for (Vertex x : document.interior) out += " " + std::to_string(x);
    out += "\n";
    auto emit = [&out](const char* key, const VertexField& field) {
        for (Vertex x = 0; x < field.size(); ++x)
            if (field[x] != 0.0)
                out += std::string(key) + " " + std::to_string(x) + " " + format_real(field[x]) + "\n";
    };
    emit("dirichlet-f", document.f);
    emit("dirichlet-g", document.g);
    emit("potential", document.potential);
    return out;
}

void write_graph(const std::filesystem::path& path, const WeightedGraph& graph) {
    dump(path, format_graph(graph));
}

void write_document(const std::filesystem::path& path, const GraphDocument& document) {
    dump(path, format_document(document));
}

}  // namespace graphsl
