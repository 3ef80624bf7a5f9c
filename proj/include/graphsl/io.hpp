#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "graphsl/graph.hpp"

namespace graphsl {

/**
 * Contents of a graph file: the graph plus any appended Dirichlet problem
 * blocks. Line-based format:
 *
 *     # comment
 *     graph <n_vertices> <root_id>      (or: tree <b> <R> <c>)
 *     halo outer|none                   (optional, default outer)
 *     mu <vertex> <value>               (default 1 for unlisted vertices)
 *     edge <x> <y> <omega>
 *     omega <vertex...>                 interior set, may span several lines
 *     dirichlet-f <vertex> <value>
 *     dirichlet-g <vertex> <value>
 *     potential <vertex> <value>        (default 0)
 */
struct GraphDocument {
    WeightedGraph graph;
    std::vector<Vertex> interior;
    VertexField f;
    VertexField g;
    VertexField potential;
    bool has_problem = false;  ///< any problem line was present
};

GraphDocument parse_document(std::string_view text);
GraphDocument read_document(const std::filesystem::path& path);

WeightedGraph parse_graph(std::string_view text);
WeightedGraph read_graph(const std::filesystem::path& path);

/// Decimal text with 17 significant digits; parses back to the same double.
std::string format_real(double value);

/// Serialize with an explicit `graph` header; read(write(g)) == g.
std::string format_graph(const WeightedGraph& graph);
std::string format_document(const GraphDocument& document);
void write_graph(const std::filesystem::path& path, const WeightedGraph& graph);
void write_document(const std::filesystem::path& path, const GraphDocument& document);

}  // namespace graphsl
